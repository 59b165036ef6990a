"""
Álgebra linear exata sobre Q.

Racionais são elementos do domínio QQ do sympy; a eliminação de Gauss-Jordan
é delegada a DomainMatrix. Subespaços ficam guardados em RREF canônica, de modo
que igualdade de subespaços é igualdade estrutural.
"""
import logging
from dataclasses import dataclass
from functools import cached_property

from sympy import QQ, Rational
from sympy.polys.matrices import DomainMatrix

from app.errors import DimensionMismatch, ValidationError

logger = logging.getLogger(__name__)

ZERO = QQ(0)
ONE = QQ(1)


def rat(valor):
    """Converte int, 'p/q', Fraction ou racional do sympy em elemento de QQ."""
    if isinstance(valor, bool):
        raise ValidationError(f"Valor racional inválido: {valor!r}", valor=repr(valor))
    if isinstance(valor, QQ.dtype):
        return valor
    if isinstance(valor, int):
        return QQ(valor)
    if isinstance(valor, str):
        texto = valor.strip()
        try:
            if '/' in texto:
                num, den = texto.split('/', 1)
                return QQ(int(num), int(den))
            return QQ(int(texto))
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"Valor racional inválido: {valor!r}", valor=repr(valor))
    if isinstance(valor, Rational):
        return QQ.from_sympy(valor)
    numerador = getattr(valor, 'numerator', None)
    denominador = getattr(valor, 'denominator', None)
    if isinstance(numerador, int) and isinstance(denominador, int):
        return QQ(numerador, denominador)
    raise ValidationError(f"Valor racional inválido: {valor!r}", valor=repr(valor))


def rat_to_str(valor):
    q = rat(valor)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(linha) != self.cols for linha in self.entries):
            raise DimensionMismatch(f"Matriz {self.rows}x{self.cols} com entradas de forma incompatível")

    # --- CONSTRUTORES ---
    @classmethod
    def from_rows(cls, linhas, cols=None):
        linhas = [tuple(rat(x) for x in linha) for linha in linhas]
        if cols is None:
            cols = len(linhas[0]) if linhas else 0
        return cls(len(linhas), cols, tuple(linhas))

    @classmethod
    def from_columns(cls, colunas, rows):
        colunas = [tuple(rat(x) for x in coluna) for coluna in colunas]
        if not colunas:
            return cls.zeros(rows, 0)
        return cls.from_rows(list(zip(*colunas)), len(colunas)) if rows else cls.zeros(0, len(colunas))

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def from_domain(cls, dm):
        linhas, colunas = dm.shape
        if linhas == 0 or colunas == 0:
            return cls.zeros(linhas, colunas)
        return cls(linhas, colunas, tuple(tuple(linha) for linha in dm.to_list()))

    def to_domain(self):
        return DomainMatrix([list(linha) for linha in self.entries], (self.rows, self.cols), QQ)

    # --- ACESSO ---
    def __getitem__(self, indice):
        i, j = indice
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(linha[j] for linha in self.entries)

    def block(self, r0, r1, c0, c1):
        return RatMatrix(r1 - r0, c1 - c0, tuple(linha[c0:c1] for linha in self.entries[r0:r1]))

    def flatten(self):
        return tuple(x for linha in self.entries for x in linha)

    def is_zero(self):
        return all(not x for linha in self.entries for x in linha)

    # --- ARITMÉTICA ---
    def __matmul__(self, outra):
        if self.cols != outra.rows:
            raise DimensionMismatch(f"Produto {self.rows}x{self.cols} por {outra.rows}x{outra.cols}")
        if self.rows == 0 or self.cols == 0 or outra.cols == 0:
            return RatMatrix.zeros(self.rows, outra.cols)
        return RatMatrix.from_domain(self.to_domain().matmul(outra.to_domain()))

    def __add__(self, outra):
        self._mesma_forma(outra)
        return RatMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(l1, l2)) for l1, l2 in zip(self.entries, outra.entries)))

    def __sub__(self, outra):
        self._mesma_forma(outra)
        return RatMatrix(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(l1, l2)) for l1, l2 in zip(self.entries, outra.entries)))

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, escalar):
        c = rat(escalar)
        return RatMatrix(self.rows, self.cols, tuple(tuple(c * x for x in linha) for linha in self.entries))

    def transpose(self):
        return RatMatrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def apply(self, vetor):
        if len(vetor) != self.cols:
            raise DimensionMismatch(f"Vetor de tamanho {len(vetor)} para matriz com {self.cols} colunas")
        return tuple(sum((a * b for a, b in zip(linha, vetor)), ZERO) for linha in self.entries)

    def rank(self):
        return rref(self)[2]

    def to_json(self):
        return [[rat_to_str(x) for x in linha] for linha in self.entries]

    def _mesma_forma(self, outra):
        if (self.rows, self.cols) != (outra.rows, outra.cols):
            raise DimensionMismatch(f"Formas {self.rows}x{self.cols} e {outra.rows}x{outra.cols} diferentes")


def hstack(*matrizes):
    """Concatena matrizes lado a lado (mesmo número de linhas)."""
    linhas = {m.rows for m in matrizes}
    if len(linhas) != 1:
        raise DimensionMismatch("hstack com números de linhas diferentes")
    n = linhas.pop()
    entradas = tuple(tuple(x for m in matrizes for x in m.entries[i]) for i in range(n))
    return RatMatrix(n, sum(m.cols for m in matrizes), entradas)


def vstack(*matrizes):
    colunas = {m.cols for m in matrizes}
    if len(colunas) != 1:
        raise DimensionMismatch("vstack com números de colunas diferentes")
    return RatMatrix(sum(m.rows for m in matrizes), colunas.pop(),
                     tuple(linha for m in matrizes for linha in m.entries))


def block_diagonal(*matrizes):
    total_linhas = sum(m.rows for m in matrizes)
    total_colunas = sum(m.cols for m in matrizes)
    entradas = [[ZERO] * total_colunas for _ in range(total_linhas)]
    r0 = c0 = 0
    for m in matrizes:
        for i, linha in enumerate(m.entries):
            entradas[r0 + i][c0:c0 + m.cols] = linha
        r0 += m.rows
        c0 += m.cols
    return RatMatrix.from_rows(entradas, total_colunas)


def rref(m):
    """Forma escalonada reduzida: (matriz, colunas pivô, posto)."""
    if m.rows == 0 or m.cols == 0:
        return RatMatrix.zeros(m.rows, m.cols), (), 0
    forma, pivos = m.to_domain().rref()
    pivos = tuple(pivos)
    return RatMatrix.from_domain(forma), pivos, len(pivos)


def kernel(m):
    """Núcleo {v : m·v = 0} como Subspace canônico."""
    forma, pivos, _ = rref(m)
    livres = [j for j in range(m.cols) if j not in set(pivos)]
    vetores = []
    for f in livres:
        v = [ZERO] * m.cols
        v[f] = ONE
        for i, p in enumerate(pivos):
            v[p] = -forma.entries[i][f]
        vetores.append(v)
    return Subspace.span(m.cols, vetores)


def solve(m, b):
    """Uma solução particular de m·x = b, ou None se o sistema é incompatível."""
    if len(b) != m.rows:
        raise DimensionMismatch("Lado direito com tamanho incompatível")
    aumentada = hstack(m, RatMatrix.from_columns([b], m.rows)) if m.rows else RatMatrix.zeros(0, m.cols + 1)
    forma, pivos, _ = rref(aumentada)
    if m.cols in pivos:
        return None
    x = [ZERO] * m.cols
    for i, p in enumerate(pivos):
        x[p] = forma.entries[i][m.cols]
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: RatMatrix

    @classmethod
    def span(cls, ambient_dim, vetores):
        linhas = [tuple(rat(x) for x in v) for v in vetores]
        for linha in linhas:
            if len(linha) != ambient_dim:
                raise DimensionMismatch(f"Vetor de tamanho {len(linha)} em ambiente de dimensão {ambient_dim}")
        if not linhas:
            return cls.zero(ambient_dim)
        forma, _, posto = rref(RatMatrix.from_rows(linhas, ambient_dim))
        return cls(ambient_dim, RatMatrix(posto, ambient_dim, forma.entries[:posto]))

    @classmethod
    def zero(cls, ambient_dim):
        return cls(ambient_dim, RatMatrix.zeros(0, ambient_dim))

    @classmethod
    def full(cls, ambient_dim):
        return cls(ambient_dim, RatMatrix.identity(ambient_dim))

    @property
    def dim(self):
        return self.basis.rows

    @cached_property
    def pivots(self):
        return tuple(next(j for j, x in enumerate(linha) if x) for linha in self.basis.entries)

    def vectors(self):
        return list(self.basis.entries)

    def is_zero(self):
        return self.dim == 0

    def is_full(self):
        return self.dim == self.ambient_dim

    def coordinates(self, vetor):
        """Coordenadas na base RREF, ou None se o vetor não pertence ao subespaço."""
        vetor = tuple(rat(x) for x in vetor)
        if len(vetor) != self.ambient_dim:
            raise DimensionMismatch("Vetor fora do ambiente")
        coords = tuple(vetor[p] for p in self.pivots)
        resto = list(vetor)
        for c, linha in zip(coords, self.basis.entries):
            if c:
                resto = [r - c * x for r, x in zip(resto, linha)]
        return coords if not any(resto) else None

    def contains(self, vetor):
        return self.coordinates(vetor) is not None

    def contains_subspace(self, outro):
        self._mesmo_ambiente(outro)
        return all(self.contains(v) for v in outro.vectors())

    def __add__(self, outro):
        self._mesmo_ambiente(outro)
        return Subspace.span(self.ambient_dim, self.vectors() + outro.vectors())

    def intersect(self, outro):
        self._mesmo_ambiente(outro)
        return (self.annihilator() + outro.annihilator()).annihilator()

    def annihilator(self):
        """Anulador no dual (mesma dimensão ambiente, base dual)."""
        return kernel(self.basis)

    def image(self, matriz):
        if matriz.cols != self.ambient_dim:
            raise DimensionMismatch("Imagem sob matriz de domínio incompatível")
        return Subspace.span(matriz.rows, [matriz.apply(v) for v in self.vectors()])

    def preimage(self, matriz):
        if matriz.rows != self.ambient_dim:
            raise DimensionMismatch("Pré-imagem sob matriz de contradomínio incompatível")
        anulador = self.annihilator()
        if anulador.is_zero():
            return Subspace.full(matriz.cols)
        return kernel(anulador.basis @ matriz)

    def to_json(self):
        return {'ambient_dim': self.ambient_dim, 'basis': self.basis.to_json()}

    def _mesmo_ambiente(self, outro):
        if self.ambient_dim != outro.ambient_dim:
            raise DimensionMismatch(f"Ambientes de dimensão {self.ambient_dim} e {outro.ambient_dim}")


def sum_all(ambient_dim, subespacos):
    vetores = [v for s in subespacos for v in s.vectors()]
    return Subspace.span(ambient_dim, vetores)


@dataclass(frozen=True)
class QuotientPresentation:
    ambient_dim: int
    relations: Subspace
    complement: tuple
    projection: RatMatrix
    section: RatMatrix

    @property
    def dim(self):
        return len(self.complement)

    def project(self, vetor):
        return self.projection.apply(tuple(rat(x) for x in vetor))

    def lift(self, coordenadas):
        return self.section.apply(tuple(rat(x) for x in coordenadas))


def quotient_presentation(ambient, rel):
    """Quociente ambient/rel com coordenadas nas colunas não pivô."""
    if rel.ambient_dim != ambient:
        raise DimensionMismatch(f"Relações em ambiente {rel.ambient_dim}, esperado {ambient}")
    pivos = set(rel.pivots)
    livres = tuple(j for j in range(ambient) if j not in pivos)
    posicao = {j: k for k, j in enumerate(livres)}
    projecao = [[ZERO] * ambient for _ in livres]
    for j in livres:
        projecao[posicao[j]][j] = ONE
    for p, linha in zip(rel.pivots, rel.basis.entries):
        for j in livres:
            projecao[posicao[j]][p] = -linha[j]
    secao = [[ZERO] * len(livres) for _ in range(ambient)]
    for j in livres:
        secao[j][posicao[j]] = ONE
    return QuotientPresentation(
        ambient_dim=ambient,
        relations=rel,
        complement=livres,
        projection=RatMatrix.from_rows(projecao, ambient),
        section=RatMatrix.from_rows(secao, len(livres)),
    )


def rank_factorization(m):
    """m = C·R com C = colunas pivô de m e R = linhas não nulas da RREF; devolve (colunas de C, linhas de R)."""
    forma, pivos, posto = rref(m)
    return [m.column(j) for j in pivos], [forma.row(i) for i in range(posto)]


def kron(a, b):
    """Produto de Kronecker a ⊗ b."""
    entradas = [[a.entries[i][j] * b.entries[k][l] for j in range(a.cols) for l in range(b.cols)]
                for i in range(a.rows) for k in range(b.rows)]
    return RatMatrix(a.rows * b.rows, a.cols * b.cols, tuple(tuple(linha) for linha in entradas))


def outer(coluna, linha):
    """Matriz coluna·linhaᵀ."""
    coluna = [rat(x) for x in coluna]
    linha = [rat(y) for y in linha]
    return RatMatrix(len(coluna), len(linha), tuple(tuple(x * y for y in linha) for x in coluna))


def left_inverse(F):
    """S com S·F = I, para F injetiva."""
    identidade = RatMatrix.identity(F.cols)
    linhas = [solve(F.transpose(), identidade.row(i)) for i in range(F.cols)]
    if any(linha is None for linha in linhas):
        raise DimensionMismatch("Matriz sem inversa à esquerda")
    return RatMatrix.from_rows(linhas, F.rows)


def right_inverse(P):
    """R com P·R = I, para P sobrejetiva."""
    identidade = RatMatrix.identity(P.rows)
    colunas = [solve(P, identidade.row(i)) for i in range(P.rows)]
    if any(coluna is None for coluna in colunas):
        raise DimensionMismatch("Matriz sem inversa à direita")
    return RatMatrix.from_columns(colunas, P.cols)
