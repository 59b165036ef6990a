"""
Calculadora de dimensões de períodos para 1-motivos saturados e do tipo Baker.

Os dados lineares de um 1-motivo saturado são a álgebra B = End(A) e três
B-módulos: H(A) (dim 2g), H(T) (dim m) e H(L) (dim ℓ). As dimensões graduadas
de P vêm das fórmulas em Hom_B e são conferidas num modelo matricial de End(M')
para M' = M ⊕ Q ⊕ Q(1), pelo quociente de comutadores.
"""
import logging
from dataclasses import dataclass

from app.errors import HypothesisFailed, ModelMismatch, RangeError, ValidationError
from app.models import GradedDims, ModelReport
from app.services.algebra import StructureAlgebra, radical_and_semisimplicity
from app.services.exactlin import ONE, ZERO, RatMatrix, Subspace, kernel, kron, rat, vstack
from app.services.numberfield import NumberField
from app.services.periods import pushout_reduction
from app.services.quivalg import build_algebra, map_from_matrix, simple, validate_module

logger = logging.getLogger(__name__)

# Blocos de H na ordem (L, A, T, Q, Q(1)) e seus pesos
BLOCOS = ('L', 'A', 'T', 'Q', 'Q(1)')
PESOS = {'L': 0, 'A': -1, 'T': -2, 'Q': 0, 'Q(1)': -2}


def _acao_valida(B, matrizes, nome):
    if len(matrizes) != B.dim:
        raise ValidationError(f"{nome}: uma matriz por elemento da base de B", modulo=nome)
    d = matrizes[0].rows if matrizes else 0
    if any((m.rows, m.cols) != (d, d) for m in matrizes):
        raise ValidationError(f"{nome}: matrizes de ação precisam ser quadradas do mesmo tamanho", modulo=nome)
    for i, a in enumerate(matrizes):
        for j, b in enumerate(matrizes):
            esperado = RatMatrix.zeros(d, d)
            for c, m in zip(B.table[i][j], matrizes):
                if c:
                    esperado = esperado + m.scale(c)
            if a @ b != esperado:
                raise ValidationError(f"{nome}: ρ(b_{i})ρ(b_{j}) difere de ρ(b_{i}b_{j})", modulo=nome)
    unidade = RatMatrix.zeros(d, d)
    for c, m in zip(B.unit or (), matrizes):
        if c:
            unidade = unidade + m.scale(c)
    if unidade != RatMatrix.identity(d):
        raise ValidationError(f"{nome}: a unidade de B não age como identidade", modulo=nome)
    return d


@dataclass(frozen=True)
class SaturatedInput:
    B: StructureAlgebra
    HA: tuple  # ρ_A(b_i)
    HT: tuple
    HL: tuple

    def __post_init__(self):
        if self.B.unit is None:
            raise ValidationError("B precisa ter unidade")
        for nome in ('HA', 'HT', 'HL'):
            _acao_valida(self.B, getattr(self, nome), nome)

    @property
    def g2(self):
        """dim H(A) = 2g."""
        return self.HA[0].rows

    @property
    def m(self):
        return self.HT[0].rows

    @property
    def l(self):
        return self.HL[0].rows

    @classmethod
    def from_counts(cls, g, l, m):
        """Atalho B = Q: H(A) = Q^{2g}, H(T) = Q^m, H(L) = Q^ℓ."""
        if min(g, l, m) < 0:
            raise RangeError("g, ℓ e m precisam ser não negativos")
        return cls(rational_algebra(), (RatMatrix.identity(2 * g),), (RatMatrix.identity(m),),
                   (RatMatrix.identity(l),))

    @classmethod
    def regular(cls, B):
        """H(A) = H(T) = H(L) = B com a ação regular à esquerda."""
        regular = tuple(B.left_matrix(i) for i in range(B.dim))
        return cls(B, regular, regular, regular)

    @classmethod
    def from_dict(cls, dados):
        try:
            B = StructureAlgebra.from_table(dados['B']['names'], dados['B']['table'])
            acoes = {nome: tuple(RatMatrix.from_rows([[rat(x) for x in linha] for linha in m], _colunas(m))
                                 for m in dados[nome]) for nome in ('HA', 'HT', 'HL')}
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"Entrada de 1-motivo malformada: {e}")
        return cls(B, acoes['HA'], acoes['HT'], acoes['HL'])

    def to_json(self):
        return {
            'B': self.B.to_json(),
            'HA': [m.to_json() for m in self.HA],
            'HT': [m.to_json() for m in self.HT],
            'HL': [m.to_json() for m in self.HL],
        }


def _colunas(linhas):
    return len(linhas[0]) if linhas else 0


# --- ÁLGEBRAS DE EXEMPLO ---

def rational_algebra():
    return StructureAlgebra.from_number_field(NumberField.rationals())


def gaussian_algebra():
    """Q[i]."""
    return StructureAlgebra.from_number_field(NumberField((1, 0, 1)))


def sqrt2_algebra():
    """Q(√2)."""
    return StructureAlgebra.from_number_field(NumberField((-2, 0, 1)))


def matrix_input(l=1, m=1):
    """B = M₂(Q) agindo em H(A) = Q² (g = 1) e em Q²-cópias para H(T) e H(L)."""
    B = StructureAlgebra.matrix_algebra(2)
    padrao = tuple(_unidade_matricial(i, j) for i in range(2) for j in range(2))

    def copias(k):
        return tuple(kron(RatMatrix.identity(k), e) for e in padrao)

    return SaturatedInput(B, padrao, copias(m), copias(l))


def _unidade_matricial(i, j):
    entradas = [[ZERO, ZERO], [ZERO, ZERO]]
    entradas[i][j] = ONE
    return RatMatrix.from_rows(entradas, 2)


# --- FÓRMULAS ---

def equivariant_maps(B, origem, destino):
    """Base de Hom_B(X, Y): F com ρ_Y(b)·F = F·ρ_X(b) para todo b (F achatada por linha)."""
    dx = origem[0].rows
    dy = destino[0].rows
    if dx == 0 or dy == 0:
        return []
    blocos = [kron(rho_y, RatMatrix.identity(dx)) - kron(RatMatrix.identity(dy), rho_x.transpose())
              for rho_x, rho_y in zip(origem, destino)]
    solucoes = kernel(vstack(*blocos))
    return [RatMatrix(dy, dx, tuple(tuple(v[r * dx:(r + 1) * dx]) for r in range(dy)))
            for v in solucoes.vectors()]


def _verificar_hipoteses(inp):
    _, semisimples = radical_and_semisimplicity(inp.B)
    if not semisimples:
        raise HypothesisFailed("B não é semissimples")
    if inp.l == 0:
        raise HypothesisFailed("gr⁰ exige H(L) ≠ 0")
    if inp.m == 0:
        raise HypothesisFailed("gr⁻² exige H(T) ≠ 0")


def graded_period_dims(inp):
    """
    gr⁰ = 1 + 1 + dim End_B(H(A)); gr⁻¹ = dim Hom_B(H(T), H(A)) + dim Hom_B(H(A), H(L));
    gr⁻² = dim Hom_B(H(T), H(L)).
    """
    _verificar_hipoteses(inp)
    d0 = 2 + len(equivariant_maps(inp.B, inp.HA, inp.HA))
    dm1 = len(equivariant_maps(inp.B, inp.HT, inp.HA)) + len(equivariant_maps(inp.B, inp.HA, inp.HL))
    dm2 = len(equivariant_maps(inp.B, inp.HT, inp.HL))
    return GradedDims(d0, dm1, dm2)


def baker_dims(x, l, n):
    """1 + 1 + (dim X · dim L − dim N)."""
    if min(x, l) < 0:
        raise RangeError("Dimensões negativas")
    if not 0 <= n <= x * l:
        raise RangeError(f"dim N = {n} fora de [0, {x * l}]", x=x, l=l, n=n)
    return 2 + x * l - n


# --- MODELOS ---

def _indices(inp):
    tamanhos = {'L': inp.l, 'A': inp.g2, 'T': inp.m, 'Q': 1, 'Q(1)': 1}
    inicio = {}
    total = 0
    for bloco in BLOCOS:
        inicio[bloco] = total
        total += tamanhos[bloco]
    return inicio, tamanhos, total


def _elementar(n, r, s):
    entradas = [[ZERO] * n for _ in range(n)]
    entradas[r][s] = ONE
    return RatMatrix.from_rows(entradas, n)


def model_endomorphisms(inp):
    """
    Base de End(M') ⊆ End(H): B agindo em L ⊕ A ⊕ T, End(Q), End(Q(1)),
    Hom(Q(1), T) e Hom(L, Q).
    """
    inicio, tamanhos, n = _indices(inp)
    base = []
    for rho_l, rho_a, rho_t in zip(inp.HL, inp.HA, inp.HT):
        entradas = [[ZERO] * n for _ in range(n)]
        for bloco, rho in (('L', rho_l), ('A', rho_a), ('T', rho_t)):
            o = inicio[bloco]
            for i in range(rho.rows):
                for j in range(rho.cols):
                    entradas[o + i][o + j] = rho[i, j]
        base.append(RatMatrix.from_rows(entradas, n))
    q, z = inicio['Q'], inicio['Q(1)']
    base.append(_elementar(n, q, q))
    base.append(_elementar(n, z, z))
    base += [_elementar(n, inicio['T'] + t, z) for t in range(tamanhos['T'])]
    base += [_elementar(n, q, inicio['L'] + k) for k in range(tamanhos['L'])]
    return base, n


def _pesos_das_coordenadas(inp):
    inicio, tamanhos, _ = _indices(inp)
    pesos = []
    for bloco in BLOCOS:
        pesos += [PESOS[bloco]] * tamanhos[bloco]
    return pesos


def synthesize_model(inp):
    """
    dim End(H)/[End(M'), End(H)] por grau, com E_rs de grau w(s) − w(r);
    comparado com graded_period_dims.
    """
    formula = graded_period_dims(inp)
    base, n = model_endomorphisms(inp)
    nomes = [f"c{i}" for i in range(len(base))]
    StructureAlgebra.from_matrices(nomes, base)  # End(M') fechado por produto
    pesos = _pesos_das_coordenadas(inp)
    por_grau = {}
    for r in range(n):
        for s in range(n):
            por_grau.setdefault(pesos[s] - pesos[r], []).append((r, s))
    dims = {}
    todas = []
    for grau, posicoes in por_grau.items():
        relacoes = []
        for r, s in posicoes:
            E = _elementar(n, r, s)
            relacoes += [(c @ E - E @ c).flatten() for c in base]
        posto = Subspace.span(n * n, relacoes).dim
        dims[grau] = len(posicoes) - posto
        todas += relacoes
    total = n * n - Subspace.span(n * n, todas).dim
    espurios = {g: d for g, d in dims.items() if g not in (0, -1, -2) and d}
    if espurios:
        raise ModelMismatch(f"Graus inesperados no modelo: {espurios}")
    modelo = GradedDims(dims.get(0, 0), dims.get(-1, 0), dims.get(-2, 0))
    if modelo.total != total:
        raise ModelMismatch("Soma das partes graduadas difere do quociente total")
    relatorio = ModelReport(formula, modelo, n, len(base))
    if not relatorio.matches:
        raise ModelMismatch(f"Modelo {modelo.as_tuple()} difere da fórmula {formula.as_tuple()}")
    logger.debug("Modelo de 1-motivo: H de dimensão %s, graduação %s", n, modelo.as_tuple())
    return relatorio


def baker_relations(x, l, n):
    """N ⊆ Hom(X, L) de dimensão n: as n primeiras linhas de Vandermonde nos nós 1, 2, ..."""
    r = x * l
    return Subspace.span(r, [[rat(t ** k) for k in range(r)] for t in range(1, n + 1)])


def baker_module(x, l, n):
    """
    0 → S_X ⊗ X → M → S_L ⊗ L → 0 sobre o quiver com x·l flechas L → X (uma por
    logaritmo). A flecha k age pelo k-ésimo vetor de uma base de N^⊥, como matriz
    x × l; as n flechas restantes agem por zero.
    Devolve M e as inclusões S_X → M, uma por vetor da base de X.
    """
    baker_dims(x, l, n)
    if min(x, l) < 1:
        raise RangeError("O modelo de Baker exige dim X ≥ 1 e dim L ≥ 1")
    r = x * l
    alg = build_algebra(['L', 'X'], [(f"u{k + 1}", 'L', 'X') for k in range(r)])
    mapas = {}
    for k, w in enumerate(baker_relations(x, l, n).annihilator().vectors()):
        mapas[f"u{k + 1}"] = RatMatrix.from_rows([w[i * l:(i + 1) * l] for i in range(x)], l)
    M = validate_module(alg, {'L': l, 'X': x}, mapas)
    S_X = simple(alg, 'X')
    inclusoes = []
    for i in M.vertex_range('X'):
        coluna = [ZERO] * M.dim
        coluna[i] = ONE
        inclusoes.append(map_from_matrix(S_X, M, RatMatrix.from_columns([coluna], M.dim)))
    return M, inclusoes


def baker_model(x, l, n):
    """
    Pushout de baker_module ao longo do traço de X: M̃ tem S_X uma vez e
    S_L ⊗ Hom(X, L) no topo. dim P(M) = dim P(M̃) pelo oráculo deve ser baker_dims.
    """
    esperado = baker_dims(x, l, n)
    M, inclusoes = baker_module(x, l, n)
    reducao = pushout_reduction(M, inclusoes)
    if reducao.module.vertex_dims != (x * l, 1):
        raise ModelMismatch(f"Pushout de Baker com dims {list(reducao.module.vertex_dims)}")
    obtido = reducao.dim_reduced
    if obtido != esperado:
        raise ModelMismatch(f"Modelo de Baker com dim P = {obtido}, fórmula {esperado}")
    logger.debug("Modelo de Baker: M dims %s, M~ dims %s", M.vertex_dims, reducao.module.vertex_dims)
    return reducao, {'formula': esperado, 'model': obtido, 'matches': True}
