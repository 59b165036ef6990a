"""
Álgebras abstratas por constantes de estrutura.

Usadas para End(M), para a álgebra B dos 1-motivos saturados e como forma
comum da álgebra de caminhos no teste de radical e semissimplicidade.
"""
import logging
from dataclasses import dataclass
from functools import cached_property

from app.errors import InternalInconsistency, ValidationError
from app.services.exactlin import ONE, ZERO, RatMatrix, Subspace, kernel, rat, rat_to_str, solve

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StructureAlgebra:
    names: tuple
    table: tuple  # table[i][j] = coordenadas de b_i * b_j

    def __post_init__(self):
        n = len(self.names)
        if len(self.table) != n or any(len(linha) != n for linha in self.table):
            raise ValidationError("Tabela de multiplicação com forma incompatível")
        if any(len(c) != n for linha in self.table for c in linha):
            raise ValidationError("Constantes de estrutura com tamanho incompatível")

    @classmethod
    def from_table(cls, names, tabela):
        return cls(tuple(names), tuple(tuple(tuple(rat(x) for x in c) for c in linha) for linha in tabela))

    @classmethod
    def from_matrices(cls, names, matrizes):
        """Álgebra gerada (como espaço) por matrizes linearmente independentes fechadas por produto."""
        if not matrizes:
            return cls((), ())
        achatadas = RatMatrix.from_columns([m.flatten() for m in matrizes], matrizes[0].rows * matrizes[0].cols)
        tabela = []
        for a in matrizes:
            linha = []
            for b in matrizes:
                coords = solve(achatadas, (a @ b).flatten())
                if coords is None:
                    raise InternalInconsistency("Produto fora do span das matrizes dadas")
                linha.append(coords)
            tabela.append(tuple(linha))
        return cls(tuple(names), tuple(tabela))

    @classmethod
    def from_number_field(cls, corpo):
        """Q[x]/(f) como álgebra com base 1, x, ..., x^{d-1}."""
        base = [corpo.one()]
        gerador = corpo.gen()
        for _ in range(corpo.degree - 1):
            base.append(base[-1] * gerador)
        tabela = tuple(tuple((a * b).coefficients for b in base) for a in base)
        nomes = tuple('1' if i == 0 else f'x^{i}' for i in range(corpo.degree))
        return cls(nomes, tabela)

    @classmethod
    def matrix_algebra(cls, n):
        """M_n(Q) na base das unidades matriciais E_ij."""
        unidades = []
        for i in range(n):
            for j in range(n):
                entradas = [[ZERO] * n for _ in range(n)]
                entradas[i][j] = ONE
                unidades.append(RatMatrix.from_rows(entradas, n))
        nomes = [f'E{i + 1}{j + 1}' for i in range(n) for j in range(n)]
        return cls.from_matrices(nomes, unidades)

    @property
    def dim(self):
        return len(self.names)

    def multiply(self, x, y):
        resultado = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, t in enumerate(self.table[i][j]):
                    if t:
                        resultado[k] += c * t
        return tuple(resultado)

    def left_matrix(self, i):
        """Matriz da multiplicação à esquerda por b_i (representação regular)."""
        return RatMatrix.from_columns([self.table[i][j] for j in range(self.dim)], self.dim)

    def basis_vector(self, i):
        return tuple(ONE if k == i else ZERO for k in range(self.dim))

    @cached_property
    def unit(self):
        """Coordenadas da unidade, ou None se a álgebra não tiver unidade."""
        n = self.dim
        if n == 0:
            return ()
        linhas = []
        alvo = []
        for j in range(n):
            for k in range(n):
                linhas.append([self.table[i][j][k] for i in range(n)])
                alvo.append(ONE if k == j else ZERO)
                linhas.append([self.table[j][i][k] for i in range(n)])
                alvo.append(ONE if k == j else ZERO)
        return solve(RatMatrix.from_rows(linhas, n), tuple(alvo))

    def is_associative(self):
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.table[i][j]
                for k in range(self.dim):
                    esquerda = self.multiply(ij, self.basis_vector(k))
                    direita = self.multiply(self.basis_vector(i), self.table[j][k])
                    if esquerda != direita:
                        return False
        return True

    def to_json(self):
        return {
            'names': list(self.names),
            'table': [[[rat_to_str(x) for x in c] for c in linha] for linha in self.table],
        }


def _traco_do_produto(a, b):
    return sum((a.entries[k][l] * b.entries[l][k] for k in range(a.rows) for l in range(a.cols)
                if a.entries[k][l] and b.entries[l][k]), ZERO)


def trace_form(alg):
    """Matriz de Gram da forma traço (x, y) ↦ tr(L_x L_y) na base da álgebra."""
    esquerdas = [alg.left_matrix(i) for i in range(alg.dim)]
    return RatMatrix.from_rows(
        [[_traco_do_produto(a, b) for b in esquerdas] for a in esquerdas], alg.dim)


def radical_and_semisimplicity(alg):
    """
    Radical de Jacobson como núcleo da forma traço (característica zero).
    Retorna (Subspace do radical, é_semissimples).
    """
    if alg.dim == 0:
        return Subspace.zero(0), True
    radical = kernel(trace_form(alg))
    logger.debug("Radical de dimensão %s numa álgebra de dimensão %s", radical.dim, alg.dim)
    return radical, radical.is_zero()


def nilpotency_index(alg, radical):
    """Menor k com rad^k = 0; falha se o radical calculado não for nilpotente."""
    potencia = radical
    k = 1
    while not potencia.is_zero():
        if k > alg.dim:
            raise InternalInconsistency("Radical calculado não é nilpotente")
        produtos = [alg.multiply(x, r) for x in potencia.vectors() for r in radical.vectors()]
        potencia = Subspace.span(alg.dim, produtos)
        k += 1
    return k
