"""
Avaliação de períodos formais num ponto de comparação u ∈ A ⊗ L.

(σ ⊗ ω)_M ↦ ω(ρ_M(u)·σ) = Σ_b u_b·tr(T·ρ_M(b)). A injetividade dessa avaliação
em P(M), medida sobre K ↪ L, é o modelo de mesa da conjectura dos períodos.
"""
import logging
from dataclasses import dataclass

from app.errors import AlgebraMismatch, NotAUnit, ValidationError
from app.models import EvalReport, elementary_tensor, tensor_from_vector
from app.services.exactlin import RatMatrix, kron, outer, rat_to_str
from app.services.numberfield import FieldEmbedding, NumberField
from app.services.periods import pairing_matrix, pairing_vector, period_space
from app.services.quivalg import direct_sum
from app.services.realization import realize_relation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComparisonPoint:
    algebra: object  # BoundQuiverAlgebra
    embedding: FieldEmbedding  # K ↪ L
    coefficients: tuple  # um elemento de L por caminho da base

    def __post_init__(self):
        if len(self.coefficients) != self.algebra.dim:
            raise ValidationError("Ponto de comparação com número de coeficientes errado")
        if any(c.field != self.field for c in self.coefficients):
            raise ValidationError("Coeficientes fora do corpo L")

    @property
    def field(self):
        return self.embedding.target

    @classmethod
    def from_mapping(cls, alg, embedding, valores):
        """valores: {nome do caminho: coeficientes em L}; caminhos ausentes valem 0."""
        nomes = [p.name for p in alg.path_basis]
        desconhecidos = set(valores) - set(nomes)
        if desconhecidos:
            raise ValidationError(f"Caminhos desconhecidos no ponto de comparação: {sorted(desconhecidos)}")
        L = embedding.target
        return cls(alg, embedding, tuple(L.element(valores.get(nome, [])) for nome in nomes))

    @classmethod
    def identity(cls, alg, corpo=None):
        """u = 1 = Σ e_v."""
        corpo = corpo or NumberField.rationals()
        return cls(alg, FieldEmbedding.rational(corpo),
                   tuple(corpo.one() if p.length == 0 else corpo.zero() for p in alg.path_basis))

    def restriction_matrix(self):
        """Multiplicação à esquerda por u em A ⊗ L, como matriz sobre Q."""
        n = self.algebra.dim
        grau = self.field.degree
        total = RatMatrix.zeros(n * grau, n * grau)
        for i, c in enumerate(self.coefficients):
            if not c.is_zero():
                total = total + kron(self.algebra.structure.left_matrix(i), c.mult_matrix())
        return total

    def is_unit(self):
        return self.restriction_matrix().rank() == self.algebra.dim * self.field.degree

    def to_json(self):
        return {
            'field': self.field.to_json(),
            'embedding_of_K': [rat_to_str(x) for x in self.embedding.image_of_generator.coefficients],
            'u': {p.name: c.to_json()['coefficients'] for p, c in zip(self.algebra.path_basis, self.coefficients)},
        }


def evaluate(M, u, tensor):
    """Valor em L do tensor T ∈ H_B(M) ⊗ H_dR(M)^∨."""
    if M.algebra is not u.algebra:
        raise AlgebraMismatch("Ponto de comparação de outra álgebra")
    valor = u.field.zero()
    for coef, par in zip(u.coefficients, pairing_vector(M, tensor)):
        if par:
            valor = valor + coef * par
    return valor


def _valores(M, u, tensores):
    emparelhamento = pairing_matrix(M)
    valores = []
    for T in tensores:
        valor = u.field.zero()
        for coef, par in zip(u.coefficients, emparelhamento.apply(T.flatten())):
            if par:
                valor = valor + coef * par
        valores.append(valor)
    return valores


def eval_and_conjecture(M, u, oracle=None):
    """
    Avalia a base de P(M) em u, calcula o núcleo sobre K (falhas da conjectura
    nesse ponto) e realiza as relações do oráculo por sequências exatas.
    """
    if M.algebra is not u.algebra:
        raise AlgebraMismatch("Ponto de comparação de outra álgebra")
    if not u.is_unit():
        raise NotAUnit("u não é invertível em A ⊗ L")
    espaco = oracle or period_space(M)
    n = M.dim
    valores = _valores(M, u, [espaco.basis_tensor(i) for i in range(espaco.dim)])
    ambiente = _valores(M, u, [elementary_tensor(n, r, c) for r in range(n) for c in range(n)])
    nucleo_ambiente = u.embedding.kernel_over_K(ambiente)
    nucleo = u.embedding.kernel_over_K(valores)
    realizacoes = [realize_relation(M, tensor_from_vector(n, v), oracle=espaco) for v in espaco.relations.vectors()]
    if nucleo:
        logger.info("Avaliação não injetiva em P(M): núcleo de dimensão %s", len(nucleo))
    return EvalReport(espaco, tuple(valores), len(nucleo_ambiente), tuple(nucleo), tuple(realizacoes))


def additivity_check(u, termos):
    """
    Σ (σ_i ⊗ ω_i)_{M_i} contra (⊕σ_i ⊗ ⊕ω_i)_{⊕M_i}: compara os funcionais de
    emparelhamento (igualdade em P) e os valores em u.
    """
    if not termos:
        raise ValidationError("Nenhum termo informado")
    modulos = [t[0] for t in termos]
    soma = direct_sum(modulos)
    esquerda = u.field.zero()
    emparelhamento = None
    for M, sigma, omega in termos:
        T = outer(sigma, omega)
        esquerda = esquerda + evaluate(M, u, T)
        parcela = pairing_vector(M, T)
        emparelhamento = parcela if emparelhamento is None else tuple(a + b for a, b in zip(emparelhamento, parcela))
    T_soma = outer(soma.combine([t[1] for t in termos]), soma.combine_functionals([t[2] for t in termos]))
    direita = evaluate(soma.module, u, T_soma)
    emparelhamento_soma = pairing_vector(soma.module, T_soma)
    return {
        'lhs': esquerda,
        'rhs': direita,
        'holds': esquerda == direita and emparelhamento == emparelhamento_soma,
    }
