"""
Realização de relações de períodos por sequências exatas 0 → N' → M^m → N → 0,
e os movimentos de fechamento que transformam realizações em realizações.
"""
import logging

from app.errors import BudgetExceeded, InternalInconsistency, NotARelation, ValidationError
from app.models import RealizedRelation
from app.services.exactlin import ONE, ZERO, RatMatrix, Subspace, rank_factorization, rat
from app.services.periods import contraction, cyclic_submodule, period_space
from app.services.quivalg import (SubmoduleHandle, image_under, kernel_of, power, power_map, preimage_under,
                                  quotient_module, submodule_as_module)
from config import Config

logger = logging.getLogger(__name__)


def _tupla(vetores):
    return tuple(tuple(rat(x) for x in v) for v in vetores)


def _montar(M, m, potencia, sub, sigmas, omegas, alvo=None):
    sigmas, omegas = _tupla(sigmas), _tupla(omegas)
    if alvo is None:
        alvo = contraction(sigmas, omegas) if m else RatMatrix.zeros(M.dim, M.dim)
    realizada = RealizedRelation(M, m, potencia, sub, quotient_module(sub), sigmas, omegas, alvo)
    verify_realization(realizada)
    return realizada


def verify_realization(rr):
    """Reverifica (σ_i) ∈ N', (ω_i) ∈ Ann(N'), a contração e a exatidão da sequência."""
    M = rr.module
    if rr.submodule.ambient != rr.power.module:
        raise InternalInconsistency("N' não vive em M^m")
    if rr.m:
        if not rr.submodule.space.contains(rr.power.combine(rr.sigma)):
            raise InternalInconsistency("(σ_i) fora de H_B(N')")
        funcional = rr.power.combine_functionals(rr.omega)
        if any(sum((a * b for a, b in zip(funcional, x)), ZERO) for x in rr.submodule.space.vectors()):
            raise InternalInconsistency("(ω_i) não anula H_dR(N')")
        contraida = contraction(rr.sigma, rr.omega)
    else:
        contraida = RatMatrix.zeros(M.dim, M.dim)
    if contraida != rr.target:
        raise InternalInconsistency("Contração diferente da relação alvo")
    _, inclusao = submodule_as_module(rr.submodule)
    projecao = rr.quotient.projection
    if not inclusao.is_injective() or not projecao.is_surjective():
        raise InternalInconsistency("Sequência não é exata nas pontas")
    if kernel_of(projecao).space != rr.submodule.space:
        raise InternalInconsistency("Núcleo da projeção difere de N'")
    return True


def realize_relation(M, tensor, m_budget=None, oracle=None):
    """
    Escreve a relação como Σ_{i≤m} σ_i ⊗ ω_i (fatoração de posto, m mínimo) e
    toma N' = spin((σ_i)) em M^m; como N' = A·(σ_i), os ω_i anulam N'.
    """
    n = M.dim
    if (tensor.rows, tensor.cols) != (n, n):
        raise ValidationError(f"A relação precisa ser uma matriz {n}x{n}")
    oracle = oracle or period_space(M)
    if not oracle.is_relation(tensor):
        raise NotARelation("O tensor não está no núcleo do emparelhamento de coeficientes")
    if tensor.is_zero():
        potencia = power(M, 0)
        return _montar(M, 0, potencia, SubmoduleHandle(potencia.module, Subspace.zero(0)), (), (), tensor)
    sigmas, omegas = rank_factorization(tensor)
    orcamento = m_budget or Config.REALIZATION_M_BUDGET or n
    if len(sigmas) > orcamento:
        raise BudgetExceeded(f"Relação de posto {len(sigmas)} acima do orçamento m = {orcamento}")
    potencia, sub = cyclic_submodule(M, sigmas)
    logger.debug("Relação realizada com m = %s e dim N' = %s", len(sigmas), sub.dim)
    return _montar(M, len(sigmas), potencia, sub, sigmas, omegas, tensor)


# --- MOVIMENTOS DE FECHAMENTO ---

def _transportar(rr, mapa, novo_m, sigmas, omegas, direcao='image'):
    nova_potencia = power(rr.module, novo_m)
    if direcao == 'image':
        sub = image_under(mapa, rr.submodule)
    else:
        sub = preimage_under(mapa, rr.submodule)
    if sub.ambient != nova_potencia.module:
        raise InternalInconsistency("Transporte fora de M^m")
    return _montar(rr.module, novo_m, nova_potencia, sub, sigmas, omegas)


def extend_realization(rr, sigma=None, omega=None):
    """
    Acrescenta um par com σ = 0 (N' ⊕ 0) ou com ω = 0 (N' ⊕ M); a relação não muda.
    Exatamente um dos dois deve ser informado.
    """
    if (sigma is None) == (omega is None):
        raise ValidationError("Informe exatamente um entre sigma e omega")
    M = rr.module
    n = M.dim
    zero = (ZERO,) * n
    nova = power(M, rr.m + 1)
    if omega is not None:
        # N' ⊕ 0: par (0, ω)
        inclusao = power_map(M, _incluir(rr.m), rr.power, nova)
        sub = image_under(inclusao, rr.submodule)
        return _montar(M, rr.m + 1, nova, sub, rr.sigma + (zero,), rr.omega + (_tupla([omega])[0],), rr.target)
    # N' ⊕ M: par (σ, 0)
    projecao = power_map(M, _projetar(rr.m), nova, rr.power)
    sub = preimage_under(projecao, rr.submodule)
    return _montar(M, rr.m + 1, nova, sub, rr.sigma + (_tupla([sigma])[0],), rr.omega + (zero,), rr.target)


def _incluir(m):
    """(m+1) × m: inclusão nas primeiras m coordenadas."""
    return RatMatrix(m + 1, m, tuple(tuple(ONE if i == j else ZERO for j in range(m)) for i in range(m + 1)))


def _projetar(m):
    return _incluir(m).transpose()


def merge_sigmas(rr, i, j):
    """σ_i ⊗ ω + σ_j ⊗ ω = (σ_i + σ_j) ⊗ ω quando ω_i = ω_j: imagem pela soma M^m → M^{m−1}."""
    _checar_indices(rr, i, j)
    if rr.omega[i] != rr.omega[j]:
        raise ValidationError("merge_sigmas exige ω_i = ω_j")
    m = rr.m
    restantes = [k for k in range(m) if k != j]
    linhas = []
    for k in restantes:
        linhas.append(tuple(ONE if (c == k or (k == i and c == j)) else ZERO for c in range(m)))
    soma = power_map(rr.module, RatMatrix(m - 1, m, tuple(linhas)), rr.power, power(rr.module, m - 1))
    sigmas = [tuple(a + b for a, b in zip(rr.sigma[k], rr.sigma[j])) if k == i else rr.sigma[k] for k in restantes]
    omegas = [rr.omega[k] for k in restantes]
    return _transportar(rr, soma, m - 1, sigmas, omegas)


def merge_omegas(rr, i, j):
    """σ ⊗ ω_i + σ ⊗ ω_j = σ ⊗ (ω_i + ω_j) quando σ_i = σ_j: pré-imagem pela diagonal M^{m−1} → M^m."""
    _checar_indices(rr, i, j)
    if rr.sigma[i] != rr.sigma[j]:
        raise ValidationError("merge_omegas exige σ_i = σ_j")
    m = rr.m
    restantes = [k for k in range(m) if k != j]
    posicao = {k: p for p, k in enumerate(restantes)}
    linhas = []
    for linha in range(m):
        origem = posicao[i] if linha == j else posicao[linha]
        linhas.append(tuple(ONE if c == origem else ZERO for c in range(m - 1)))
    diagonal = power_map(rr.module, RatMatrix(m, m - 1, tuple(linhas)), power(rr.module, m - 1), rr.power)
    sigmas = [rr.sigma[k] for k in restantes]
    omegas = [tuple(a + b for a, b in zip(rr.omega[k], rr.omega[j])) if k == i else rr.omega[k] for k in restantes]
    return _transportar(rr, diagonal, m - 1, sigmas, omegas, direcao='preimage')


def rescale(rr, i, fator):
    """Automorfismo (1, …, λ, …, 1): σ_i ↦ λσ_i, ω_i ↦ ω_i/λ."""
    fator = rat(fator)
    if not fator:
        raise ValidationError("O fator de reescala precisa ser não nulo")
    _checar_indices(rr, i)
    m = rr.m
    diag = RatMatrix(m, m, tuple(tuple((fator if k == i else ONE) if k == c else ZERO for c in range(m))
                                 for k in range(m)))
    automorfismo = power_map(rr.module, diag, rr.power, rr.power)
    sigmas = [tuple(fator * x for x in s) if k == i else s for k, s in enumerate(rr.sigma)]
    omegas = [tuple(x / fator for x in w) if k == i else w for k, w in enumerate(rr.omega)]
    return _transportar(rr, automorfismo, m, sigmas, omegas)


def scale_omegas(rr, escalar):
    """Multiplica todos os ω por um escalar; N' não muda."""
    escalar = rat(escalar)
    omegas = [tuple(escalar * x for x in w) for w in rr.omega]
    return _montar(rr.module, rr.m, rr.power, rr.submodule, rr.sigma, omegas)


def negation_pair(M, sigma, omega):
    """σ ⊗ ω − σ ⊗ ω = 0 pela sequência M →(id,id) M² →(id,−id) M."""
    potencia = power(M, 2)
    diagonal = power_map(M, RatMatrix.from_rows([[1], [1]]), power(M, 1), potencia)
    sub = image_under(diagonal, SubmoduleHandle(diagonal.source, Subspace.full(M.dim)))
    omega = _tupla([omega])[0]
    return _montar(M, 2, potencia, sub, (sigma, sigma), (omega, tuple(-x for x in omega)))


def sum_realizations(rr1, rr2):
    """N'_1 ⊕ N'_2 ⊆ M^{m_1 + m_2}; a relação realizada é a soma."""
    if rr1.module != rr2.module:
        raise ValidationError("Realizações sobre módulos diferentes")
    M = rr1.module
    m1, m2 = rr1.m, rr2.m
    if not m1:
        return rr2
    if not m2:
        return rr1
    nova = power(M, m1 + m2)
    primeira = RatMatrix(m1 + m2, m1, tuple(tuple(ONE if k == c else ZERO for c in range(m1))
                                             for k in range(m1 + m2)))
    segunda = RatMatrix(m1 + m2, m2, tuple(tuple(ONE if k == m1 + c else ZERO for c in range(m2))
                                            for k in range(m1 + m2)))
    imagem1 = image_under(power_map(M, primeira, rr1.power, nova), rr1.submodule)
    imagem2 = image_under(power_map(M, segunda, rr2.power, nova), rr2.submodule)
    return _montar(M, m1 + m2, nova, imagem1 + imagem2, rr1.sigma + rr2.sigma, rr1.omega + rr2.omega,
                   rr1.target + rr2.target)


def _checar_indices(rr, *indices):
    if any(not 0 <= i < rr.m for i in indices) or len(set(indices)) != len(indices):
        raise ValidationError("Índices de par inválidos")
