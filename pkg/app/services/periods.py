"""
Espaços de períodos formais.

H_dR(M) é identificado com H_B(M) (mesmas matrizes de ação). Um elemento de
H_B(M) ⊗ H_dR(M)^∨ é uma matriz n × n T com T[r][c] = coeficiente de σ_r ⊗ ω_c,
achatada por linhas no espaço ambiente de dimensão n².

O oráculo de coeficientes emparelha T com a álgebra: b ↦ tr(T·ρ_M(b)) = Σ ω(ρ_M(b)σ).
As relações de P(M) são o núcleo desse emparelhamento.
"""
import logging
from itertools import product

from app.errors import (BudgetExceeded, HypothesisFailed, InternalInconsistency, NotASubmodule, NotEpi,
                        NotMono, ValidationError, WellDefinednessFailure, WitnessInvalid)
from app.models import (GluedPeriods, IdentityReport, PeriodSpace, PushoutReport, SpanMap, tensor_from_vector)
from app.services.exactlin import (ONE, ZERO, RatMatrix, Subspace, kernel, left_inverse, outer,
                                   quotient_presentation, rank_factorization, right_inverse, sum_all)
from app.services.quivalg import (SubmoduleHandle, direct_sum, end_algebra, hom_space, identity_map, image_of,
                                  kernel_of, map_from_sum, map_into_sum, power, quotient_module, spin, zero_map)
from config import Config

logger = logging.getLogger(__name__)

CERTIFIED = 'certified'
HOM_CLOSURE = 'hom-closure'
SPIN_BOX = 'spin-box'
STRATEGIES = (CERTIFIED, HOM_CLOSURE, SPIN_BOX)


def _espaco(M, relacoes, proveniencia, **extras):
    ambiente = M.dim * M.dim
    return PeriodSpace(M, ambiente, relacoes, quotient_presentation(ambiente, relacoes), proveniencia, **extras)


def pairing_matrix(M):
    """Linhas indexadas pela base de caminhos; coluna (r, c) recebe ρ_M(b)[c][r]."""
    n = M.dim
    return RatMatrix.from_rows([[rho[c, r] for r in range(n) for c in range(n)] for rho in M.action_matrices],
                               n * n)


def period_space(M):
    """P(M) pelo oráculo de coeficientes: dim = posto do span das matrizes de ação."""
    relacoes = kernel(pairing_matrix(M))
    espaco = _espaco(M, relacoes, 'CoefficientOracle')
    logger.debug("P(M) com dim H_B = %s: dim %s", M.dim, espaco.dim)
    return espaco


def pairing_vector(M, tensor):
    """Funcional b ↦ tr(T·ρ_M(b)) na base de caminhos."""
    return pairing_matrix(M).apply(tensor.flatten())


def contraction(sigmas, omegas):
    """Σ_i σ_i ⊗ ω_i como matriz n × n."""
    n = len(sigmas[0]) if sigmas else 0
    total = RatMatrix.zeros(n, n)
    for s, w in zip(sigmas, omegas):
        total = total + outer(s, w)
    return total


def relation_from_submodule(M, m, N, potencia=None):
    """Relações Σ σ_i ⊗ ω_i com (σ_i) ∈ N' ⊆ M^m e (ω_i) anulando N'."""
    potencia = potencia or power(M, m)
    if N.ambient != potencia.module:
        raise NotASubmodule("Submódulo não vive em M^m")
    n = M.dim
    if n == 0 or N.is_zero():
        return Subspace.zero(n * n)
    funcionais = [potencia.split_functional(w) for w in N.space.annihilator().vectors()]
    vetores = []
    for x in N.space.vectors():
        partes = potencia.split(x)
        for ws in funcionais:
            vetores.append(contraction(partes, ws).flatten())
    return Subspace.span(n * n, vetores)


def cyclic_submodule(M, sigmas):
    """N' = spin((σ_1, …, σ_m)) em M^m; devolve (M^m, N')."""
    potencia = power(M, len(sigmas))
    return potencia, spin(potencia.module, [potencia.combine(sigmas)])


# --- RELAÇÕES DE MORFISMOS E DE ENDOMORFISMOS ---

def hom_relation(alfa):
    """Relações (σ ⊗ α^∨ω, −ασ ⊗ ω) em (H_B(M) ⊗ H_dR(M)^∨) ⊕ (H_B(N) ⊗ H_dR(N)^∨)."""
    A = alfa.matrix
    n_m, n_n = alfa.source.dim, alfa.target.dim
    vetores = []
    for r in range(n_m):
        for c in range(n_n):
            parte_m = [A[c, j] if i == r else ZERO for i in range(n_m) for j in range(n_m)]
            parte_n = [-A[i, r] if j == c else ZERO for i in range(n_n) for j in range(n_n)]
            vetores.append(parte_m + parte_n)
    return Subspace.span(n_m * n_m + n_n * n_n, vetores)


def glued_period_dim(alfa):
    """dim de (P(M) ⊕ P(N)) módulo hom_relation(α), comparada com P(M ⊕ N)."""
    M, N = alfa.source, alfa.target
    n_m, n_n = M.dim * M.dim, N.dim * N.dim
    rel_m = period_space(M).relations
    rel_n = period_space(N).relations
    vetores = [v + (ZERO,) * n_n for v in rel_m.vectors()]
    vetores += [(ZERO,) * n_m + v for v in rel_n.vectors()]
    total = Subspace.span(n_m + n_n, vetores) + hom_relation(alfa)
    soma = period_space(direct_sum([M, N]).module)
    resultado = GluedPeriods(n_m + n_n - total.dim, soma.dim, (n_m - rel_m.dim, n_n - rel_n.dim))
    if resultado.glued_dim < resultado.direct_sum_dim:
        raise InternalInconsistency("Colagem menor que P(M ⊕ N)")
    return resultado


def endo_quotient(M):
    """E(M) = End(H) / [End(M), End(H)]: relações X·e − e·X, X elementar, e ∈ End(M)."""
    n = M.dim
    vetores = []
    for f in end_algebra(M).basis:
        E = f.matrix
        for r in range(n):
            for c in range(n):
                # (E_rc·E − E·E_rc)[i][j] = δ_ir E[c][j] − E[i][r] δ_cj
                vetor = [ZERO] * (n * n)
                for j in range(n):
                    vetor[r * n + j] += E[c, j]
                for i in range(n):
                    vetor[i * n + c] -= E[i, r]
                vetores.append(vetor)
    return _espaco(M, Subspace.span(n * n, vetores), 'EndoQuotient')


# --- ESPAÇOS DE PROFUNDIDADE k ---

def _candidatos_hom(M, k, limite):
    """Imagens M → M^m e núcleos M^m → M de tuplos em {0, id} ∪ base de End(M)."""
    elementos = [None, identity_map(M)] + list(end_algebra(M).basis)
    vistos = set()
    candidatos = []
    tentativas = 0
    for m in range(1, k + 1):
        potencia = power(M, m)
        for indices in product(range(len(elementos)), repeat=m):
            if not any(indices):
                continue
            if tentativas >= limite:
                return candidatos, True
            tentativas += 1
            mapas = [elementos[i] if i else zero_map(M, M) for i in indices]
            for sub in (image_of(map_into_sum(potencia, mapas)), kernel_of(map_from_sum(potencia, mapas))):
                chave = (m, sub.space.basis.entries)
                if chave in vistos:
                    continue
                vistos.add(chave)
                candidatos.append((m, potencia, sub))
    return candidatos, False


def box_values(b):
    valores = [0]
    for v in range(1, b + 1):
        valores += [v, -v]
    return valores


def _candidatos_caixa(M, k, b, limite):
    """Spins de tuplos inteiros com coordenadas em [−b, b], primeira coordenada não nula positiva."""
    n = M.dim
    candidatos = []
    vistos = set()
    tentativas = 0
    for m in range(1, k + 1):
        potencia = power(M, m)
        for coords in product(box_values(b), repeat=m * n):
            primeiro = next((x for x in coords if x), 0)
            if primeiro <= 0:
                continue
            if tentativas >= limite:
                return candidatos, True
            tentativas += 1
            sigmas = [coords[i * n:(i + 1) * n] for i in range(m)]
            sub = spin(potencia.module, [potencia.combine(sigmas)])
            chave = (m, sub.space.basis.entries)
            if chave in vistos:
                continue
            vistos.add(chave)
            candidatos.append((m, potencia, sub))
    return candidatos, False


def _sementes(M, k, oraculo):
    """Para cada vetor da base do núcleo do oráculo com posto ≤ k, o spin da sua fatoração de posto."""
    n = M.dim
    sementes = []
    for indice, vetor in enumerate(oraculo.relations.vectors()):
        sigmas, _ = rank_factorization(tensor_from_vector(n, vetor))
        if len(sigmas) <= k:
            sementes.append((len(sigmas), indice, sigmas))
    sementes.sort(key=lambda s: (s[0], s[1]))
    for m, _, sigmas in sementes:
        potencia, sub = cyclic_submodule(M, sigmas)
        yield m, potencia, sub


def depth_space(M, k, strategy=CERTIFIED, box_bound=None, spin_cap=None, hom_cap=None, seeds=True):
    """
    Cota superior de P^k(M) acumulando relações de submódulos de M^m, m ≤ k.
    Com a estratégia certificada o resultado é exato quando `certified` é True.

    As sementes da estratégia certificada vêm do núcleo do oráculo, mas cada uma
    é um submódulo cíclico de M^m com m ≤ k: só encurtam a busca por Hom e pela
    caixa, sem mudar o resultado. `seeds=False` desliga esse atalho.
    """
    if k < 1:
        raise ValidationError("A profundidade k precisa ser >= 1")
    if strategy not in STRATEGIES:
        raise ValidationError(f"Estratégia desconhecida: {strategy}")
    box_bound = box_bound or Config.SPIN_BOX_BOUND
    spin_cap = spin_cap or Config.SPIN_CANDIDATE_CAP
    hom_cap = hom_cap or Config.HOM_CLOSURE_CAP
    n = M.dim
    oraculo = period_space(M)
    if n == 0:
        return _espaco(M, oraculo.relations, 'DepthK', depth=k)

    acumulado = Subspace.zero(n * n)
    truncado = False

    def fechar(certificado):
        return _espaco(M, acumulado, 'DepthK', depth=k, certified=certificado, complete=not truncado)

    def absorver(fonte):
        nonlocal acumulado
        for m, potencia, sub in fonte:
            acumulado = acumulado + relation_from_submodule(M, m, sub, potencia)
            if acumulado == oraculo.relations:
                return True
        return False

    if strategy == CERTIFIED and seeds and absorver(_sementes(M, k, oraculo)):
        return fechar(True)
    if strategy in (CERTIFIED, HOM_CLOSURE):
        candidatos, cortado = _candidatos_hom(M, k, hom_cap)
        truncado = truncado or cortado
        if absorver(candidatos):
            return fechar(True)
    if strategy in (CERTIFIED, SPIN_BOX):
        candidatos, cortado = _candidatos_caixa(M, k, box_bound, spin_cap)
        truncado = truncado or cortado
        if absorver(candidatos):
            return fechar(True)

    if not oraculo.relations.contains_subspace(acumulado):
        raise InternalInconsistency("Relações acumuladas fora do núcleo do oráculo")
    resultado = fechar(False)
    if truncado:
        logger.warning("Orçamento de candidatos esgotado em profundidade %s (dim parcial %s)", k, resultado.dim)
        if strategy != CERTIFIED:
            raise BudgetExceeded("Orçamento de candidatos esgotado", parcial=resultado, profundidade=k)
    return resultado


# --- MAPAS INDUZIDOS ---

def induced_span_map(f, kind=None, source_space=None, target_space=None):
    """
    Para um mono f: N' → M, T ↦ F·T·S (funcionais levantados por uma inversa à esquerda);
    para um epi p: M → N, T ↦ R·T·P (vetores levantados por uma inversa à direita).
    """
    if kind is None:
        kind = 'mono' if f.is_injective() else 'epi'
    if kind == 'mono':
        if not f.is_injective():
            raise NotMono("O morfismo não é injetivo")
        F = f.matrix
        S = left_inverse(F)

        def mapa(T):
            return F @ T @ S
        origem, destino = f.source, f.target
    elif kind == 'epi':
        if not f.is_surjective():
            raise NotEpi("O morfismo não é sobrejetivo")
        P = f.matrix
        R = right_inverse(P)

        def mapa(T):
            return R @ T @ P
        origem, destino = f.target, f.source
    else:
        raise ValidationError(f"Tipo de mapa desconhecido: {kind}")

    source_space = source_space or period_space(origem)
    target_space = target_space or period_space(destino)
    n = origem.dim
    for vetor in source_space.relations.vectors():
        if not target_space.is_relation(mapa(tensor_from_vector(n, vetor))):
            raise WellDefinednessFailure("Relação levada fora das relações do destino")
    colunas = [target_space.coordinates(mapa(source_space.basis_tensor(i))) for i in range(source_space.dim)]
    matriz = RatMatrix.from_columns(colunas, target_space.dim)
    if matriz.rank() != source_space.dim:
        raise WellDefinednessFailure("Mapa induzido não é injetivo")
    return SpanMap(kind, source_space, target_space, matriz, mapa)


# --- IDENTIDADES BÁSICAS ---

def basic_identities(M, N=None, mode='sub', witness=None):
    """
    Modos: 'sub' (N ↪ M), 'quotient' (M ↠ N), 'power' (witness = expoente), 'orthogonal'.
    Devolve as dimensões comparadas e os mapas induzidos que dão o isomorfismo.
    """
    p_m = period_space(M)
    if mode in ('sub', 'quotient'):
        if witness is None or witness.target != (M if mode == 'sub' else N) \
                or witness.source != (N if mode == 'sub' else M):
            raise HypothesisFailed("Testemunha com domínio/contradomínio errados", modo=mode)
        if mode == 'sub' and not witness.is_injective():
            raise HypothesisFailed("A testemunha de subobjeto não é injetiva", modo=mode)
        if mode == 'quotient' and not witness.is_surjective():
            raise HypothesisFailed("A testemunha de quociente não é sobrejetiva", modo=mode)
        soma = direct_sum([M, N])
        p_soma = period_space(soma.module)
        mapa = induced_span_map(soma.injections[0], 'mono', p_m, p_soma)
        relatorio = IdentityReport(mode, {'P(M)': p_m.dim, 'P(M+N)': p_soma.dim}, p_m.dim == p_soma.dim, (mapa,))
    elif mode == 'power':
        expoente = witness if witness is not None else 2
        if not isinstance(expoente, int) or expoente < 1:
            raise HypothesisFailed("Expoente inválido", modo=mode)
        potencia = power(M, expoente)
        p_pot = period_space(potencia.module)
        mapa = induced_span_map(potencia.injections[0], 'mono', p_m, p_pot)
        relatorio = IdentityReport(mode, {'P(M)': p_m.dim, 'P(M^n)': p_pot.dim}, p_m.dim == p_pot.dim, (mapa,))
    elif mode == 'orthogonal':
        if hom_space(M, N) or hom_space(N, M):
            raise HypothesisFailed("M e N não são ortogonais", modo=mode)
        soma = direct_sum([M, N])
        p_n = period_space(N)
        p_soma = period_space(soma.module)
        mapas = (induced_span_map(soma.injections[0], 'mono', p_m, p_soma),
                 induced_span_map(soma.injections[1], 'mono', p_n, p_soma))
        juntos = Subspace.span(p_soma.dim, [m.matrix.column(j) for m in mapas for j in range(m.matrix.cols)])
        vale = p_soma.dim == p_m.dim + p_n.dim and juntos.dim == p_soma.dim
        relatorio = IdentityReport(mode, {'P(M)': p_m.dim, 'P(N)': p_n.dim, 'P(M+N)': p_soma.dim}, vale, mapas)
    else:
        raise ValidationError(f"Modo desconhecido: {mode}")
    if not relatorio.holds:
        raise InternalInconsistency(f"Identidade '{mode}' falhou com testemunha válida", dims=str(relatorio.dims))
    return relatorio


# --- REDUÇÃO POR PUSHOUT ---

def pushout_reduction(M, inclusoes):
    """
    M contém M_0 ⊗ X pelas inclusões j_i: M_0 → M (uma por vetor da base de X).
    M̃ = M^d / K, K gerado por ι_j j_i (i ≠ j) e ι_i j_i − ι_1 j_1: o pushout de
    M ⊗ X^∨ ao longo do traço Hom(X, X) → Q.
    """
    inclusoes = list(inclusoes)
    if not inclusoes:
        raise WitnessInvalid("Nenhuma inclusão de M_0 informada")
    M0 = inclusoes[0].source
    for j in inclusoes:
        if j.source != M0 or j.target != M:
            raise WitnessInvalid("Inclusões com domínio ou contradomínio incompatíveis")
        if not j.is_injective():
            raise WitnessInvalid("Testemunha não injetiva")
    d = len(inclusoes)
    imagens = sum_all(M.dim, [image_of(j).space for j in inclusoes])
    if imagens.dim != d * M0.dim:
        raise WitnessInvalid("As cópias de M_0 não estão em soma direta")

    potencia = power(M, d)
    geradores = []
    for i, j_i in enumerate(inclusoes):
        for k, inj in enumerate(potencia.injections):
            if k != i:
                geradores.append(image_of(inj.compose(j_i)).space)
        if i:
            diferenca = potencia.injections[i].compose(j_i) - potencia.injections[0].compose(inclusoes[0])
            geradores.append(image_of(diferenca).space)
    K = SubmoduleHandle(potencia.module, sum_all(potencia.module.dim, geradores))
    reduzido = quotient_module(K).module
    relatorio = PushoutReport(reduzido, period_space(M).dim, period_space(reduzido).dim, d)
    logger.debug("Pushout com dim X = %s: P(M) = %s, P(M~) = %s", d, relatorio.dim_original, relatorio.dim_reduced)
    if not relatorio.holds:
        raise InternalInconsistency("dim P(M) difere de dim P(M~)")
    return relatorio
