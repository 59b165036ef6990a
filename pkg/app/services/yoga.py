"""
Sequências admissíveis para uma partição dos vértices por pesos, levantamentos
e extensões universais, saturação e certificação de principalidade.

Convenção: as flechas não aumentam o peso, de modo que a parte de pesos baixos
de um módulo é um submódulo. Numa sequência admissível 0 → M_0 → M → M_1 → 0,
M_0 é suportado na classe de baixo (sub_class) e M_1 na de cima (quotient_class).
"""
import logging
from collections import deque
from dataclasses import dataclass
from itertools import product

from app.errors import (BudgetExceeded, HypothesisFailed, InternalInconsistency, NotExact, OrthogonalityFailure,
                        SupportViolation, ValidationError)
from app.models import ExplorationTrace, PrincipalityVerdict, SaturationVerdict
from app.services.algebra import radical_and_semisimplicity
from app.services.audit import (registrar_lacuna, registrar_saturacao, registrar_semisimples, registrar_soma)
from app.services.exactlin import RatMatrix, Subspace, kron, left_inverse, right_inverse, solve, sum_all
from app.services.periods import box_values, endo_quotient, period_space
from app.services.quivalg import (ModuleMap, SubmoduleHandle, core_submodule, direct_sum, dual_map, dual_module,
                                  end_algebra, full_submodule, hom_space, identity_map, image_of, image_under,
                                  power, preimage_under, quotient_module, simple, spin, split_retraction,
                                  split_section, submodule_as_module, trace_quotient, zero_map, zero_module,
                                  zero_submodule)
from config import Config

logger = logging.getLogger(__name__)

LEFT = 'left'
RIGHT = 'right'


# --- PARTIÇÃO POR PESOS ---

@dataclass(frozen=True)
class WeightPartition:
    classes: tuple  # ((peso, frozenset de vértices), ...) em ordem crescente de peso

    @classmethod
    def from_dict(cls, dados):
        """{"classes": [{"weight": w, "vertices": [...]}, ...]}"""
        try:
            classes = [(int(c['weight']), frozenset(c['vertices'])) for c in dados['classes']]
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"Partição de pesos malformada: {e}")
        pesos = [w for w, _ in classes]
        if len(set(pesos)) != len(pesos):
            raise ValidationError("Pesos repetidos na partição")
        return cls(tuple(sorted(classes, key=lambda c: c[0])))

    @classmethod
    def from_weights(cls, pesos_por_vertice):
        agrupado = {}
        for v, w in pesos_por_vertice.items():
            agrupado.setdefault(int(w), set()).add(v)
        return cls(tuple((w, frozenset(vs)) for w, vs in sorted(agrupado.items())))

    def weights(self):
        return [w for w, _ in self.classes]

    def weight_of(self, v):
        for w, vertices in self.classes:
            if v in vertices:
                return w
        raise ValidationError(f"Vértice {v} sem peso")

    def vertices_of_weight(self, peso):
        for w, vertices in self.classes:
            if w == peso:
                return vertices
        return frozenset()

    def below(self, peso):
        return frozenset(v for w, vs in self.classes if w < peso for v in vs)

    def negated(self):
        """Pesos trocados de sinal: a partição usada no dual."""
        return WeightPartition(tuple(sorted(((-w, vs) for w, vs in self.classes), key=lambda c: c[0])))

    def validate_for(self, alg):
        """Cada vértice em exatamente uma classe; registra a ortogonalidade de classes vizinhas."""
        vistos = [v for _, vs in self.classes for v in vs]
        if len(vistos) != len(set(vistos)):
            raise ValidationError("Vértice em mais de uma classe de peso")
        if set(vistos) != set(alg.vertices):
            faltando = sorted(set(alg.vertices) - set(vistos))
            sobrando = sorted(set(vistos) - set(alg.vertices))
            raise ValidationError(f"Partição incompatível: faltando {faltando}, desconhecidos {sobrando}")
        registro = []
        for (w0, a0), (w1, a1) in zip(self.classes, self.classes[1:]):
            registro.append({'weights': [w0, w1], 'simple_pairs': _ortogonalidade_simples(alg, a0, a1)})
        return registro

    def to_json(self):
        return {'classes': [{'weight': w, 'vertices': sorted(vs)} for w, vs in self.classes]}


def _ortogonalidade_simples(alg, a0, a1):
    pares = 0
    for v in sorted(a0):
        for w in sorted(a1):
            S_v, S_w = simple(alg, v), simple(alg, w)
            if hom_space(S_v, S_w) or hom_space(S_w, S_v):
                raise OrthogonalityFailure(f"Hom entre os simples S_{v} e S_{w} não nulo", vertices=[v, w])
            pares += 1
    return pares


def weight_filtration(M, particao):
    """W_{≤w}(M): maior submódulo suportado em pesos ≤ w, para cada peso."""
    particao.validate_for(M.algebra)
    filtracao = []
    for w in particao.weights():
        vertices = [v for v in M.algebra.vertices if particao.weight_of(v) <= w]
        filtracao.append((w, core_submodule(M, vertices)))
    return filtracao


# --- SEQUÊNCIAS ADMISSÍVEIS ---

@dataclass(frozen=True)
class AdmissibleSequence:
    inclusion: ModuleMap  # M_0 → M
    projection: ModuleMap  # M → M_1
    sub_class: frozenset
    quotient_class: frozenset
    orthogonality: dict

    @property
    def sub(self):
        return self.inclusion.source

    @property
    def middle(self):
        return self.inclusion.target

    @property
    def quotient(self):
        return self.projection.target

    def sub_in_middle(self):
        return image_of(self.inclusion)

    def to_dict(self):
        return {
            'sub_dims': list(self.sub.vertex_dims),
            'middle_dims': list(self.middle.vertex_dims),
            'quotient_dims': list(self.quotient.vertex_dims),
            'sub_class': sorted(self.sub_class),
            'quotient_class': sorted(self.quotient_class),
            'orthogonality': dict(self.orthogonality),
        }


def admissible_check(inclusao, projecao, sub_class, quotient_class):
    """Exatidão, suportes nas classes e ortogonalidade Hom(A_0, A_1) = Hom(A_1, A_0) = 0."""
    sub_class, quotient_class = frozenset(sub_class), frozenset(quotient_class)
    M0, M, M1 = inclusao.source, inclusao.target, projecao.target
    if projecao.source != M:
        raise NotExact("A projeção não sai do termo do meio")
    if not inclusao.is_injective():
        raise NotExact("M_0 → M não é injetiva")
    if not projecao.is_surjective():
        raise NotExact("M → M_1 não é sobrejetiva")
    if not projecao.compose(inclusao).is_zero() or M.dim != M0.dim + M1.dim:
        raise NotExact("Imagem de M_0 difere do núcleo de M → M_1")
    fora = sorted(set(M0.support()) - sub_class)
    if fora:
        raise SupportViolation(f"M_0 suportado fora da classe de baixo: {fora}", vertices=fora)
    fora = sorted(set(M1.support()) - quotient_class)
    if fora:
        raise SupportViolation(f"M_1 suportado fora da classe de cima: {fora}", vertices=fora)
    pares = _ortogonalidade_simples(M.algebra, sub_class, quotient_class)
    if hom_space(M0, M1) or hom_space(M1, M0):
        raise OrthogonalityFailure("Hom entre M_0 e M_1 não nulo")
    return AdmissibleSequence(inclusao, projecao, sub_class, quotient_class,
                              {'simple_pairs': pares, 'hom_M0_M1': 0, 'hom_M1_M0': 0})


def sequence_from_submodule(U, sub_class, quotient_class):
    """0 → U → M → M/U → 0."""
    _, inclusao = submodule_as_module(U)
    return admissible_check(inclusao, quotient_module(U).projection, sub_class, quotient_class)


def sub_only_sequence(Z, sub_class, quotient_class):
    """0 → Z → Z → 0 → 0."""
    return admissible_check(identity_map(Z), zero_map(Z, zero_module(Z.algebra)), sub_class, quotient_class)


def quotient_only_sequence(Z, sub_class, quotient_class):
    """0 → 0 → Z → Z → 0."""
    return admissible_check(zero_map(zero_module(Z.algebra), Z), identity_map(Z), sub_class, quotient_class)


def dual_sequence(seq):
    """D(seq): 0 → D(M_1) → D(M) → D(M_0) → 0, com as classes trocadas."""
    DM, DM0, DM1 = dual_module(seq.middle), dual_module(seq.sub), dual_module(seq.quotient)
    return admissible_check(dual_map(seq.projection, DM1, DM), dual_map(seq.inclusion, DM, DM0),
                            seq.quotient_class, seq.sub_class)


# --- LEVANTAMENTOS E EXTENSÕES UNIVERSAIS ---

def universal_lift(seq, alvo, search=True, bound=None, cap=None):
    """
    Menor U ⊆ M com p(U) = N_1' para N_1' ⊆ M_1: o núcleo do maior quociente de
    E = p^{-1}(N_1') suportado na classe de baixo.
    """
    if alvo.ambient != seq.quotient:
        raise ValidationError("N_1' precisa ser submódulo de M_1")
    M = seq.middle
    fora = [v for v in M.algebra.vertices if v not in seq.sub_class]
    E = preimage_under(seq.projection, alvo)
    E_mod, inclusao = submodule_as_module(E)
    U_em_E, _ = trace_quotient(E_mod, fora)
    U = image_under(inclusao, U_em_E)
    fatias = [M.projector(v).apply(x) for x in E.space.vectors() for v in fora]
    if spin(M, fatias).space != U.space:
        raise InternalInconsistency("Traço em E difere do spin das fatias")
    if image_under(seq.projection, U).space != alvo.space:
        raise HypothesisFailed("p(U) ≠ N_1': a sequência não se comporta como admissível")
    if search:
        _buscar_levantamentos(seq, alvo, U, bound, cap)
    return U


def _buscar_levantamentos(seq, alvo, U, bound=None, cap=None):
    """Confere em uma caixa de coeficientes que todo levantamento encontrado contém U."""
    bound = Config.LIFT_SEARCH_BOUND if bound is None else bound
    cap = cap or Config.LIFT_SEARCH_CAP
    M = seq.middle
    base_M0 = seq.sub_in_middle().space.vectors()
    P = seq.projection.matrix
    levantados = [solve(P, y) for y in alvo.space.vectors()]
    checados = 0
    for coefs in product(box_values(bound), repeat=len(levantados) * len(base_M0)):
        if checados >= cap:
            break
        vetores = []
        for a, base in enumerate(levantados):
            v = list(base)
            for j, m in enumerate(base_M0):
                c = coefs[a * len(base_M0) + j]
                if c:
                    v = [x + c * y for x, y in zip(v, m)]
            vetores.append(v)
        checados += 1
        if not spin(M, vetores).contains(U):
            raise HypothesisFailed("Levantamento alternativo não contém o levantamento universal")
    logger.debug("Busca de levantamentos: %s candidatos", checados)
    return checados


def universal_extension(seq, alvo, search=True, bound=None, cap=None):
    """
    Maior N' ⊆ M com N' ∩ M_0 = N_0': anulador do levantamento universal de
    Ann(N_0') na sequência dual; conferido contra a pré-imagem do maior
    submódulo de M/N_0' suportado na classe de cima.
    """
    if alvo.ambient != seq.sub:
        raise ValidationError("N_0' precisa ser submódulo de M_0")
    M = seq.middle
    dual = dual_sequence(seq)
    anulador = SubmoduleHandle(dual.quotient, alvo.space.annihilator())
    U_dual = universal_lift(dual, anulador, search=False)
    N = SubmoduleHandle(M, U_dual.space.annihilator())

    alvo_em_M = image_under(seq.inclusion, alvo)
    q = quotient_module(alvo_em_M)
    cruzado = preimage_under(q.projection, core_submodule(q.module, seq.quotient_class))
    if cruzado.space != N.space:
        raise InternalInconsistency("Extensão por dualidade difere da pré-imagem do núcleo")
    if N.intersect(seq.sub_in_middle()).space != alvo_em_M.space:
        raise HypothesisFailed("N' ∩ M_0 ≠ N_0'")
    if search:
        _buscar_extensoes(seq, alvo_em_M, N, bound, cap)
    return N


def _buscar_extensoes(seq, alvo_em_M, N, bound=None, cap=None):
    bound = Config.LIFT_SEARCH_BOUND if bound is None else bound
    cap = cap or Config.LIFT_SEARCH_CAP
    M = seq.middle
    M0 = seq.sub_in_middle()
    geradores = alvo_em_M.space.vectors()
    checados = 0
    for v in product(box_values(bound), repeat=M.dim):
        if checados >= cap:
            break
        if not any(v):
            continue
        checados += 1
        candidato = spin(M, geradores + [v])
        if candidato.intersect(M0).space != alvo_em_M.space:
            continue
        if not N.contains(candidato):
            raise HypothesisFailed("Extensão alternativa fora da extensão universal")
    return checados


# --- SATURAÇÃO ---

def _restricoes(seq, lado):
    """Imagens de End(M) em End(M_1) (direita) ou End(M_0) (esquerda), achatadas."""
    M = seq.middle
    if lado == RIGHT:
        P = seq.projection.matrix
        S = right_inverse(P)
        return [(P @ e.matrix @ S).flatten() for e in hom_space(M, M)], seq.quotient
    F = seq.inclusion.matrix
    R = left_inverse(F)
    return [(R @ e.matrix @ F).flatten() for e in hom_space(M, M)], seq.sub


def saturated_check(seq, side):
    """
    Direita: End(M) → End(M_1) sobrejetiva, End(M_1) semissimples e Hom(M, A_0) = 0.
    Esquerda: End(M) → End(M_0) sobrejetiva, End(M_0) semissimples e Hom(A_1, M) = 0.
    """
    if side not in (LEFT, RIGHT):
        raise ValidationError(f"Lado desconhecido: {side}")
    if seq.sub.dim == 0 or seq.quotient.dim == 0:
        return SaturationVerdict(side, 'Certified', {'trivial': True})
    M = seq.middle
    imagens, extremo = _restricoes(seq, side)
    alvo = end_algebra(extremo)
    sobrejetiva = Subspace.span(extremo.dim ** 2, imagens).dim == alvo.dim
    _, semisimples = radical_and_semisimplicity(alvo.algebra)
    if side == RIGHT:
        fora = [v for v in M.algebra.vertices if v not in seq.sub_class]
        _, q = trace_quotient(M, fora)
        ortogonal = q.module.dim == 0
        chave = 'hom_to_sub_class_zero'
    else:
        ortogonal = core_submodule(M, seq.quotient_class).is_zero()
        chave = 'hom_from_quotient_class_zero'
    checks = {
        'restriction_surjective': sobrejetiva,
        'end_semisimple': semisimples,
        chave: ortogonal,
        'end_dims': [len(imagens), alvo.dim],
    }
    status = 'Certified' if (sobrejetiva and semisimples and ortogonal) else 'Unknown'
    return SaturationVerdict(side, status, checks)


def _posto_de_composicoes(mapas, compor, dim_ambiente):
    return Subspace.span(dim_ambiente, [compor(f).matrix.flatten() for f in mapas]).dim


def saturated_sum_check(seq_m, seq_n, side):
    """
    Condições para que a soma de duas sequências saturadas (mesmas classes)
    continue saturada. Esquerda: L1 Hom(M_0, N_0) = 0; L2 Hom(N, M_0) → Hom(N_0, M_0)
    sobrejetiva; L3 Hom(A_1, M / Σ im(N_0 → M)) = 0. Direita é o espelho.
    """
    if side not in (LEFT, RIGHT):
        raise ValidationError(f"Lado desconhecido: {side}")
    if (seq_m.sub_class, seq_m.quotient_class) != (seq_n.sub_class, seq_n.quotient_class):
        raise ValidationError("Sequências com classes diferentes")
    premissas = saturated_check(seq_m, side).certified and saturated_check(seq_n, side).certified
    M = seq_m.middle
    if side == LEFT:
        M0, N0, N = seq_m.sub, seq_n.sub, seq_n.middle
        c1 = not hom_space(M0, N0)
        alvo = hom_space(N0, M0)
        c2 = _posto_de_composicoes(hom_space(N, M0), lambda f: f.compose(seq_n.inclusion),
                                   M0.dim * N0.dim) == len(alvo)
        soma = SubmoduleHandle(M, sum_all(M.dim, [image_of(f).space for f in hom_space(N0, M)]))
        coker = quotient_module(soma).module
        c3 = core_submodule(coker, seq_m.quotient_class).is_zero()
        checks = {'L1': c1, 'L2': c2, 'L3': c3}
    else:
        M1, N1, N = seq_m.quotient, seq_n.quotient, seq_n.middle
        c1 = not hom_space(N1, M1)
        alvo = hom_space(M1, N1)
        c2 = _posto_de_composicoes(hom_space(M1, N), lambda f: seq_n.projection.compose(f),
                                   M1.dim * N1.dim) == len(alvo)
        nucleo = Subspace.full(M.dim)
        for f in hom_space(M, N1):
            nucleo = nucleo.intersect(Subspace.zero(N1.dim).preimage(f.matrix))
        K, _ = submodule_as_module(SubmoduleHandle(M, nucleo))
        fora = [v for v in M.algebra.vertices if v not in seq_m.sub_class]
        _, q = trace_quotient(K, fora)
        c3 = q.module.dim == 0
        checks = {'R1': c1, 'R2': c2, 'R3': c3}
    checks['premises'] = premissas
    status = 'Certified' if all(checks.values()) else 'Unknown'
    return SaturationVerdict(side, status, checks)


# --- PRINCIPALIDADE ---

@dataclass(frozen=True)
class _Resultado:
    modulo: object
    no: object
    exato: bool


def _classes(M, particao):
    pesos = sorted({particao.weight_of(v) for v in M.support()})
    if len(pesos) < 2:
        return None
    topo = pesos[-1]
    return particao.below(topo), particao.vertices_of_weight(topo)


def _classe_semisimples(alg, vertices):
    return not any(a.source in vertices and a.target in vertices for a in alg.arrows)


def _mesmo_add(Z, X):
    """Z e X semissimples com os mesmos simples: add(Z) = add(X)."""
    return Z.is_semisimple() and X.is_semisimple() and set(Z.support()) == set(X.support())


def _sequencia(X, A0, A1):
    try:
        return sequence_from_submodule(core_submodule(X, A0), A0, A1)
    except (NotExact, SupportViolation, OrthogonalityFailure) as e:
        logger.debug("Fatiamento não admissível: %s", e)
        return None


def _extremos(seq, particao):
    filhos = [_certificar_exato(seq.sub, particao), _certificar_exato(seq.quotient, particao)]
    return None if None in filhos else filhos


def _lado_direito(M, particao):
    classes = _classes(M, particao)
    if classes is None:
        return None
    A0, A1 = classes
    fora = [v for v in M.algebra.vertices if v not in A0]
    U, q = trace_quotient(M, fora)
    Z = q.module
    if Z.dim:
        if split_section(q.projection) is None:
            return None
        X, _ = submodule_as_module(U)
    else:
        X = M
    seq = _sequencia(X, A0, A1)
    if seq is None:
        return None
    veredito = saturated_check(seq, RIGHT)
    filhos = _extremos(seq, particao) if veredito.certified else None
    if filhos is None:
        return None
    X0 = seq.sub
    if Z.dim == 0:
        if X0.dim == 0:
            return None
        aumentado = direct_sum([M, X0]).module
        no = registrar_saturacao('SatPrincipal', aumentado, seq, veredito, filhos, RIGHT, X0, 'augmented')
        return _Resultado(aumentado, no, False)
    if X0.dim and _mesmo_add(Z, X0):
        no = registrar_saturacao('SatPrincipal', M, seq, veredito, filhos, RIGHT, Z, 'add')
        return _Resultado(M, no, True)
    if Z.is_semisimple() and _classe_semisimples(M.algebra, A0) and A0 <= set(Z.support()):
        seq_z = sub_only_sequence(Z, A0, A1)
        soma = saturated_sum_check(seq, seq_z, RIGHT)
        if soma.certified:
            filhos = filhos + [registrar_soma(M, seq, seq_z, soma, RIGHT)]
            no = registrar_saturacao('SatPrincipalVar', M, seq, veredito, filhos, RIGHT, Z, 'generator')
            return _Resultado(M, no, True)
    return None


def _lado_esquerdo(M, particao):
    classes = _classes(M, particao)
    if classes is None:
        return None
    A0, A1 = classes
    Y = core_submodule(M, A1)
    if Y.dim:
        Y_mod, inclusao = submodule_as_module(Y)
        if split_retraction(inclusao) is None:
            return None
        X = quotient_module(Y).module
    else:
        Y_mod = None
        X = M
    seq = _sequencia(X, A0, A1)
    if seq is None:
        return None
    veredito = saturated_check(seq, LEFT)
    filhos = _extremos(seq, particao) if veredito.certified else None
    if filhos is None:
        return None
    X1 = seq.quotient
    if Y_mod is None:
        if X1.dim == 0:
            return None
        aumentado = direct_sum([M, X1]).module
        no = registrar_saturacao('SatPrincipal', aumentado, seq, veredito, filhos, LEFT, X1, 'augmented')
        return _Resultado(aumentado, no, False)
    if X1.dim and _mesmo_add(Y_mod, X1):
        no = registrar_saturacao('SatPrincipal', M, seq, veredito, filhos, LEFT, Y_mod, 'add')
        return _Resultado(M, no, True)
    if Y_mod.is_semisimple() and _classe_semisimples(M.algebra, A1) and A1 <= set(Y_mod.support()):
        seq_y = quotient_only_sequence(Y_mod, A0, A1)
        soma = saturated_sum_check(seq, seq_y, LEFT)
        if soma.certified:
            filhos = filhos + [registrar_soma(M, seq, seq_y, soma, LEFT)]
            no = registrar_saturacao('SatPrincipalVar', M, seq, veredito, filhos, LEFT, Y_mod, 'generator')
            return _Resultado(M, no, True)
    return None


def _certificar_exato(N, particao):
    """Nó de derivação que certifica o próprio N, ou None."""
    if N.is_semisimple():
        return registrar_semisimples(N)
    for lado in (_lado_direito, _lado_esquerdo):
        resultado = lado(N, particao)
        if resultado is not None and resultado.exato:
            return resultado.no
    return None


def certify_principal(M, partition):
    """
    Semissimples → Certified; fatiamento por pesos com sequência saturada →
    Certified (para M ou para M ⊕ somando); dim E(M) > dim P(M) → Refuted;
    caso contrário Unknown.
    """
    partition.validate_for(M.algebra)
    if M.is_semisimple():
        return PrincipalityVerdict('Certified', M, registrar_semisimples(M))
    aumentados = []
    for lado in (_lado_direito, _lado_esquerdo):
        resultado = lado(M, partition)
        if resultado is None:
            continue
        if resultado.exato:
            return PrincipalityVerdict('Certified', M, resultado.no)
        aumentados.append(resultado)
    dim_e, dim_p = endo_quotient(M).dim, period_space(M).dim
    if dim_e > dim_p:
        notas = tuple(f"certificado disponível para o módulo aumentado de dims {list(r.modulo.vertex_dims)}"
                      for r in aumentados)
        return PrincipalityVerdict('Refuted', M, registrar_lacuna(M, dim_e, dim_p), (dim_e, dim_p), notas)
    if aumentados:
        r = aumentados[0]
        return PrincipalityVerdict('Certified', r.modulo, r.no,
                                   notes=('certificado vale para M ⊕ somando da sequência',))
    return PrincipalityVerdict('Unknown', M, None, notes=('nenhuma regra se aplica',))


def replay(verdict):
    """Reexecuta as verificações registradas na derivação."""
    if verdict.derivation is None:
        if verdict.status != 'Unknown':
            raise InternalInconsistency("Veredicto decidido sem derivação")
        return True
    _replay_no(verdict.derivation)
    return True


def _replay_no(no):
    regra, M, ctx = no.rule, no.subject, no.context
    if regra == 'Semisimple':
        ok = M.is_semisimple()
    elif regra in ('SatPrincipal', 'SatPrincipalVar'):
        seq = ctx['sequence']
        admissible_check(seq.inclusion, seq.projection, seq.sub_class, seq.quotient_class)
        ok = saturated_check(seq, ctx['side']).certified
        extremo = seq.sub if ctx['side'] == RIGHT else seq.quotient
        somando = ctx['summand']
        if ctx['form'] == 'augmented':
            ok = ok and M == direct_sum([seq.middle, somando]).module
        elif ctx['form'] == 'add':
            ok = ok and _mesmo_add(somando, extremo)
        else:
            ok = ok and somando.is_semisimple()
    elif regra == 'SumLemma':
        ok = saturated_sum_check(*ctx['sequences'], ctx['side']).certified
    elif regra == 'DimGap':
        dim_e, dim_p = endo_quotient(M).dim, period_space(M).dim
        ok = (dim_e, dim_p) == (no.witnesses['dim_E'], no.witnesses['dim_P']) and dim_e > dim_p
    else:
        raise InternalInconsistency(f"Regra desconhecida na derivação: {regra}")
    if not ok:
        raise InternalInconsistency(f"Replay falhou na regra {regra}")
    for filho in no.children:
        _replay_no(filho)


# --- EXPLORAÇÃO DA CLASSE C ---

def _mapas_entre_potencias(M, maximo, endos):
    """Geradores M^a → M^b: componente (i, j) igual a e ∈ {id} ∪ End(M), e a matriz de uns ⊗ id."""
    potencias = {m: power(M, m) for m in range(1, maximo + 1)}
    mapas = []
    for a in range(1, maximo + 1):
        for b in range(1, maximo + 1):
            origem, destino = potencias[a].module, potencias[b].module
            for k, e in enumerate(endos):
                for i in range(b):
                    for j in range(a):
                        unidade = [[1 if (r, c) == (i, j) else 0 for c in range(a)] for r in range(b)]
                        blocos = tuple(kron(_de_linhas(unidade), bloco) for bloco in e.blocks)
                        mapas.append((a, b, f"E[{i},{j}](e{k})", ModuleMap(origem, destino, blocos)))
            uns = _de_linhas([[1] * a for _ in range(b)])
            blocos = tuple(kron(uns, identidade) for identidade in identity_map(M).blocks)
            mapas.append((a, b, "uns", ModuleMap(origem, destino, blocos)))
    return potencias, mapas


def _de_linhas(linhas):
    return RatMatrix.from_rows(linhas, len(linhas[0]) if linhas else 0)


def class_c_explore(M, target, side=LEFT, budget=None, max_power=None, frontier_cap=None):
    """
    Busca em largura por construções da classe C (imagens, pré-imagens, somas e
    interseções a partir de 0 e M^m) até atingir o submódulo alvo de M^n.
    Unknown quando a fronteira se esgota ou o limite de visitas é atingido.
    """
    if side not in (LEFT, RIGHT):
        raise ValidationError(f"Lado desconhecido: {side}")
    if M.dim == 0 or target.ambient.dim % M.dim:
        raise ValidationError("O alvo não vive numa potência de M")
    n = target.ambient.dim // M.dim
    if target.ambient != power(M, n).module:
        raise ValidationError("O alvo não vive numa potência de M")
    orcamento = budget or Config.CLASS_C_FRONTIER_CAP
    if n * M.dim > orcamento:
        raise BudgetExceeded(f"n·dim M = {n * M.dim} acima do orçamento {orcamento}")
    if side == RIGHT:
        DM = dual_module(M)
        alvo_dual = SubmoduleHandle(dual_module(target.ambient), target.space.annihilator())
        return _explorar(DM, alvo_dual, n, max_power, frontier_cap)
    return _explorar(M, target, n, max_power, frontier_cap)


def _explorar(M, target, n, max_power=None, frontier_cap=None):
    maximo = max(n, max_power or Config.CLASS_C_MAX_POWER)
    limite = frontier_cap or Config.CLASS_C_FRONTIER_CAP
    endos = [identity_map(M)] + hom_space(M, M)
    potencias, mapas = _mapas_entre_potencias(M, maximo, endos)
    visitados = {}
    fila = deque()

    def registrar(m, sub, passo):
        chave = (m, sub.space)
        if chave in visitados:
            return False
        visitados[chave] = passo
        fila.append((m, sub))
        return m == n and sub.space == target.space

    for m in range(1, maximo + 1):
        modulo = potencias[m].module
        for sub, nome in ((zero_submodule(modulo), '0'), (full_submodule(modulo), f'M^{m}')):
            if registrar(m, sub, (nome, None)):
                return _rastro('Reached', visitados, (m, sub.space), n)
    while fila:
        if len(visitados) >= limite:
            break
        m, sub = fila.popleft()
        novos = []
        for a, b, nome, f in mapas:
            if a == m:
                novos.append((b, image_under(f, sub), (f"imagem por {nome}: M^{a}→M^{b}", (m, sub.space))))
            if b == m:
                novos.append((a, preimage_under(f, sub), (f"pré-imagem por {nome}: M^{a}→M^{b}", (m, sub.space))))
        for (k, espaco) in list(visitados):
            if k == m and espaco != sub.space:
                outro = SubmoduleHandle(sub.ambient, espaco)
                novos.append((m, sub + outro, ("soma", (m, sub.space))))
                novos.append((m, sub.intersect(outro), ("interseção", (m, sub.space))))
        for k, novo, passo in novos:
            if registrar(k, novo, passo):
                return _rastro('Reached', visitados, (k, novo.space), n)
    logger.info("Classe C: alvo não atingido após %s visitas", len(visitados))
    return ExplorationTrace('Unknown', (), len(visitados), n)


def _rastro(status, visitados, chave, n):
    passos = []
    while chave is not None:
        descricao, anterior = visitados[chave]
        passos.append(f"{descricao} (M^{chave[0]}, dim {chave[1].dim})")
        chave = anterior
    return ExplorationTrace(status, tuple(reversed(passos)), len(visitados), n)
