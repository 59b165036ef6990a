from itertools import combinations

import pytest

from app.errors import NotExact, SupportViolation, ValidationError
from app.services import corpus
from app.services.audit import percorrer, regras_usadas
from app.services.periods import endo_quotient, period_space
from app.services.quivalg import (SubmoduleHandle, build_algebra, core_submodule, direct_sum, dual_module,
                                  full_submodule, identity_map, image_under, power_map, projective, simple, spin,
                                  trace_quotient, validate_module, zero_submodule)
from app.services.yoga import (LEFT, RIGHT, WeightPartition, admissible_check, certify_principal, class_c_explore,
                               dual_sequence, replay, saturated_check, saturated_sum_check, sequence_from_submodule,
                               sub_only_sequence, universal_extension, universal_lift, weight_filtration)


def _fatias_do_corpus():
    """Sequência do topo de peso de cada módulo do corpus com ao menos dois pesos."""
    fatias = []
    for alg, nome, M in corpus.corpus_modules():
        pesos = corpus.weights_for(alg)
        niveis = sorted({pesos.weight_of(v) for v in M.support()})
        if len(niveis) < 2:
            continue
        A0, A1 = pesos.below(niveis[-1]), pesos.vertices_of_weight(niveis[-1])
        fatias.append((f"{alg}/{nome}", sequence_from_submodule(core_submodule(M, A0), A0, A1)))
    return fatias


FATIAS = _fatias_do_corpus()
DOIS_PESOS = [(alg, nome, M) for alg, nome, M in corpus.corpus_modules()
              if len(set(corpus.WEIGHTS[alg].values())) == 2]


def _submodulos(X):
    """0, X e o spin de cada vetor da base."""
    unitarios = [[1 if j == i else 0 for j in range(X.dim)] for i in range(X.dim)]
    return [zero_submodule(X), full_submodule(X)] + [spin(X, [e]) for e in unitarios]


@pytest.fixture
def seq_soco(a2_modules):
    return sequence_from_submodule(core_submodule(a2_modules['P1'], ['2']), ['2'], ['1'])


@pytest.fixture
def garfo():
    """1 → 2 e 1 → 3, com 2 e 3 no peso de baixo."""
    A = build_algebra(['1', '2', '3'], [('a', '1', '2'), ('c', '1', '3')])
    return A, WeightPartition.from_weights({'1': 0, '2': -1, '3': -1})


@pytest.fixture
def garfo_com_simples(garfo):
    """(1 → 2) ⊕ S2 ⊕ S3: o quociente suportado embaixo tem os dois simples, o soco de cima só S2."""
    A, pesos = garfo
    ponta = validate_module(A, {'1': 1, '2': 1}, {'a': [[1]]})
    return direct_sum([ponta, simple(A, '2'), simple(A, '3')]).module, pesos


def test_particao_por_pesos(a2, a2_weights):
    assert a2_weights.weights() == [-1, 0]
    assert a2_weights.below(0) == frozenset({'2'})
    assert a2_weights.negated().weights() == [0, 1]
    assert a2_weights.validate_for(a2) == [{'weights': [-1, 0], 'simple_pairs': 1}]
    assert WeightPartition.from_dict(a2_weights.to_json()) == a2_weights


def test_particao_incompleta(a2):
    with pytest.raises(ValidationError):
        WeightPartition.from_weights({'1': 0}).validate_for(a2)
    with pytest.raises(ValidationError):
        WeightPartition.from_dict({'classes': [{'weight': 0, 'vertices': ['1']}, {'weight': 0, 'vertices': ['2']}]})


def test_filtracao_por_pesos(a2_modules, a2_weights):
    filtracao = weight_filtration(a2_modules['P1'], a2_weights)
    assert [(w, sub.vertex_dims) for w, sub in filtracao] == [(-1, (0, 1)), (0, (1, 1))]


def test_sequencia_do_soco(seq_soco):
    assert seq_soco.to_dict() == {
        'sub_dims': [0, 1],
        'middle_dims': [1, 1],
        'quotient_dims': [1, 0],
        'sub_class': ['2'],
        'quotient_class': ['1'],
        'orthogonality': {'simple_pairs': 1, 'hom_M0_M1': 0, 'hom_M1_M0': 0},
    }
    dual = dual_sequence(seq_soco)
    assert (dual.sub_class, dual.quotient_class) == (frozenset({'1'}), frozenset({'2'}))
    assert dual.sub.vertex_dims == (1, 0)


def test_sequencias_nao_admissiveis(a2_modules):
    P1 = a2_modules['P1']
    with pytest.raises(SupportViolation):
        sequence_from_submodule(core_submodule(P1, ['2']), ['1'], ['2'])
    with pytest.raises(NotExact):
        admissible_check(identity_map(P1), identity_map(P1), ['2'], ['1'])


@pytest.mark.parametrize('lado', [LEFT, RIGHT])
def test_sequencia_do_soco_e_saturada(seq_soco, lado):
    veredito = saturated_check(seq_soco, lado)
    assert veredito.certified
    assert veredito.checks['restriction_surjective']
    assert veredito.checks['end_semisimple']


def test_saturacao_com_lado_invalido(seq_soco):
    with pytest.raises(ValidationError):
        saturated_check(seq_soco, 'centro')


def test_sequencia_trivial_e_saturada(a2_modules):
    seq = sub_only_sequence(a2_modules['S2'], ['2'], ['1'])
    assert saturated_check(seq, RIGHT).checks == {'trivial': True}
    soma = saturated_sum_check(sequence_from_submodule(core_submodule(a2_modules['P1'], ['2']), ['2'], ['1']),
                               seq, RIGHT)
    assert set(soma.checks) == {'R1', 'R2', 'R3', 'premises'}


def test_saturacao_desconhecida_sem_restricao_sobrejetiva(a2_modules):
    M = a2_modules['P1+S1']
    seq = sequence_from_submodule(core_submodule(M, ['2']), ['2'], ['1'])
    assert seq.quotient.vertex_dims == (2, 0)
    veredito = saturated_check(seq, RIGHT)
    assert veredito.status == 'Unknown'
    assert not veredito.checks['restriction_surjective']
    assert veredito.checks['end_semisimple']
    assert veredito.checks['end_dims'] == [3, 4]


def test_soma_desconhecida_quando_hom_nao_levanta(a2_modules, seq_soco):
    # Hom(S2, S2) ≠ 0 não vem de Hom(P1, S2) = 0
    seq_s2 = sub_only_sequence(a2_modules['S2'], ['2'], ['1'])
    veredito = saturated_sum_check(seq_s2, seq_soco, LEFT)
    assert veredito.checks == {'L1': False, 'L2': False, 'L3': True, 'premises': True}
    assert veredito.status == 'Unknown'


def _sem_lado(checks):
    return {('orthogonal' if k.startswith('hom_') else k): v for k, v in checks.items()}


@pytest.mark.parametrize('seq', [s for _, s in FATIAS], ids=[n for n, _ in FATIAS])
def test_saturacao_no_dual_troca_os_lados(seq):
    dual = dual_sequence(seq)
    for lado, espelho in ((RIGHT, LEFT), (LEFT, RIGHT)):
        original, refletido = saturated_check(seq, lado), saturated_check(dual, espelho)
        assert original.status == refletido.status
        assert _sem_lado(original.checks) == _sem_lado(refletido.checks)


def test_levantamento_universal(seq_soco):
    tudo = universal_lift(seq_soco, full_submodule(seq_soco.quotient))
    assert tudo == full_submodule(seq_soco.middle)
    nada = universal_lift(seq_soco, zero_submodule(seq_soco.quotient))
    assert nada.is_zero()
    with pytest.raises(ValidationError):
        universal_lift(seq_soco, full_submodule(seq_soco.sub))


def test_extensao_universal(seq_soco):
    assert universal_extension(seq_soco, zero_submodule(seq_soco.sub)).is_zero()
    maior = universal_extension(seq_soco, full_submodule(seq_soco.sub))
    assert maior == full_submodule(seq_soco.middle)
    with pytest.raises(ValidationError):
        universal_extension(seq_soco, full_submodule(seq_soco.quotient))


def test_extensao_essencial_em_a3():
    M = corpus.modules_of('A3')['P1']
    seq = sequence_from_submodule(core_submodule(M, ['2', '3']), ['2', '3'], ['1'])
    assert seq.quotient.vertex_dims == (1, 0, 0)
    assert trace_quotient(M, ['1'])[1].module.dim == 0
    assert universal_lift(seq, full_submodule(seq.quotient)) == full_submodule(M)


def test_sequencia_cindida(a2_modules):
    M = a2_modules['S1+S2']
    seq = sequence_from_submodule(core_submodule(M, ['2']), ['2'], ['1'])
    somando_de_cima = core_submodule(M, ['1'])
    assert universal_lift(seq, full_submodule(seq.quotient)).space == somando_de_cima.space
    assert universal_extension(seq, zero_submodule(seq.sub)).space == somando_de_cima.space
    assert universal_extension(seq, full_submodule(seq.sub)).space == full_submodule(M).space


def test_varredura_tem_sequencias_suficientes():
    assert len(FATIAS) >= 10


@pytest.mark.parametrize('seq', [s for _, s in FATIAS], ids=[n for n, _ in FATIAS])
def test_universais_vencem_a_busca(seq):
    for alvo in _submodulos(seq.quotient):
        U = universal_lift(seq, alvo)
        assert image_under(seq.projection, U).space == alvo.space
    for alvo in _submodulos(seq.sub):
        N = universal_extension(seq, alvo)
        assert N.intersect(seq.sub_in_middle()).space == image_under(seq.inclusion, alvo).space


@pytest.mark.parametrize('seq', [s for _, s in FATIAS], ids=[n for n, _ in FATIAS])
def test_levantamentos_somam_e_extensoes_intersectam(seq):
    def levantar(alvo):
        return universal_lift(seq, alvo, search=False)

    def estender(alvo):
        return universal_extension(seq, alvo, search=False)

    for a, b in combinations(_submodulos(seq.quotient), 2):
        assert levantar(a + b).space == (levantar(a) + levantar(b)).space
    for a, b in combinations(_submodulos(seq.sub), 2):
        assert estender(a.intersect(b)).space == estender(a).intersect(estender(b)).space


def test_p1_refutado_pela_lacuna(a2_modules, a2_weights):
    veredito = certify_principal(a2_modules['P1'], a2_weights)
    assert veredito.status == 'Refuted'
    assert veredito.gap == (4, 3)
    assert veredito.to_dict()['gap'] == {'dim_E': 4, 'dim_P': 3}
    assert len(veredito.notes) == 2
    assert veredito.derivation.rule == 'DimGap'
    assert replay(veredito)


def test_p1_mais_s2_certificado(a2_modules, a2_weights):
    M = a2_modules['P1+S2']
    veredito = certify_principal(M, a2_weights)
    assert veredito.status == 'Certified'
    assert veredito.module == M
    assert veredito.derivation.rule == 'SatPrincipal'
    assert veredito.derivation.witnesses['form'] == 'add'
    assert 'Semisimple' in regras_usadas(veredito.derivation)
    assert len(list(percorrer(veredito.derivation))) == 3
    assert replay(veredito)


def test_semissimples_certificado_direto(a2_modules, a2_weights):
    veredito = certify_principal(a2_modules['S1+S2'], a2_weights)
    assert veredito.status == 'Certified'
    assert veredito.to_dict()['derivation']['rule'] == 'Semisimple'


def test_p1_mais_s1_certificado_pelo_lado_esquerdo(a2_modules, a2_weights):
    M = a2_modules['P1+S1']
    veredito = certify_principal(M, a2_weights)
    raiz = veredito.derivation
    assert (veredito.status, veredito.module) == ('Certified', M)
    assert (raiz.rule, raiz.witnesses['side'], raiz.witnesses['form']) == ('SatPrincipal', LEFT, 'add')
    assert raiz.witnesses['summand_dims'] == [1, 0]
    assert [filho.rule for filho in raiz.children] == ['Semisimple', 'Semisimple']
    assert replay(veredito)


def test_variante_pelo_lado_direito(garfo_com_simples):
    M, pesos = garfo_com_simples
    veredito = certify_principal(M, pesos)
    raiz = veredito.derivation
    assert (veredito.status, veredito.module) == ('Certified', M)
    assert (raiz.rule, raiz.witnesses['side'], raiz.witnesses['form']) == ('SatPrincipalVar', RIGHT, 'generator')
    assert raiz.witnesses['summand_dims'] == [0, 1, 1]
    assert [filho.rule for filho in raiz.children] == ['Semisimple', 'Semisimple', 'SumLemma']
    soma = raiz.children[-1]
    assert soma.witnesses['checks'] == {'R1': True, 'R2': True, 'R3': True, 'premises': True}
    assert soma.witnesses['second']['quotient'] == [0, 0, 0]
    assert replay(veredito)
    assert endo_quotient(M).dim == period_space(M).dim == 4


def test_variante_pelo_lado_esquerdo():
    A = corpus.alternating()
    M = direct_sum([projective(A, '1'), simple(A, '1'), simple(A, '3')]).module
    veredito = certify_principal(M, corpus.weights_for('alternating'))
    raiz = veredito.derivation
    assert (veredito.status, veredito.module) == ('Certified', M)
    assert (raiz.rule, raiz.witnesses['side'], raiz.witnesses['form']) == ('SatPrincipalVar', LEFT, 'generator')
    assert raiz.witnesses['summand_dims'] == [1, 0, 1]
    assert raiz.witnesses['saturation']['hom_from_quotient_class_zero']
    assert regras_usadas(raiz) == ['SatPrincipalVar', 'Semisimple', 'SumLemma']
    assert set(raiz.children[-1].witnesses['checks']) == {'L1', 'L2', 'L3', 'premises'}
    assert replay(veredito)
    assert endo_quotient(M).dim == period_space(M).dim == 4


def test_dual_da_variante_direita_passa_pelo_lado_esquerdo(garfo_com_simples):
    M, pesos = garfo_com_simples
    veredito = certify_principal(dual_module(M), pesos.negated())
    raiz = veredito.derivation
    assert veredito.status == 'Certified'
    assert (raiz.rule, raiz.witnesses['side'], raiz.witnesses['form']) == ('SatPrincipalVar', LEFT, 'generator')
    assert len(list(percorrer(raiz))) == 4
    assert replay(veredito)


@pytest.mark.parametrize('alg, nome, M', DOIS_PESOS, ids=[f"{alg}/{nome}" for alg, nome, _ in DOIS_PESOS])
def test_certificacao_do_dual_concorda(alg, nome, M):
    pesos = corpus.weights_for(alg)
    original = certify_principal(M, pesos)
    dual = certify_principal(dual_module(M), pesos.negated())
    assert (dual.status, dual.gap) == (original.status, original.gap)
    assert replay(dual)


@pytest.mark.parametrize('alg, nome', [(alg, nome) for alg, nome, _ in corpus.corpus_modules()])
def test_veredicto_do_corpus_e_reproduzivel(alg, nome):
    veredito = certify_principal(corpus.modules_of(alg)[nome], corpus.weights_for(alg))
    assert veredito.status in ('Certified', 'Refuted', 'Unknown')
    assert replay(veredito)
    if veredito.status == 'Refuted':
        assert veredito.gap[0] > veredito.gap[1]


def test_exploracao_atinge_a_diagonal(a2_modules):
    M = a2_modules['P1+S2']
    diagonal_map = power_map(M, [[1], [1]])
    diagonal = image_under(diagonal_map, full_submodule(diagonal_map.source))
    rastro = class_c_explore(M, diagonal)
    assert rastro.status == 'Reached'
    assert rastro.power == 2
    assert rastro.steps
    assert class_c_explore(M, diagonal, side=RIGHT).status == 'Reached'


def test_exploracao_nao_atinge_o_soco(a2_modules):
    P1 = a2_modules['P1']
    rastro = class_c_explore(P1, core_submodule(P1, ['2']))
    assert rastro.status == 'Unknown'
    assert rastro.to_dict()['steps'] == []
    assert rastro.visited > 0


def test_exploracao_com_alvo_fora_das_potencias(a2_modules):
    S2 = a2_modules['S2']
    with pytest.raises(ValidationError):
        class_c_explore(a2_modules['P1'], SubmoduleHandle(S2, full_submodule(S2).space))
    with pytest.raises(ValidationError):
        class_c_explore(a2_modules['P1'], full_submodule(a2_modules['P1']), side='meio')
