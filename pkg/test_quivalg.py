import pytest

from app.errors import AlgebraMismatch, MalformedRelation, NotASubmodule, NotFiniteDimensional, RelationViolated, \
    ValidationError
from app.services import corpus
from app.services.exactlin import RatMatrix, Subspace
from app.services.quivalg import ModuleMap, SubmoduleHandle, build_algebra, core_submodule, direct_sum, dual_module, \
    end_algebra, full_submodule, hom_space, power, power_map, projective, quotient_module, simple, spin, \
    split_retraction, split_section, submodule_as_module, trace_quotient, trace_submodule, validate_module


@pytest.mark.parametrize('nome, dimensao', [
    ('A2', 3), ('A3', 6), ('A3_zero', 5), ('square', 9), ('star', 7), ('alternating', 5),
])
def test_dimensao_das_algebras_do_corpus(nome, dimensao):
    assert corpus.ALGEBRAS[nome]().dim == dimensao


def test_base_de_caminhos_a2():
    alg = corpus.a2()
    assert [p.name for p in alg.path_basis] == ['e_1', 'e_2', 'a']


def test_projetivos():
    assert projective(corpus.a2(), '1').vertex_dims == (1, 1)
    assert projective(corpus.a3_zero(), '1').vertex_dims == (1, 1, 0)
    # ab = cd: um só caminho longo de 1 a 4
    assert projective(corpus.square(), '1').vertex_dims == (1, 1, 1, 1)


def test_loop_sem_relacao_nao_tem_dimensao_finita():
    with pytest.raises(NotFiniteDimensional):
        build_algebra(['1'], [('l', '1', '1')])


def test_loop_com_relacao_quadratica():
    alg = build_algebra(['1'], [('l', '1', '1')], [[(1, ('l', 'l'))]])
    assert alg.dim == 2


@pytest.mark.parametrize('relacao', [
    [(1, ('y', 'x'))],
    [(1, ('x',))],
    [(1, ('x', 'z'))],
])
def test_relacoes_malformadas(relacao):
    with pytest.raises(MalformedRelation):
        build_algebra(['1', '2', '3'], [('x', '1', '2'), ('y', '2', '3')], [relacao])


def test_modulo_que_viola_relacao():
    with pytest.raises(RelationViolated):
        validate_module(corpus.a3_zero(), {'1': 1, '2': 1, '3': 1}, {'x': [[1]], 'y': [[1]]})


def test_modulo_com_forma_errada():
    with pytest.raises(ValidationError):
        validate_module(corpus.a2(), {'1': 1, '2': 2}, {'a': [[1]]})
    with pytest.raises(ValidationError):
        validate_module(corpus.a2(), {'3': 1})


def test_espacos_de_hom(a2_modules):
    P1, S1, S2 = a2_modules['P1'], a2_modules['S1'], a2_modules['S2']
    assert len(hom_space(P1, P1)) == 1
    assert len(hom_space(S2, P1)) == 1
    assert len(hom_space(P1, S2)) == 0
    assert len(hom_space(P1, S1)) == 1
    with pytest.raises(AlgebraMismatch):
        hom_space(P1, simple(corpus.a3(), '1'))


def test_algebra_de_endomorfismos(a2_modules):
    End = end_algebra(a2_modules['P1+S2'])
    assert End.dim == 3
    assert End.algebra.is_associative()
    assert End.algebra.unit is not None


def test_morfismo_precisa_comutar(a2_modules):
    P1 = a2_modules['P1']
    with pytest.raises(ValidationError):
        ModuleMap(P1, P1, (RatMatrix.identity(1), RatMatrix.zeros(1, 1)))


def test_submodulos_de_p1(a2_modules):
    P1 = a2_modules['P1']
    soco = core_submodule(P1, ['2'])
    assert soco.vertex_dims == (0, 1)
    assert trace_submodule(P1, ['2']) == soco
    assert spin(P1, [[1, 0]]) == full_submodule(P1)
    with pytest.raises(NotASubmodule):
        SubmoduleHandle(P1, Subspace.span(2, [[1, 0]]))

    sub, inclusao = submodule_as_module(soco)
    assert sub == a2_modules['S2']
    assert inclusao.is_injective()
    assert quotient_module(soco).module == a2_modules['S1']


def test_quociente_pelo_traco(a2_modules):
    U, quociente = trace_quotient(a2_modules['P1'], ['1'])
    assert U == full_submodule(a2_modules['P1'])
    assert quociente.module.dim == 0


def test_sequencia_do_soco_nao_cinde(a2_modules):
    soco = core_submodule(a2_modules['P1'], ['2'])
    _, inclusao = submodule_as_module(soco)
    assert split_retraction(inclusao) is None
    assert split_section(quotient_module(soco).projection) is None


def test_soma_direta_cinde(a2_modules):
    soma = direct_sum([a2_modules['P1'], a2_modules['S2']])
    assert soma.module.vertex_dims == (1, 2)
    retracao = split_retraction(soma.injections[0])
    assert retracao is not None
    assert retracao.compose(soma.injections[0]).matrix == RatMatrix.identity(2)
    assert soma.split(soma.combine([(1, 2), (3,)])) == [(1, 2), (3,)]


def test_mapa_diagonal_entre_potencias(a2_modules):
    P1 = a2_modules['P1']
    diagonal = power_map(P1, [[1], [1]])
    assert diagonal.target == power(P1, 2).module
    assert diagonal.is_injective()
    assert power(P1, 0).module.dim == 0


def test_dual_transpoe_as_flechas():
    M = corpus.modules_of('star')['three_lines']
    D = dual_module(M)
    assert D.algebra is corpus.star().opposite
    assert D.vertex_dims == M.vertex_dims
    assert D.arrow_map('c') == M.arrow_map('c').transpose()
