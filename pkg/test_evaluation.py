import pytest

from app.errors import AlgebraMismatch, NotAUnit, ValidationError
from app.models import tensor_from_vector
from app.services import corpus
from app.services.evaluation import ComparisonPoint, additivity_check, eval_and_conjecture, evaluate
from app.services.exactlin import RatMatrix
from app.services.numberfield import FieldEmbedding, NumberField
from app.services.periods import induced_span_map
from app.services.quivalg import core_submodule, direct_sum, quotient_module, submodule_as_module

CUBICO = NumberField((-2, 0, 0, 1))


@pytest.fixture
def u_cubico(a2):
    return ComparisonPoint.from_mapping(a2, FieldEmbedding.rational(CUBICO),
                                        {'e_1': ['1'], 'e_2': ['0', '1'], 'a': ['0', '0', '1']})


def test_unidade_racional_nao_e_injetiva(a2, a2_modules):
    relatorio = eval_and_conjecture(a2_modules['P1'], ComparisonPoint.identity(a2))
    assert relatorio.space.dim == 3
    assert not relatorio.injective
    assert len(relatorio.conjecture_kernel) == 2
    assert len(relatorio.realizations) == 1


def test_ponto_cubico_separa_os_periodos_de_p1(a2_modules, u_cubico):
    relatorio = eval_and_conjecture(a2_modules['P1'], u_cubico)
    assert relatorio.injective
    assert relatorio.ambient_kernel_dim == 1
    dados = relatorio.to_dict()
    assert dados['dim_P'] == 3
    assert dados['relation_dim'] == 1
    valores = {tuple(v['coefficients']) for v in dados['values']}
    assert valores == {('1', '0', '0'), ('0', '1', '0'), ('0', '0', '1')}


def test_relacao_vale_zero(a2_modules, u_cubico):
    assert evaluate(a2_modules['P1'], u_cubico, RatMatrix.from_rows([[0, 0], [1, 0]])).is_zero()
    assert evaluate(a2_modules['P1'], u_cubico, RatMatrix.from_rows([[0, 0], [0, 1]])) == CUBICO.gen()


def test_ponto_nao_invertivel(a2, a2_modules):
    Q = NumberField.rationals()
    nilpotente = ComparisonPoint.from_mapping(a2, FieldEmbedding.rational(Q), {'a': ['1']})
    assert not nilpotente.is_unit()
    with pytest.raises(NotAUnit):
        eval_and_conjecture(a2_modules['P1'], nilpotente)


def test_ponto_de_outra_algebra(a2):
    M = corpus.modules_of('A3')['P1']
    with pytest.raises(AlgebraMismatch):
        eval_and_conjecture(M, ComparisonPoint.identity(a2))


def test_caminho_desconhecido(a2):
    with pytest.raises(ValidationError):
        ComparisonPoint.from_mapping(a2, FieldEmbedding.rational(CUBICO), {'b': ['1']})


def test_aditividade_na_soma_direta(a2_modules, u_cubico):
    resultado = additivity_check(u_cubico, [
        (a2_modules['P1'], (0, 1), (0, 1)),
        (a2_modules['S2'], (1,), (1,)),
    ])
    assert resultado['holds']
    assert resultado['lhs'] == CUBICO.gen() + CUBICO.gen()
    with pytest.raises(ValidationError):
        additivity_check(u_cubico, [])


def test_ponto_serializado(u_cubico):
    dados = u_cubico.to_json()
    assert dados['field'] == [-2, 0, 0, 1]
    assert dados['u']['a'] == ['0', '0', '1']


@pytest.mark.parametrize('mapa', ['inclusao_do_soco', 'projecao_no_topo', 'injecao_na_soma'])
def test_avaliacao_comuta_com_mapas_induzidos(a2_modules, u_cubico, mapa):
    P1 = a2_modules['P1']
    soco = core_submodule(P1, ['2'])
    f = {
        'inclusao_do_soco': lambda: submodule_as_module(soco)[1],
        'projecao_no_topo': lambda: quotient_module(soco).projection,
        'injecao_na_soma': lambda: direct_sum([P1, a2_modules['S2']]).injections[0],
    }[mapa]()
    induzido = induced_span_map(f)
    origem, destino = (f.source, f.target) if induzido.kind == 'mono' else (f.target, f.source)
    for i in range(induzido.source.dim):
        T = induzido.source.basis_tensor(i)
        assert evaluate(origem, u_cubico, T) == evaluate(destino, u_cubico, induzido.apply(T))
    for vetor in induzido.source.relations.vectors():
        relacao = induzido.apply(tensor_from_vector(origem.dim, vetor))
        assert evaluate(destino, u_cubico, relacao).is_zero()
