from app.services import corpus
from app.services.algebra import StructureAlgebra, nilpotency_index, radical_and_semisimplicity, trace_form
from app.services.exactlin import RatMatrix, Subspace, rat
from app.services.numberfield import NumberField


def test_radical_da_algebra_de_caminhos_a2():
    alg = corpus.a2().structure
    radical, semissimples = radical_and_semisimplicity(alg)
    assert not semissimples
    assert radical.dim == 1
    indice_a = alg.names.index('a')
    assert radical == Subspace.span(3, [alg.basis_vector(indice_a)])
    assert nilpotency_index(alg, radical) == 2


def test_corpo_de_numeros_e_semissimples():
    alg = StructureAlgebra.from_number_field(NumberField((1, 0, 1)))
    assert alg.names == ('1', 'x^1')
    assert trace_form(alg) == RatMatrix.from_rows([[2, 0], [0, -2]])
    radical, semissimples = radical_and_semisimplicity(alg)
    assert semissimples
    assert nilpotency_index(alg, radical) == 1


def test_algebra_de_matrizes():
    alg = StructureAlgebra.matrix_algebra(2)
    assert alg.dim == 4
    assert alg.is_associative()
    assert alg.unit == (rat(1), rat(0), rat(0), rat(1))
    assert radical_and_semisimplicity(alg)[1]


def test_unidade_da_algebra_de_caminhos():
    alg = corpus.a3_zero()
    assert alg.structure.unit == alg.unit


def test_algebra_sem_unidade():
    # b*b = 0: ideal nulo de dimensão 1
    alg = StructureAlgebra.from_table(['b'], [[[0]]])
    assert alg.unit is None
    assert not radical_and_semisimplicity(alg)[1]


def test_tabela_nao_associativa():
    # b1*b1 = b2, demais produtos nulos exceto b2*b1 = b1
    alg = StructureAlgebra.from_table(['b1', 'b2'], [[[0, 1], [0, 0]], [[1, 0], [0, 0]]])
    assert not alg.is_associative()
