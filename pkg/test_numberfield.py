import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from app.errors import DivisionByZero, EmbeddingMissing, FieldMismatch, ReduciblePolynomial, ValidationError
from app.services.exactlin import RatMatrix, rat
from app.services.numberfield import FieldEmbedding, NumberField, as_rational

GAUSS = NumberField((1, 0, 1))
CUBICO = NumberField((-2, 0, 0, 1))

elementos_gauss = st.lists(st.integers(-4, 4), min_size=2, max_size=2).map(GAUSS.element)


def test_unidade_imaginaria():
    i = GAUSS.gen()
    assert i * i == GAUSS.scalar(-1)
    assert (1 + i) * (GAUSS.one() - i) == GAUSS.scalar(2)


def test_inverso_e_divisao():
    z = GAUSS.element([1, 1])
    assert z.inverse() == GAUSS.element(['1/2', '-1/2'])
    assert z / z == GAUSS.one()
    with pytest.raises(DivisionByZero):
        GAUSS.zero().inverse()


def test_divisor_de_zero_em_anel_redutivel():
    anel = NumberField((-1, 0, 1))
    with pytest.raises(DivisionByZero):
        anel.element([-1, 1]).inverse()


def test_representante_longo_reduzido():
    assert CUBICO.element([0, 0, 0, 1]) == CUBICO.scalar(2)


@pytest.mark.parametrize('coeficientes, erro', [
    ((0, 0, 1), ReduciblePolynomial),
    ((1, 0, 2), ValidationError),
    ((1,), ValidationError),
    ((1, 0.5, 1), ValidationError),
])
def test_polinomio_definidor_invalido(coeficientes, erro):
    with pytest.raises(erro):
        NumberField(coeficientes)


def test_matriz_de_multiplicacao():
    assert GAUSS.gen().mult_matrix() == RatMatrix.from_rows([[0, -1], [1, 0]])
    assert CUBICO.scalar(3).mult_matrix() == RatMatrix.identity(3).scale(rat(3))


def test_corpos_diferentes_nao_se_misturam():
    with pytest.raises(FieldMismatch):
        GAUSS.gen() + CUBICO.gen()


@given(elementos_gauss, elementos_gauss, elementos_gauss)
def test_axiomas_de_corpo(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(elementos_gauss)
def test_inverso_de_elemento_nao_nulo(a):
    assume(not a.is_zero())
    assert a * a.inverse() == GAUSS.one()


def test_mergulho_exige_raiz():
    assert FieldEmbedding(GAUSS, GAUSS, -GAUSS.gen())
    with pytest.raises(EmbeddingMissing):
        FieldEmbedding(GAUSS, GAUSS, GAUSS.one())


def test_nucleo_sobre_q_das_potencias_da_raiz_cubica():
    mergulho = FieldEmbedding.rational(CUBICO)
    x = CUBICO.gen()
    assert mergulho.independent([CUBICO.one(), x, x * x])

    elementos = [CUBICO.one(), CUBICO.scalar(2)]
    nucleo = mergulho.kernel_over_K(elementos)
    assert len(nucleo) == 1
    soma = CUBICO.zero()
    for k, l in zip(nucleo[0], elementos):
        soma = soma + mergulho.apply(k) * l
    assert soma.is_zero()


def test_nucleo_sobre_k_usa_a_estrutura_de_k():
    identidade = FieldEmbedding(GAUSS, GAUSS, GAUSS.gen())
    # 1 e i são Q-independentes mas K-dependentes
    assert len(identidade.kernel_over_K([GAUSS.one(), GAUSS.gen()])) == 1
    assert FieldEmbedding.rational(GAUSS).independent([GAUSS.one(), GAUSS.gen()])


def test_valor_racional():
    Q = NumberField.rationals()
    assert as_rational(Q.scalar('3/4')) == rat('3/4')
    with pytest.raises(FieldMismatch):
        as_rational(GAUSS.one())
