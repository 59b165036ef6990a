from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.errors import DimensionMismatch, ValidationError
from app.services.exactlin import (RatMatrix, Subspace, kernel, kron, left_inverse, outer, quotient_presentation,
                                   rank_factorization, rat, rat_to_str, right_inverse, solve)
from conftest import matrizes


def test_rat_aceita_inteiro_texto_e_fracao():
    assert rat(3) == rat('3')
    assert rat('6/4') == rat(Fraction(3, 2))
    assert rat_to_str(rat('-6/4')) == '-3/2'
    assert rat_to_str(rat(' 5 ')) == '5'


@pytest.mark.parametrize('valor', ['1/0', 'abc', True, 1.5])
def test_rat_recusa_valores_invalidos(valor):
    with pytest.raises(ValidationError):
        rat(valor)


def test_produto_com_formas_incompativeis():
    with pytest.raises(DimensionMismatch):
        RatMatrix.identity(2) @ RatMatrix.identity(3)


@given(matrizes())
def test_kernel_anula_e_posto_mais_nulidade(m):
    nucleo = kernel(m)
    for v in nucleo.vectors():
        assert not any(m.apply(v))
    assert m.rank() + nucleo.dim == m.cols


@given(matrizes())
def test_fatoracao_de_posto_reconstroi(m):
    colunas, linhas = rank_factorization(m)
    total = RatMatrix.zeros(m.rows, m.cols)
    for c, l in zip(colunas, linhas):
        total = total + outer(c, l)
    assert total == m
    assert len(colunas) == m.rank()


@given(matrizes(), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_solve_encontra_solucao_de_sistema_compativel(m, x):
    b = m.apply(tuple(rat(v) for v in x[:m.cols]))
    solucao = solve(m, b)
    assert solucao is not None
    assert m.apply(solucao) == b


def test_solve_sistema_incompativel():
    m = RatMatrix.from_rows([[1, 0], [1, 0]])
    assert solve(m, (rat(1), rat(2))) is None


@given(matrizes(max_linhas=3, max_colunas=4))
def test_anulador_duplo_e_soma_intersecao(m):
    U = Subspace.span(m.cols, m.entries)
    assert U.annihilator().annihilator() == U
    assert U.dim + U.annihilator().dim == m.cols
    V = Subspace.span(m.cols, [m.entries[0]])
    assert (U + V) == U
    assert U.intersect(V) == V


def test_imagem_e_preimagem():
    P = RatMatrix.from_rows([[1, 0, 0], [0, 1, 0]])
    eixo = Subspace.span(2, [[1, 0]])
    assert eixo.preimage(P) == Subspace.span(3, [[1, 0, 0], [0, 0, 1]])
    assert Subspace.full(3).image(P) == Subspace.full(2)


def test_apresentacao_de_quociente():
    rel = Subspace.span(3, [[1, -1, 0]])
    q = quotient_presentation(3, rel)
    assert q.dim == 2
    assert q.project((1, -1, 0)) == (0, 0)
    assert q.project(q.lift((rat(2), rat(5)))) == (2, 5)


def test_inversas_laterais():
    F = RatMatrix.from_rows([[1, 0], [0, 1], [1, 1]])
    assert left_inverse(F) @ F == RatMatrix.identity(2)
    P = F.transpose()
    assert P @ right_inverse(P) == RatMatrix.identity(2)
    with pytest.raises(DimensionMismatch):
        left_inverse(RatMatrix.from_rows([[1, 1]]))


def test_kron_com_identidade_e_bloco_diagonal():
    A = RatMatrix.from_rows([[1, 2], [3, 4]])
    K = kron(RatMatrix.identity(2), A)
    assert K.block(0, 2, 0, 2) == A
    assert K.block(2, 4, 2, 4) == A
    assert K.block(0, 2, 2, 4).is_zero()
