import os

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from app import create_app
from app.services import corpus
from app.services.exactlin import RatMatrix

settings.register_profile('motor', deadline=None, max_examples=40)
settings.load_profile('motor')

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'fixtures')


@st.composite
def matrizes(draw, max_linhas=4, max_colunas=4, valores=st.integers(-3, 3)):
    linhas = draw(st.integers(1, max_linhas))
    colunas = draw(st.integers(1, max_colunas))
    entradas = draw(st.lists(st.lists(valores, min_size=colunas, max_size=colunas),
                             min_size=linhas, max_size=linhas))
    return RatMatrix.from_rows(entradas, colunas)


@pytest.fixture
def app():
    return create_app()


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def fixture_path():
    return lambda nome: os.path.join(FIXTURES, nome)


@pytest.fixture
def a2():
    return corpus.a2()


@pytest.fixture
def a2_modules():
    return corpus.modules_of('A2')


@pytest.fixture
def a2_weights():
    return corpus.weights_for('A2')
