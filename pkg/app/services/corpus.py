"""
Corpus de álgebras e módulos usado nos testes, nas fixtures e na varredura.
As álgebras são memorizadas: módulos de um mesmo quiver compartilham a instância.
"""
from functools import cache

from app.services.quivalg import build_algebra, direct_sum, projective, simple, validate_module
from app.services.yoga import WeightPartition


# --- ÁLGEBRAS ---

@cache
def a2():
    """1 → 2."""
    return build_algebra(['1', '2'], [('a', '1', '2')])


@cache
def a3():
    """1 → 2 → 3, sem relações."""
    return build_algebra(['1', '2', '3'], [('a', '1', '2'), ('b', '2', '3')])


@cache
def a3_zero():
    """1 →x 2 →y 3 com yx = 0."""
    return build_algebra(['1', '2', '3'], [('x', '1', '2'), ('y', '2', '3')], [[(1, ('x', 'y'))]])


@cache
def square():
    """Quadrado comutativo 1 → 2 → 4, 1 → 3 → 4 com ba = dc."""
    return build_algebra(['1', '2', '3', '4'],
                         [('a', '1', '2'), ('b', '2', '4'), ('c', '1', '3'), ('d', '3', '4')],
                         [[(1, ('a', 'b')), (-1, ('c', 'd'))]])


@cache
def star():
    """Três pontas apontando para o centro 0."""
    return build_algebra(['0', '1', '2', '3'], [('a', '1', '0'), ('b', '2', '0'), ('c', '3', '0')])


@cache
def alternating():
    """1 → 2 ← 3."""
    return build_algebra(['1', '2', '3'], [('a', '1', '2'), ('b', '3', '2')])


ALGEBRAS = {
    'A2': a2,
    'A3': a3,
    'A3_zero': a3_zero,
    'square': square,
    'star': star,
    'alternating': alternating,
}

# Pesos não crescentes ao longo das flechas
WEIGHTS = {
    'A2': {'1': 0, '2': -1},
    'A3': {'1': 0, '2': -1, '3': -2},
    'A3_zero': {'1': 0, '2': -1, '3': -2},
    'square': {'1': 0, '2': -1, '3': -1, '4': -2},
    'star': {'1': 0, '2': 0, '3': 0, '0': -1},
    'alternating': {'1': 0, '3': 0, '2': -1},
}


def weights_for(nome):
    return WeightPartition.from_weights(WEIGHTS[nome])


def _soma(*modulos):
    return direct_sum(modulos).module


# --- MÓDULOS ---

def _a2():
    A = a2()
    P1, S1, S2 = projective(A, '1'), simple(A, '1'), simple(A, '2')
    return {
        'S1': S1,
        'S2': S2,
        'P1': P1,
        'S1+S2': _soma(S1, S2),
        'P1+S2': _soma(P1, S2),
        'P1+S1': _soma(P1, S1),
        'P1^2': _soma(P1, P1),
    }


def _a3():
    A = a3()
    P1, P2 = projective(A, '1'), projective(A, '2')
    return {
        'S2': simple(A, '2'),
        'P1': P1,
        'P2': P2,
        'I2': validate_module(A, {'1': 1, '2': 1}, {'a': [[1]]}),
        'P1+S3': _soma(P1, simple(A, '3')),
        'P2+S2': _soma(P2, simple(A, '2')),
    }


def _a3_zero():
    A = a3_zero()
    P1, P2 = projective(A, '1'), projective(A, '2')
    return {
        'P1': P1,
        'P2': P2,
        'P1+P2': _soma(P1, P2),
        'zigzag': validate_module(A, {'1': 1, '2': 2, '3': 1}, {'x': [[1], [0]], 'y': [[0, 1]]}),
    }


def _square():
    A = square()
    P1 = projective(A, '1')
    return {
        'P1': P1,
        'S4': simple(A, '4'),
        'P1+S4': _soma(P1, simple(A, '4')),
        'top': validate_module(A, {'1': 1, '2': 1, '3': 1}, {'a': [[1]], 'c': [[1]]}),
    }


def _star():
    A = star()
    return {
        'three_lines': validate_module(A, {'0': 2, '1': 1, '2': 1, '3': 1},
                                       {'a': [[1], [0]], 'b': [[0], [1]], 'c': [[1], [1]]}),
        'S0': simple(A, '0'),
        'P1': projective(A, '1'),
    }


def _alternating():
    A = alternating()
    P1, P3 = projective(A, '1'), projective(A, '3')
    return {
        'full': validate_module(A, {'1': 1, '2': 1, '3': 1}, {'a': [[1]], 'b': [[1]]}),
        'P1': P1,
        'P1+P3': _soma(P1, P3),
    }


_MODULOS = {
    'A2': _a2,
    'A3': _a3,
    'A3_zero': _a3_zero,
    'square': _square,
    'star': _star,
    'alternating': _alternating,
}


def modules_of(nome_algebra):
    return _MODULOS[nome_algebra]()


def corpus_modules():
    """[(álgebra, nome, módulo)] em ordem estável."""
    return [(alg, nome, M) for alg, fabrica in _MODULOS.items() for nome, M in fabrica().items()]
