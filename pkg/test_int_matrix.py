import random
from itertools import combinations
from math import gcd

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_smith_normal_form

from int_matrix import identity, invariant_factors, mat_mul, rank, smith_normal_form

SQUARE = [
    [[2, 4, 4], [-6, 6, 12], [10, -4, -16]],
    [[7, 0, 0], [0, 7, 0], [1, 1, 3]],
    [[0, 0, 0], [0, 3, 0], [0, 0, 0]],
    [[12, 18], [8, 6]],
    [[1, 2, 3], [4, 5, 6], [7, 8, 9]],
]

GAMMA0_RELATIONS = [[7, 0, 0], [0, 7, 0], [0, 0, 7], [1, 1, 3], [3, 3, 1]]


def _diagonal(d):
    return [d[i][i] for i in range(min(len(d), len(d[0])))]


@pytest.mark.parametrize("m", SQUARE + [GAMMA0_RELATIONS, [[2, 4, 6]], [[0, 5], [0, 10], [0, 0]]])
def test_transforms_reproduce_diagonal(m):
    left, diag, right = smith_normal_form(m)
    assert mat_mul(mat_mul(left, m), right) == diag
    assert abs(Matrix(left).det()) == 1
    assert abs(Matrix(right).det()) == 1
    values = _diagonal(diag)
    assert all(v >= 0 for v in values)
    nonzero = [v for v in values if v]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    for i, row in enumerate(diag):
        for j, v in enumerate(row):
            if i != j:
                assert v == 0


@pytest.mark.parametrize("m", SQUARE)
def test_matches_sympy(m):
    """Сверка диагонали с независимой реализацией sympy"""
    expected = sympy_smith_normal_form(Matrix(m), domain=ZZ)
    ours = _diagonal(smith_normal_form(m)[1])
    theirs = [abs(expected[i, i]) for i in range(len(ours))]
    assert sorted(ours) == sorted(theirs)


def test_known_invariants():
    assert invariant_factors(SQUARE[0]) == [2, 6, 12]
    assert invariant_factors(GAMMA0_RELATIONS) == [1, 1, 7]
    assert invariant_factors([[2, 4, 6]]) == [2]


def test_rank_and_identity():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank(identity(3)) == 3
    assert mat_mul(identity(2), [[3, 4], [5, 6]]) == [[3, 4], [5, 6]]


def test_empty_matrix_rejected():
    with pytest.raises(ValueError):
        smith_normal_form([])


def _random_matrix(rng, rows, cols):
    return [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]


def _random_unimodular(rng, n, steps=12):
    """Произведение элементарных преобразований строк"""
    u = identity(n)
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        kind = rng.randrange(3)
        if kind == 0 and i != j:
            u[i] = [a + rng.randint(-3, 3) * b for a, b in zip(u[i], u[j])]
        elif kind == 1:
            u[i], u[j] = u[j], u[i]
        else:
            u[i] = [-a for a in u[i]]
    return u


def _determinantal_divisors(m):
    """d_k = НОД всех миноров порядка k"""
    rows, cols = len(m), len(m[0])
    divisors = []
    for k in range(1, min(rows, cols) + 1):
        d = 0
        for r in combinations(range(rows), k):
            for c in combinations(range(cols), k):
                d = gcd(d, int(Matrix([[m[i][j] for j in c] for i in r]).det()))
        divisors.append(d)
    return divisors


def test_random_matrices():
    rng = random.Random(7)
    for _ in range(1000):
        m = _random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        left, diag, right = smith_normal_form(m)
        assert mat_mul(mat_mul(left, m), right) == diag
        assert abs(Matrix(left).det()) == 1
        assert abs(Matrix(right).det()) == 1
        values = _diagonal(diag)
        nonzero = [v for v in values if v]
        assert len(nonzero) == Matrix(m).rank()
        assert values[:len(nonzero)] == nonzero
        assert all(v > 0 for v in nonzero)
        assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
        assert sum(v != 0 for row in diag for v in row) == len(nonzero)


def test_unimodular_invariance():
    rng = random.Random(11)
    for _ in range(200):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = _random_matrix(rng, rows, cols)
        moved = mat_mul(mat_mul(_random_unimodular(rng, rows), m), _random_unimodular(rng, cols))
        assert invariant_factors(moved) == invariant_factors(m)


def test_determinantal_divisors():
    rng = random.Random(13)
    for _ in range(100):
        m = _random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        product = 1
        for value, divisor in zip(invariant_factors(m), _determinantal_divisors(m)):
            product *= value
            assert product == divisor
