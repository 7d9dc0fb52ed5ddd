import pytest

from dvr import (
    ONE,
    ZERO,
    DVRMatrix,
    TruncatedLaurent,
    dvr_elementary_divisors,
    hermite_form,
    poly_divmod,
    poly_matrix_adjugate,
    poly_matrix_mul,
    poly_mul,
    poly_smith_form,
    poly_val,
)
from errors import InsufficientPrecision, SingularMatrix

T = (0, 1)
T2 = (0, 0, 1)


def diag(a, b, c):
    return ((a, ZERO, ZERO), (ZERO, b, ZERO), (ZERO, ZERO, c))


def columns(m):
    return [[m[r][c] for r in range(3)] for c in range(3)]


def test_polynomial_arithmetic_mod_two():
    assert poly_mul((1, 1), (1, 1), 2) == (1, 0, 1)
    assert poly_divmod((1, 0, 1), (1, 1), 2) == ((1, 1), ZERO)
    assert poly_divmod((1, 1, 1), (1, 1), 2) == ((0, 1), (1,))
    assert poly_val((0, 0, 3)) == 2
    assert poly_val(ZERO) is None


def test_laurent_truncation():
    x = TruncatedLaurent.make(0, (0, 0, 1), 2, 2)
    assert x.valuation() is None
    assert x.bound() == 2
    y = TruncatedLaurent.make(-1, (1, 1), None, 2)
    assert y.valuation() == -1
    assert (y * y).valuation() == -2


def test_hermite_form_of_diagonal_and_unimodular():
    assert hermite_form(columns(diag(T, ONE, ONE)), 2) == diag(T, ONE, ONE)
    unimodular = [[ONE, ONE, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]]
    assert hermite_form(unimodular, 2) == diag(ONE, ONE, ONE)


def test_hermite_form_rejects_rank_deficient():
    with pytest.raises(SingularMatrix):
        hermite_form([[ONE, ZERO, ZERO], [ZERO, ONE, ZERO]], 2)


def test_adjugate_of_diagonal():
    assert poly_matrix_adjugate(diag(T2, T, ONE), 2) == diag(T, T2, (0, 0, 0, 1))


def test_elementary_divisors_exact():
    assert dvr_elementary_divisors(DVRMatrix.from_polys(diag(T2, T, ONE), 2)) == (2, 1, 0)
    m = ((T, ONE, ZERO), (ZERO, T, ZERO), (ZERO, ZERO, ONE))
    assert dvr_elementary_divisors(DVRMatrix.from_polys(m, 3)) == (2, 0, 0)


def test_elementary_divisors_need_precision():
    with pytest.raises(InsufficientPrecision):
        dvr_elementary_divisors(DVRMatrix.from_polys(diag(T2, T, ONE), 2, precision=1))
    assert dvr_elementary_divisors(DVRMatrix.from_polys(diag(T2, T, ONE), 2, precision=8)) == (2, 1, 0)


def test_singular_matrix():
    with pytest.raises(SingularMatrix):
        dvr_elementary_divisors(DVRMatrix.from_polys(diag(ONE, ONE, ZERO), 2))


def test_smith_form_over_polynomials():
    m = ((T, ONE, ZERO), (ZERO, T, ZERO), (ZERO, ZERO, ONE))
    u, exponents = poly_smith_form(m, 2)
    assert sorted(exponents) == [0, 0, 2]
    scaled = poly_matrix_mul(u, diag(*(tuple([0] * e + [1]) for e in exponents)), 2)
    assert hermite_form(columns(scaled), 2) == hermite_form(columns(m), 2)


def test_smith_form_requires_monomial_determinant():
    with pytest.raises(SingularMatrix):
        poly_smith_form(diag((1, 1), ONE, ONE), 2)
