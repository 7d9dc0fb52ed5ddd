import pytest
import sympy

from errors import DegreeTooLarge, NonPrimeCharacteristic
from finite_field import field_build, prime_power, smallest_irreducible


def test_field_of_order_four():
    """F_4 = F_2[x]/(x^2+x+1): x*x = x+1"""
    F = field_build(2, 2)
    assert F.order == 4
    assert F.polynomial() == [1, 1, 1]
    assert F.mul(2, 2) == 3
    assert F.add(2, 3) == 1


def test_prime_field_uses_x():
    F = field_build(5, 1)
    assert F.modulus == (0,)
    assert F.mul(3, 4) == 2
    assert F.inv(2) == 3


@pytest.mark.parametrize("p,k", [(2, 1), (2, 3), (3, 2), (5, 2), (2, 6), (7, 1)])
def test_inverses_and_primitive_element(p, k):
    F = field_build(p, k)
    for a in F.nonzero_elements():
        assert F.mul(a, F.inv(a)) == 1
    powers = {F.exp(e) for e in range(F.order - 1)}
    assert powers == set(F.nonzero_elements())


@pytest.mark.parametrize("p,k", [(2, 2), (2, 4), (3, 3), (5, 2), (7, 2)])
def test_defining_polynomial_is_irreducible(p, k):
    """Проверка неприводимости независимо через sympy"""
    low = smallest_irreducible(p, k)
    x = sympy.Symbol("x")
    assert sympy.Poly([1] + list(reversed(low)), x, modulus=p).is_irreducible


def test_subfield_of_f16():
    F = field_build(2, 4)
    sub = F.subfield(2)
    assert len(sub) == 4
    for a in sub:
        for b in sub:
            assert F.mul(a, b) in sub
            assert F.add(a, b) in sub


def test_field_guards():
    with pytest.raises(NonPrimeCharacteristic):
        field_build(4, 1)
    with pytest.raises(DegreeTooLarge):
        field_build(2, 21)
    with pytest.raises(DegreeTooLarge):
        field_build(3, 0)


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(32) == (2, 5)
    with pytest.raises(ValueError):
        prime_power(6)
    with pytest.raises(ValueError):
        prime_power(1)


def test_large_field_skips_log_tables():
    F = field_build(257, 2)
    assert F.order > 2 ** 16
    assert not F.uses_tables
    for a in (1, 2, 300, 12345, F.order - 1):
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.order - 1) == 1
        assert F.pow(a, 3) == F.mul(a, F.mul(a, a))
    assert "_tables" not in vars(F)


def test_small_field_uses_log_tables():
    F = field_build(2, 6)
    assert F.uses_tables
    assert F.mul(5, F.inv(5)) == 1
    assert "_tables" in vars(F)
