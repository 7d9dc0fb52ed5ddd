"""
Конечные поля F_{p^k}.

Элементы представлены целыми числами 0..q-1: цифры в системе счисления
с основанием p являются коэффициентами многочлена (младшая цифра при x^0).
Умножение идет через таблицы логарифмов, которые строятся лениво и только
для полей порядка не больше TABLE_FIELD_ORDER; в больших полях - напрямую.
"""
import itertools
from functools import cached_property
from typing import Dict, List, Tuple

import sympy
from loguru import logger

from config import MAX_FIELD_ORDER, TABLE_FIELD_ORDER
from errors import DegreeTooLarge, NonPrimeCharacteristic


class FiniteField:
    """Поле F_q, q = p^k, заданное неприводимым многочленом степени k над F_p"""

    def __init__(self, p: int, k: int, modulus: Tuple[int, ...]):
        """Инициализация поля по младшим коэффициентам (c0..c_{k-1}) унитарного многочлена"""
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.order = p ** k
        self.q = self.order

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, k={self.k}, modulus={self.modulus})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    # ------------------------------------------------------------------
    # Кодирование элементов
    # ------------------------------------------------------------------
    def to_coeffs(self, a: int) -> List[int]:
        """Коэффициенты элемента (младший первым), ровно k штук"""
        coeffs = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            coeffs.append(r)
        return coeffs

    def from_coeffs(self, coeffs: List[int]) -> int:
        value = 0
        for c in reversed(coeffs):
            value = value * self.p + (c % self.p)
        return value

    def elements(self) -> range:
        return range(self.order)

    def nonzero_elements(self) -> range:
        return range(1, self.order)

    def polynomial(self) -> List[int]:
        """Определяющий многочлен, коэффициенты от младшего к старшему (включая 1 при x^k)"""
        return list(self.modulus) + [1]

    # ------------------------------------------------------------------
    # Арифметика
    # ------------------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        return self.from_coeffs([x + y for x, y in zip(self.to_coeffs(a), self.to_coeffs(b))])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        return self.from_coeffs([-x for x in self.to_coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_raw(self, a: int, b: int) -> int:
        """Умножение многочленов по модулю без таблиц"""
        if self.k == 1:
            return (a * b) % self.p
        p, k = self.p, self.k
        xa, xb = self.to_coeffs(a), self.to_coeffs(b)
        prod = [0] * (2 * k - 1)
        for i, ca in enumerate(xa):
            if ca:
                for j, cb in enumerate(xb):
                    prod[i + j] = (prod[i + j] + ca * cb) % p
        # x^k = -(c0 + c1 x + ... + c_{k-1} x^{k-1})
        for deg in range(2 * k - 2, k - 1, -1):
            lead = prod[deg]
            if lead:
                prod[deg] = 0
                for i, c in enumerate(self.modulus):
                    prod[deg - k + i] = (prod[deg - k + i] - lead * c) % p
        return self.from_coeffs(prod[:k])

    def _pow_raw(self, a: int, e: int) -> int:
        result = 1
        base = a
        while e:
            if e & 1:
                result = self._mul_raw(result, base)
            base = self._mul_raw(base, base)
            e >>= 1
        return result

    @cached_property
    def primitive_element(self) -> int:
        """Наименьший (в каноническом порядке) элемент порядка q-1"""
        if self.order == 2:
            return 1
        primes = list(sympy.factorint(self.order - 1))
        for g in range(2, self.order):
            if all(self._pow_raw(g, (self.order - 1) // r) != 1 for r in primes):
                return g
        raise ValueError(f"В поле {self} не найден примитивный элемент")

    @cached_property
    def _tables(self) -> Tuple[List[int], List[int]]:
        g = self.primitive_element
        exp = [0] * (2 * (self.order - 1))
        log = [0] * self.order
        val = 1
        for i in range(self.order - 1):
            exp[i] = val
            log[val] = i
            val = self._mul_raw(val, g)
        for i in range(self.order - 1, 2 * (self.order - 1)):
            exp[i] = exp[i - (self.order - 1)]
        logger.debug(f"Построены таблицы логарифмов для F_{self.order}")
        return exp, log

    @property
    def uses_tables(self) -> bool:
        """Таблицы логарифмов строятся только для q <= TABLE_FIELD_ORDER"""
        return self.k > 1 and self.order <= TABLE_FIELD_ORDER

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if not self.uses_tables:
            return self._mul_raw(a, b)
        exp, log = self._tables
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("Ноль не обратим в конечном поле")
        if self.k == 1:
            return pow(a, -1, self.p)
        if not self.uses_tables:
            return self._pow_raw(a, self.order - 2)
        exp, log = self._tables
        return exp[(self.order - 1 - log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("Ноль не обратим в конечном поле")
            return 1 if e == 0 else 0
        if not self.uses_tables:
            return self._pow_raw(a, e % (self.order - 1))
        exp, log = self._tables
        return exp[(log[a] * e) % (self.order - 1)]

    def log(self, a: int) -> int:
        """Дискретный логарифм по примитивному элементу"""
        if a == 0:
            raise ValueError("Логарифм нуля не определен")
        return self._tables[1][a]

    def exp(self, e: int) -> int:
        return self._tables[0][e % (self.order - 1)]

    def subfield(self, d: int) -> List[int]:
        """Элементы подполя F_{p^d} (d делит k), отсортированные"""
        if self.k % d:
            raise ValueError(f"Степень {d} не делит {self.k}")
        sub_order = self.p ** d
        step = (self.order - 1) // (sub_order - 1)
        return sorted({0} | {self.exp(step * m) for m in range(sub_order - 1)})


def smallest_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """Лексикографически наименьший унитарный неприводимый многочлен степени k (сравнение с младших коэффициентов)"""
    x = sympy.Symbol("x")
    for low in itertools.product(range(p), repeat=k):
        coeffs_high_first = [1] + list(reversed(low))
        if sympy.Poly(coeffs_high_first, x, modulus=p).is_irreducible:
            return tuple(low)
    raise ValueError(f"Неприводимый многочлен степени {k} над F_{p} не найден")


_FIELD_CACHE: Dict[Tuple[int, int], FiniteField] = {}


def field_build(p: int, k: int) -> FiniteField:
    """Построение поля F_{p^k} с детерминированным определяющим многочленом"""
    if not isinstance(p, int) or p < 2 or not sympy.isprime(p):
        raise NonPrimeCharacteristic(f"Характеристика {p} не является простым числом", {"p": p})
    if k < 1:
        raise DegreeTooLarge(f"Степень {k} должна быть не меньше 1", {"k": k})
    if p ** k > MAX_FIELD_ORDER:
        raise DegreeTooLarge(f"Порядок поля {p}^{k} превышает {MAX_FIELD_ORDER}", {"p": p, "k": k})

    key = (p, k)
    if key not in _FIELD_CACHE:
        field = FiniteField(p, k, smallest_irreducible(p, k))
        logger.debug(f"Построено поле F_{field.order} с многочленом {field.polynomial()}")
        _FIELD_CACHE[key] = field
    return _FIELD_CACHE[key]


def prime_power(q: int) -> Tuple[int, int]:
    """Разложение q = p^k; ValueError, если q не степень простого"""
    if q < 2:
        raise ValueError(f"{q} не является степенью простого числа")
    factors = sympy.factorint(q)
    if len(factors) != 1:
        raise ValueError(f"{q} не является степенью простого числа")
    (p, k), = factors.items()
    return p, k
