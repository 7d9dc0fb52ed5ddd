"""
Кольцо нормирования F_p[[t]]: многочлены, усеченные ряды Лорана и матрицы 3x3.

Многочлен хранится как кортеж коэффициентов по модулю p (младший первым) без
хвостовых нулей. Усеченный ряд t^shift * poly + O(t^prec) отслеживает
абсолютную точность, поэтому элементарные делители либо вычисляются надежно,
либо выбрасывается InsufficientPrecision.
"""
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from errors import InsufficientPrecision, SingularMatrix

Poly = Tuple[int, ...]
PolyMatrix = Tuple[Tuple[Poly, ...], ...]

ZERO: Poly = ()
ONE: Poly = (1,)


# ----------------------------------------------------------------------
# Многочлены над F_p
# ----------------------------------------------------------------------
def poly_trim(coeffs: Sequence[int], p: int) -> Poly:
    values = [c % p for c in coeffs]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def poly_add(a: Poly, b: Poly, p: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    return poly_trim([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)], p)


def poly_neg(a: Poly, p: int) -> Poly:
    return tuple((-c) % p for c in a)


def poly_sub(a: Poly, b: Poly, p: int) -> Poly:
    return poly_add(a, poly_neg(b, p), p)


def poly_scale(a: Poly, c: int, p: int) -> Poly:
    return poly_trim([x * c for x in a], p)


def poly_shift(a: Poly, k: int) -> Poly:
    """Умножение на t^k (k >= 0)"""
    return (0,) * k + a if a else ZERO


def poly_mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out, p)


def poly_val(a: Poly) -> Optional[int]:
    """t-адическое нормирование; None для нуля"""
    for i, c in enumerate(a):
        if c:
            return i
    return None


def poly_divmod(a: Poly, b: Poly, p: int) -> Tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("Деление на нулевой многочлен")
    inv_lead = pow(b[-1], -1, p)
    rem = list(a)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    for deg in range(len(a) - len(b), -1, -1):
        c = (rem[deg + len(b) - 1] * inv_lead) % p
        if c:
            quot[deg] = c
            for i, y in enumerate(b):
                rem[deg + i] = (rem[deg + i] - c * y) % p
    return poly_trim(quot, p), poly_trim(rem, p)


def poly_from_laurent(offset: int, coeffs: Sequence[int], p: int) -> Tuple[int, Poly]:
    """Нормализует (offset, coeffs): возвращает (shift, poly) с poly(0) != 0 либо (0, ZERO)"""
    poly = poly_trim(coeffs, p)
    v = poly_val(poly)
    if v is None:
        return 0, ZERO
    return offset + v, poly[v:]


# ----------------------------------------------------------------------
# Матрицы многочленов
# ----------------------------------------------------------------------
def poly_matrix_mul(a: PolyMatrix, b: PolyMatrix, p: int) -> PolyMatrix:
    n, m, cols = len(a), len(b), len(b[0])
    rows = []
    for i in range(n):
        row = []
        for j in range(cols):
            acc: Poly = ZERO
            for k in range(m):
                if a[i][k] and b[k][j]:
                    acc = poly_add(acc, poly_mul(a[i][k], b[k][j], p), p)
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def poly_matrix_adjugate(m: PolyMatrix, p: int) -> PolyMatrix:
    """Присоединенная матрица 3x3"""
    def minor(r0: int, r1: int, c0: int, c1: int) -> Poly:
        return poly_sub(poly_mul(m[r0][c0], m[r1][c1], p), poly_mul(m[r0][c1], m[r1][c0], p), p)

    adj = [[ZERO] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != j]
            cols = [c for c in range(3) if c != i]
            value = minor(rows[0], rows[1], cols[0], cols[1])
            adj[i][j] = value if (i + j) % 2 == 0 else poly_neg(value, p)
    return tuple(tuple(row) for row in adj)


def poly_matrix_minval(m: PolyMatrix) -> Optional[int]:
    vals = [poly_val(entry) for row in m for entry in row if entry]
    return min(vals) if vals else None


def hermite_form(columns: List[List[Poly]], p: int) -> PolyMatrix:
    """
    Столбцовая форма Эрмита над F_p[t] модуля, порожденного столбцами и
    содержащего t^m * F_p[t]^3. Результат верхнетреугольный, диагональ унитарна,
    внедиагональные элементы строки i имеют степень меньше степени диагонали
    """
    cols = [list(c) for c in columns if any(c)]
    basis: List[Optional[List[Poly]]] = [None, None, None]

    for row in (2, 1, 0):
        while True:
            active = [c for c in cols if c[row]]
            if len(active) <= 1:
                break
            pivot = min(active, key=lambda c: len(c[row]))
            for c in active:
                if c is pivot:
                    continue
                quot, _ = poly_divmod(c[row], pivot[row], p)
                for r in range(3):
                    c[r] = poly_sub(c[r], poly_mul(quot, pivot[r], p), p)
        active = [c for c in cols if c[row]]
        if not active:
            raise SingularMatrix("Модуль не имеет полного ранга", {"row": row})
        pivot = active[0]
        inv_lead = pow(pivot[row][-1], -1, p)
        basis[row] = [poly_scale(x, inv_lead, p) for x in pivot]
        cols = [c for c in cols if c is not pivot]

    for i in (1, 0):
        for j in range(i + 1, 3):
            quot, _ = poly_divmod(basis[j][i], basis[i][i], p)
            if quot:
                basis[j] = [poly_sub(basis[j][r], poly_mul(quot, basis[i][r], p), p) for r in range(3)]

    return tuple(tuple(basis[j][i] for j in range(3)) for i in range(3))


# ----------------------------------------------------------------------
# Усеченные ряды Лорана
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class TruncatedLaurent:
    """t^shift * poly + O(t^prec); prec = None означает точное значение"""
    shift: int
    poly: Poly
    prec: Optional[int]
    p: int

    @classmethod
    def make(cls, offset: int, coeffs: Sequence[int], prec: Optional[int], p: int) -> "TruncatedLaurent":
        shift, poly = poly_from_laurent(offset, coeffs, p)
        if prec is not None and poly:
            keep = prec - shift
            if keep <= 0:
                shift, poly = 0, ZERO
            else:
                shift, poly = poly_from_laurent(shift, poly[:keep], p)
        return cls(shift, poly, prec, p)

    def valuation(self) -> Optional[int]:
        """Нормирование, если оно определено известными цифрами"""
        return self.shift if self.poly else None

    def bound(self) -> float:
        """Нижняя граница нормирования"""
        if self.poly:
            return self.shift
        return float("inf") if self.prec is None else self.prec

    def __add__(self, other: "TruncatedLaurent") -> "TruncatedLaurent":
        base = min(self.shift if self.poly else other.shift, other.shift if other.poly else self.shift)
        a = poly_shift(self.poly, self.shift - base) if self.poly else ZERO
        b = poly_shift(other.poly, other.shift - base) if other.poly else ZERO
        prec = _min_prec(self.prec, other.prec)
        return TruncatedLaurent.make(base, poly_add(a, b, self.p), prec, self.p)

    def __neg__(self) -> "TruncatedLaurent":
        return TruncatedLaurent(self.shift, poly_neg(self.poly, self.p), self.prec, self.p)

    def __sub__(self, other: "TruncatedLaurent") -> "TruncatedLaurent":
        return self + (-other)

    def __mul__(self, other: "TruncatedLaurent") -> "TruncatedLaurent":
        # (x + O(t^a)) (y + O(t^b)) = xy + O(t^min(a + v(y), b + v(x)))
        prec = _min_prec(
            None if self.prec is None else self.prec + other.bound(),
            None if other.prec is None else other.prec + self.bound(),
        )
        if prec is not None and prec == float("inf"):
            prec = None
        if not self.poly or not other.poly:
            return TruncatedLaurent(0, ZERO, None if prec is None else int(prec), self.p)
        product = poly_mul(self.poly, other.poly, self.p)
        return TruncatedLaurent.make(self.shift + other.shift, product, None if prec is None else int(prec), self.p)


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class DVRMatrix:
    """Матрица 3x3 над F_p((t)): элементы (offset, coeffs), рабочая точность N"""
    p: int
    entries: Tuple[Tuple[Tuple[int, Tuple[int, ...]], ...], ...]
    precision: Optional[int]

    @property
    def exact(self) -> bool:
        return self.precision is None

    def series(self) -> List[List[TruncatedLaurent]]:
        return [
            [TruncatedLaurent.make(offset, coeffs, self.precision, self.p) for offset, coeffs in row]
            for row in self.entries
        ]

    @classmethod
    def from_polys(cls, m: PolyMatrix, p: int, precision: Optional[int] = None) -> "DVRMatrix":
        return cls(p, tuple(tuple((0, tuple(entry)) for entry in row) for row in m), precision)


def _reliable_min(values: List[TruncatedLaurent], what: str, exact: bool) -> Optional[int]:
    known = [v.valuation() for v in values if v.valuation() is not None]
    unknown_bounds = [v.bound() for v in values if v.valuation() is None]
    if not known:
        return None
    best = min(known)
    if unknown_bounds and min(unknown_bounds) <= best and not exact:
        raise InsufficientPrecision(
            f"Нормирование {what} зависит от отброшенных цифр",
            {"known_min": best, "unknown_bound": min(unknown_bounds)},
        )
    return best


def dvr_elementary_divisors(m: DVRMatrix) -> Tuple[int, int, int]:
    """Нормирования инвариантных множителей (a >= b >= c) через НОД миноров"""
    s = m.series()
    rows = range(3)

    entries = [s[i][j] for i in rows for j in rows]
    c = _reliable_min(entries, "элементов", m.exact)
    if c is None:
        if m.exact:
            raise SingularMatrix("Нулевая матрица", {})
        raise InsufficientPrecision("Все элементы равны нулю в пределах точности", {"precision": m.precision})

    minors2 = []
    for r0, r1 in combinations(rows, 2):
        for c0, c1 in combinations(rows, 2):
            minors2.append(s[r0][c0] * s[r1][c1] - s[r0][c1] * s[r1][c0])
    s2 = _reliable_min(minors2, "миноров 2x2", m.exact)

    det = (
        s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1])
        - s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0])
        + s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0])
    )
    vdet = det.valuation()
    if vdet is None or s2 is None:
        if m.exact:
            raise SingularMatrix("Определитель равен нулю", {})
        raise InsufficientPrecision("Определитель не отличим от нуля на данной точности", {"precision": m.precision})

    b = s2 - c
    a = vdet - s2
    if not m.exact and m.precision < a - c + 2:
        raise InsufficientPrecision(
            f"Точность {m.precision} недостаточна для делителей ({a}, {b}, {c})",
            {"precision": m.precision, "required": a - c + 2},
        )
    return a, b, c


def poly_smith_form(m: PolyMatrix, p: int) -> Tuple[PolyMatrix, Tuple[int, int, int]]:
    """
    Диагонализация m = U * diag(t^e0, t^e1, t^e2) * V над F_p[t].
    Определитель m обязан быть вида c * t^k; возвращаются U и показатели e
    """
    a = [list(row) for row in m]
    u = [[ONE if i == j else ZERO for j in range(3)] for i in range(3)]

    for s in range(3):
        while True:
            cells = [(len(a[i][j]), i, j) for i in range(s, 3) for j in range(s, 3) if a[i][j]]
            if not cells:
                raise SingularMatrix("Матрица вырождена", {"step": s})
            _, i, j = min(cells)
            if i != s:
                a[s], a[i] = a[i], a[s]
                for row in u:
                    row[s], row[i] = row[i], row[s]
            if j != s:
                for row in a:
                    row[s], row[j] = row[j], row[s]

            pivot = a[s][s]
            clean = True
            for i in range(s + 1, 3):
                if not a[i][s]:
                    continue
                quot, rem = poly_divmod(a[i][s], pivot, p)
                a[i] = [poly_sub(a[i][c], poly_mul(quot, a[s][c], p), p) for c in range(3)]
                # U * E^-1: столбец s += quot * столбец i
                for row in u:
                    row[s] = poly_add(row[s], poly_mul(quot, row[i], p), p)
                clean = clean and not rem
            for j in range(s + 1, 3):
                if not a[s][j]:
                    continue
                quot, rem = poly_divmod(a[s][j], pivot, p)
                for r in range(3):
                    a[r][j] = poly_sub(a[r][j], poly_mul(quot, a[r][s], p), p)
                clean = clean and not rem
            if clean:
                break

    exponents = []
    for s in range(3):
        entry = a[s][s]
        if poly_val(entry) != len(entry) - 1:
            raise SingularMatrix("Определитель не является степенью t", {"step": s, "entry": list(entry)})
        exponents.append(len(entry) - 1)
    return tuple(tuple(row) for row in u), tuple(exponents)
