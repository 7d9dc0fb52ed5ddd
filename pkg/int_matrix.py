"""
Целочисленные матрицы: нормальная форма Смита с унимодулярными преобразованиями.
"""
from typing import List, Optional, Tuple

IntMatrix = List[List[int]]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)] for i in range(len(a))]


def rank(m: IntMatrix) -> int:
    """Ранг над Q по диагонали нормальной формы Смита"""
    _, diag, _ = smith_normal_form(m)
    return sum(1 for i in range(min(len(diag), len(diag[0]))) if diag[i][i] != 0)


def _find_pivot(a: IntMatrix, t: int) -> Optional[Tuple[int, int]]:
    """Ненулевой элемент наименьшего модуля в подматрице a[t:, t:], при равенстве первый по строкам"""
    best = None
    for i in range(t, len(a)):
        for j in range(t, len(a[0])):
            v = abs(a[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(m: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Нормальная форма Смита: возвращает (left, diag, right) с left*m*right = diag,
    left и right унимодулярны, d1 | d2 | ... неотрицательны
    """
    if not m or not m[0]:
        raise ValueError("Матрица должна быть непустой")

    a = [list(row) for row in m]
    rows, cols = len(a), len(a[0])
    left = identity(rows)
    right = identity(cols)

    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        left[i], left[k] = left[k], left[i]

    def swap_cols(j: int, k: int) -> None:
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in right:
            row[j], row[k] = row[k], row[j]

    def add_row(target: int, source: int, factor: int) -> None:
        # строка target += factor * строка source
        a[target] = [x + factor * y for x, y in zip(a[target], a[source])]
        left[target] = [x + factor * y for x, y in zip(left[target], left[source])]

    def add_col(target: int, source: int, factor: int) -> None:
        for row in a:
            row[target] += factor * row[source]
        for row in right:
            row[target] += factor * row[source]

    for t in range(min(rows, cols)):
        while True:
            pivot = _find_pivot(a, t)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            d = a[t][t]

            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // d))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // d))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue

            # делимость остатка на d
            bad_row = next(
                (i for i in range(t + 1, rows) if any(a[i][j] % d for j in range(t + 1, cols))),
                None,
            )
            if bad_row is None:
                break
            add_row(t, bad_row, 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]

    return left, a, right


def invariant_factors(m: IntMatrix) -> List[int]:
    """Диагональ нормальной формы Смита (включая нули)"""
    _, diag, _ = smith_normal_form(m)
    return [diag[i][i] for i in range(min(len(diag), len(diag[0])))]
