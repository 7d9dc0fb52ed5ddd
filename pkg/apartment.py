"""
Модельная квартира типа A2: трансляции в корневых координатах (alpha1, alpha2),
группа Вейля S3, длина, порядок доминирования и сдвиг типа.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple


@dataclass(frozen=True, order=True)
class TranslationVec:
    """Трансляция (i, j) = (alpha1, alpha2)"""
    i: int
    j: int

    def __add__(self, other: "TranslationVec") -> "TranslationVec":
        return TranslationVec(self.i + other.i, self.j + other.j)

    def __sub__(self, other: "TranslationVec") -> "TranslationVec":
        return TranslationVec(self.i - other.i, self.j - other.j)

    def __neg__(self) -> "TranslationVec":
        return TranslationVec(-self.i, -self.j)

    def scaled(self, k: int) -> "TranslationVec":
        return TranslationVec(k * self.i, k * self.j)

    @property
    def is_dominant(self) -> bool:
        return self.i >= 0 and self.j >= 0

    @property
    def is_regular(self) -> bool:
        return self.i > 0 and self.j > 0

    def as_tuple(self) -> Tuple[int, int]:
        return self.i, self.j

    def __str__(self) -> str:
        return f"({self.i},{self.j})"


# Форма (shape) - доминантная трансляция
Shape = TranslationVec

ZERO = TranslationVec(0, 0)
T1 = TranslationVec(1, 0)
T2 = TranslationVec(0, 1)
DIAGONAL = TranslationVec(1, 1)


class WeylElt(Enum):
    """Элементы группы Вейля S3"""
    E = "e"
    S1 = "s1"
    S2 = "s2"
    S1S2 = "s1s2"
    S2S1 = "s2s1"
    W0 = "w0"


# Матрицы действия на (i, j); произведение s1s2 означает "сначала s2, затем s1"
_S1 = ((-1, 0), (1, 1))
_S2 = ((1, 1), (0, -1))


def _compose(a, b):
    return tuple(tuple(sum(a[r][k] * b[k][c] for k in range(2)) for c in range(2)) for r in range(2))


_MATRICES: Dict[WeylElt, Tuple[Tuple[int, int], Tuple[int, int]]] = {
    WeylElt.E: ((1, 0), (0, 1)),
    WeylElt.S1: _S1,
    WeylElt.S2: _S2,
    WeylElt.S1S2: _compose(_S1, _S2),
    WeylElt.S2S1: _compose(_S2, _S1),
    WeylElt.W0: _compose(_S1, _compose(_S2, _S1)),
}
_BY_MATRIX = {m: w for w, m in _MATRICES.items()}


def weyl_matrix(w: WeylElt) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    return _MATRICES[w]


def weyl_mul(a: WeylElt, b: WeylElt) -> WeylElt:
    """Произведение a*b (сначала b)"""
    return _BY_MATRIX[_compose(_MATRICES[a], _MATRICES[b])]


def weyl_inverse(w: WeylElt) -> WeylElt:
    return next(x for x in WeylElt if weyl_mul(w, x) is WeylElt.E)


def weyl_apply(w: WeylElt, v: TranslationVec) -> TranslationVec:
    m = _MATRICES[w]
    return TranslationVec(m[0][0] * v.i + m[0][1] * v.j, m[1][0] * v.i + m[1][1] * v.j)


def weyl_conjugate_by_w0(w: WeylElt) -> WeylElt:
    """w0 * w * w0"""
    return weyl_mul(WeylElt.W0, weyl_mul(w, WeylElt.W0))


def length(v: TranslationVec) -> int:
    return v.i + v.j


def dominant(v: TranslationVec) -> TranslationVec:
    """Доминантный представитель W-орбиты"""
    while not v.is_dominant:
        v = weyl_apply(WeylElt.S1, v) if v.i < 0 else weyl_apply(WeylElt.S2, v)
    return v


def w0_flip(v: TranslationVec) -> TranslationVec:
    """Форма обратного направления: (i, j) -> (j, i)"""
    return TranslationVec(v.j, v.i)


class Dominance(Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def dominance_order(lam: TranslationVec, mu: TranslationVec) -> Dominance:
    if lam == mu:
        return Dominance.EQUAL
    diff = lam - mu
    if diff.is_dominant:
        return Dominance.GREATER
    if (-diff).is_dominant:
        return Dominance.LESS
    return Dominance.INCOMPARABLE


def type_shift(v: TranslationVec) -> int:
    """Сдвиг типа вершины при трансляции: t1 -> +1, t2 -> +2"""
    return (v.i + 2 * v.j) % 3


def shapes_of_length(n: int):
    """Все доминантные формы длины n, по возрастанию j"""
    return [TranslationVec(n - j, j) for j in range(n + 1)]
