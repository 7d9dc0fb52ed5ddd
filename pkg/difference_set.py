"""
Планарные разностные множества: проверка, конструкция Зингера,
вложенные пары и плоскость P(Z/n, D).
"""
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from config import MAX_SINGER_ORDER
from errors import FieldTooLarge, HypothesisViolated, UnverifiedInput
from finite_field import FiniteField, field_build, prime_power
from models import DifferenceSetRecord, EmbeddedPair, VerificationReport
from projective_plane import IncidencePlane
from utils.logging_utils import LogEventType, log_event


def check_difference_set(n: int, D: Sequence[int], source: str = "user") -> DifferenceSetRecord:
    """Каждый ненулевой вычет mod n представим ровно одной разностью d1 - d2"""
    elements = sorted({d % n for d in D})
    counts = [0] * n
    for d1 in elements:
        for d2 in elements:
            if d1 != d2:
                counts[(d1 - d2) % n] += 1

    witness = None
    for a in range(1, n):
        if counts[a] != 1:
            pairs = [[d1, d2] for d1 in elements for d2 in elements if d1 != d2 and (d1 - d2) % n == a]
            witness = {"residue": a, "representations": counts[a], "pairs": pairs}
            break

    verified = witness is None and bool(elements)
    if verified:
        log_event(LogEventType.DIFFERENCE_SET_VERIFIED, f"Разностное множество {elements} в Z/{n}", n=n)
    return DifferenceSetRecord(n=n, D=elements, source=source, verified=verified, witness=witness)


def _validate_order(q: int) -> Tuple[int, int]:
    try:
        p, k = prime_power(q)
    except ValueError:
        raise FieldTooLarge(f"{q} не является степенью простого числа", {"q": q})
    if q > MAX_SINGER_ORDER:
        raise FieldTooLarge(f"Порядок {q} превышает {MAX_SINGER_ORDER}", {"q": q})
    return p, k


class SingerCycle:
    """Циклическая группа F_{q^3}^x / F_q^x порядка n = q^2+q+1 с образующей g^power"""

    def __init__(self, q: int, power: int = 1):
        """Инициализация по порядку плоскости и степени примитивного элемента"""
        p, k = _validate_order(q)
        self.q = q
        self.n = q * q + q + 1
        self.field: FiniteField = field_build(p, 3 * k)
        if gcd(power, self.n) != 1:
            raise ValueError(f"Степень {power} не взаимно проста с {self.n}")
        self.power = power
        self._power_inv = pow(power, -1, self.n)

    def generator(self) -> int:
        return self.field.exp(self.power)

    def scalars(self, order: int) -> List[int]:
        """Подполе F_order внутри F_{q^3}"""
        step = (self.field.order - 1) // (order - 1)
        return sorted({0} | {self.field.exp(step * m) for m in range(order - 1)})

    def point_index(self, x: int) -> int:
        """Класс элемента в Z/n относительно образующей g^power"""
        return (self.field.log(x) * self._power_inv) % self.n

    def line_set(self, b: int, scalars: List[int]) -> List[int]:
        """Точки прямой span(1, b) над подполем scalars"""
        F = self.field
        indices = set()
        for alpha in scalars:
            for beta in scalars:
                x = F.add(alpha, F.mul(beta, b))
                if x:
                    indices.add(self.point_index(x))
        return sorted(indices)


def singer_difference_set(q: int) -> DifferenceSetRecord:
    """D = {a : g^a лежит на прямой через 1 и g}; для q = 2 нормализуется к {0,1,3}"""
    _validate_order(q)
    cycle = SingerCycle(q)
    D = cycle.line_set(cycle.generator(), cycle.scalars(q))
    if q == 2 and D == [0, 1, 5]:
        cycle = SingerCycle(q, power=5)
        D = cycle.line_set(cycle.generator(), cycle.scalars(q))
    record = check_difference_set(cycle.n, D, source="singer")
    logger.info(f"Разностное множество Зингера для q={q}: {record.D}")
    return record


def plane_from_difference_set(record: DifferenceSetRecord) -> IncidencePlane:
    """Точки Z/n, прямые - сдвиги D + a"""
    if not record.verified:
        raise UnverifiedInput("Разностное множество не проверено", {"n": record.n, "D": record.D})
    n = record.n
    incidences = [((d + a) % n, a) for a in range(n) for d in record.D]
    return IncidencePlane(range(n), range(n), incidences, len(record.D) - 1, name=f"P(Z/{n},{record.D})")


def translation_action_report(record: DifferenceSetRecord) -> VerificationReport:
    """Сдвиги действуют свободно и транзитивно на точках и на прямых"""
    plane = plane_from_difference_set(record)
    n = record.n
    lines = {frozenset(plane.points_on[a]) for a in plane.lines}
    shifted = {a: frozenset((x + a) % n for x in record.D) for a in range(n)}
    checks = {
        "lines_distinct": len(lines) == n,
        "free_on_lines": len(set(shifted.values())) == n,
        "transitive_on_lines": set(shifted.values()) == lines,
    }
    return VerificationReport.from_checks("translation_action", checks, data={"n": n})


def embed_difference_sets(q0: int, e: int) -> EmbeddedPair:
    """Вложенная пара D0 в Z/n0 и D в Z/n со включением {d n/n0} в D"""
    try:
        prime_power(q0)
    except ValueError:
        raise HypothesisViolated(f"q0={q0} не является степенью простого", {"condition": "prime_power", "q0": q0})
    if q0 % 3 == 1:
        raise HypothesisViolated(f"q0={q0} сравнимо с 1 по модулю 3", {"condition": "q0_mod_3", "q0": q0})
    if e < 1 or e % 3 == 0:
        raise HypothesisViolated(f"e={e} делится на 3 или меньше 1", {"condition": "e_mod_3", "e": e})
    q = q0 ** e
    if q > MAX_SINGER_ORDER:
        raise FieldTooLarge(f"Порядок {q} превышает {MAX_SINGER_ORDER}", {"q": q})

    n0 = q0 * q0 + q0 + 1
    n = q * q + q + 1
    if n % n0 or gcd(n0, q - 1) != 1:
        raise HypothesisViolated("Нарушена делимость n0 | n или gcd(n0, q-1) = 1", {"n0": n0, "n": n})
    scale = n // n0

    pair = _embedded_pair(q0, e, power=1)
    if q0 == 2 and pair.base.D == [0, 1, 5]:
        logger.debug("D0 = {0,1,5}: повторяем построение с a^5")
        pair = _embedded_pair(q0, e, power=5)

    if not (pair.base.verified and pair.big.verified):
        raise HypothesisViolated("Построенные множества не прошли проверку", {"D0": pair.base.D, "D": pair.big.D})
    scaled = {(d * scale) % n for d in pair.base.D}
    if not scaled <= set(pair.big.D):
        raise HypothesisViolated("Масштабированное включение не выполнено", {"scaled": sorted(scaled)})
    logger.info(f"Вложение q0={q0}, e={e}: D0={pair.base.D}, D={pair.big.D}")
    return pair


def _embedded_pair(q0: int, e: int, power: int) -> EmbeddedPair:
    q = q0 ** e
    n0 = q0 * q0 + q0 + 1
    cycle = SingerCycle(q, power)
    F = cycle.field
    # M = (q^3-1)/(q0^3-1) = u * n/n0, u = (q-1)/(q0-1)
    M = (q ** 3 - 1) // (q0 ** 3 - 1)
    u = (q - 1) // (q0 - 1)
    v = pow(u, -1, n0)
    b = F.exp(power * M * v)

    small_scalars = cycle.scalars(q0)
    base_D = []
    for d in range(n0):
        bd = F.pow(b, d)
        if any(F.add(alpha, F.mul(beta, b)) == bd for alpha in small_scalars for beta in small_scalars):
            base_D.append(d)
    big_D = cycle.line_set(b, cycle.scalars(q))

    base = check_difference_set(n0, base_D, source="embedded")
    big = check_difference_set(cycle.n, big_D, source="embedded")
    return EmbeddedPair(base=base, big=big, scale=cycle.n // n0, q0=q0, e=e, generator_power=power)


def embedding_check(pair: EmbeddedPair) -> VerificationReport:
    """Отображение d -> d n/n0 переводит плоскость порядка q0 в подплоскость порядка q с сохранением инцидентности"""
    small = plane_from_difference_set(pair.base)
    big = plane_from_difference_set(pair.big)
    n = pair.big.n
    scale = pair.scale
    point_map: Dict[int, int] = {x: (x * scale) % n for x in small.points}
    line_map: Dict[int, int] = {a: (a * scale) % n for a in small.lines}

    failures: Optional[Dict] = None
    for point, line in small.incidences:
        if not big.incident(point_map[point], line_map[line]):
            failures = {"point": point, "line": line}
            break
    checks = {
        "injective_points": len(set(point_map.values())) == len(point_map),
        "injective_lines": len(set(line_map.values())) == len(line_map),
        "incidence_preserved": failures is None,
    }
    witnesses = {"incidence_preserved": failures} if failures else {}
    return VerificationReport.from_checks("embedding", checks, witnesses=witnesses,
                                          data={"scale": scale, "n0": pair.base.n, "n": n})
