from typing import Optional

from loguru import logger

from handlers import HandlerResult, guarded
from models import VerificationReport
from projective_plane import (
    POINT,
    nontriv_fixed_point_check,
    pg2_of_order,
    projectivity_group,
    transitivity_report,
    valid_configurations,
)


class ProjHandlers:
    """Обработчики команд proj: группы проективностей и неподвижные точки"""

    def __init__(self, threads: Optional[int] = None):
        """
        Инициализация обработчиков проективностей

        Args:
            threads (Optional[int]): Число потоков для перебора перспектив
        """
        self.threads = threads
        logger.debug(f"Инициализированы ProjHandlers, потоков: {threads}")

    def _group(self, q: int, kind: str):
        plane = pg2_of_order(q)
        base = (kind, plane.points[0] if kind == POINT else plane.lines[0])
        return projectivity_group(plane, base, self.threads)

    @guarded("построения группы проективностей")
    def group(self, q: int, kind: str = POINT) -> HandlerResult:
        """
        Группа проективностей в первой вершине заданного типа

        Args:
            q (int): Порядок плоскости PG(2,q)
            kind (str): "point" или "line"
        """
        group = self._group(q, kind)
        payload = {
            "q": q,
            "base": [group.base[0], list(group.base[1])],
            "degree": group.degree,
            "order": group.order,
            "generators": [list(g) for g in group.generators],
        }
        return HandlerResult(payload, "pass")

    @guarded("классификации группы проективностей")
    def classify(self, q: int, kind: str = POINT) -> HandlerResult:
        report = transitivity_report(self._group(q, kind))
        report.data["q"] = q
        return HandlerResult.from_report(report)

    @guarded("проверки неподвижных точек")
    def nontriv(self, q: int, limit: Optional[int] = None) -> HandlerResult:
        """
        Для всех допустимых конфигураций неподвижное множество проективности
        [v0; v1; v2; v3; v0] равно {C0}

        Args:
            q (int): Порядок плоскости PG(2,q)
            limit (Optional[int]): Проверить только первые limit конфигураций
        """
        plane = pg2_of_order(q)
        checked, failures = 0, []
        for c, ring in valid_configurations(plane):
            if limit is not None and checked >= limit:
                break
            fixed = nontriv_fixed_point_check(plane, c, ring)
            checked += 1
            if fixed != [ring[0]]:
                failures.append({"C": repr(c), "ring": [repr(f) for f in ring], "fixed": [repr(f) for f in fixed]})
        logger.info(f"Проверено конфигураций: {checked}, нарушений: {len(failures)}")
        report = VerificationReport.from_checks(
            "nontriv_fixed_points",
            {"fixed_set_is_C0": not failures, "configurations_found": checked > 0},
            witnesses={"fixed_set_is_C0": failures[:5]} if failures else {},
            data={"q": q, "configurations": checked, "exhaustive": limit is None},
        )
        return HandlerResult.from_report(report)
