from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from loguru import logger

from apartment import Shape, TranslationVec, WeylElt, length, shapes_of_length
from building_ball import (
    BuildingBall,
    ball_to_dict,
    ball_to_dot,
    build_ball,
    count_Yw,
    count_Z,
    distance_crosscheck,
    link_report,
    measure_count_constants,
    sector_germ,
    shape_census,
    sphere,
    sphere_is_complete,
)
from errors import SizeGuardExceeded
from handlers import HandlerResult, guarded
from models import VerificationReport, fraction_str


class BuildingHandlers:
    """Обработчики команд building: шар здания, сферы и числа Y_w, Z_+-"""

    def __init__(self, threads: Optional[int] = None):
        """
        Инициализация обработчиков здания

        Args:
            threads (Optional[int]): Число потоков для построения шара
        """
        self.threads = threads
        self._balls: Dict[Tuple[int, int], BuildingBall] = {}
        logger.debug(f"Инициализированы BuildingHandlers, потоков: {threads}")

    def ball(self, q: int, r: int) -> BuildingBall:
        """
        Шар из кэша или новое построение

        Args:
            q (int): Порядок (простое число из BALL_ORDERS)
            r (int): Радиус
        """
        key = (q, r)
        if key not in self._balls:
            self._balls[key] = build_ball(q, r, self.threads)
        return self._balls[key]

    @staticmethod
    def vertex(ball: BuildingBall, x: int) -> int:
        if not 0 <= x < ball.size:
            raise SizeGuardExceeded(f"Вершины {x} нет в шаре из {ball.size} вершин", {"x": x, "size": ball.size})
        return x

    @guarded("построения шара")
    def ball_report(self, q: int, r: int, full: bool = False, crosscheck: int = 0) -> HandlerResult:
        """
        Построение шара, проверка звеньев и перепись сфер вокруг o

        Args:
            q (int): Порядок
            r (int): Радиус
            full (bool): Включить в отчет все вершины, ребра и камеры
            crosscheck (int): Сколько вершин сверить с элементарными делителями над F_q((t))
        """
        ball = self.ball(q, r)
        links = link_report(ball)
        payload = {
            "q": q,
            "radius": r,
            "vertices": ball.size,
            "edges": len(ball.edges()),
            "chambers": len(ball.chambers),
            "census": shape_census(ball, ball.origin),
            "links": links.model_dump(mode="json"),
        }
        status = links.status
        if crosscheck:
            pairs = [(ball.origin, y) for y in range(min(crosscheck, ball.size))]
            check = distance_crosscheck(ball, pairs)
            payload["crosscheck"] = check.model_dump(mode="json")
            if not check.passed:
                status = "fail"
        if full:
            payload["ball"] = ball_to_dict(ball)
        return HandlerResult(payload, status, dot=ball_to_dot(ball), witnesses=links.witnesses)

    @guarded("построения сферы")
    def sphere(self, q: int, r: int, x: int, lam: Shape) -> HandlerResult:
        """
        Сфера V_lambda(x) и отношение N_lambda / q^(2 l(lambda))

        Args:
            q (int): Порядок
            r (int): Радиус шара
            x (int): Номер вершины
            lam (Shape): Доминантная форма
        """
        ball = self.ball(q, r)
        vertices = sphere(ball, self.vertex(ball, x), lam)
        payload = {
            "x": x,
            "shape": str(lam),
            "size": len(vertices),
            "ratio": fraction_str(Fraction(len(vertices), q ** (2 * length(lam)))),
            "vertices": vertices,
        }
        return HandlerResult(payload, "pass")

    def k_constant(self, ball: BuildingBall, basepoints: Sequence[int]) -> VerificationReport:
        """N_lambda / q^(2 l(lambda)) одинаково для всех регулярных форм и базовых точек"""
        values: Dict[str, str] = {}
        for x in basepoints:
            for n in range(2, ball.radius + 1):
                for lam in shapes_of_length(n):
                    if lam.is_regular and sphere_is_complete(ball, x, lam):
                        ratio = Fraction(len(sphere(ball, x, lam)), ball.q ** (2 * n))
                        values[f"{x}:{lam}"] = fraction_str(ratio)
        constants = sorted(set(values.values()))
        return VerificationReport.from_checks(
            "k_constant", {"single_constant": len(constants) <= 1},
            witnesses={"single_constant": values} if len(constants) > 1 else {},
            data={"K": constants[0] if len(constants) == 1 else None, "values": values},
        )

    @guarded("подсчета Y_w и Z_+-")
    def counts(self, q: int, r: int, lam: Shape, x: int = 0, basepoints: Optional[List[int]] = None,
               calibrate: Shape = TranslationVec(1, 1)) -> HandlerResult:
        """
        Числа |Y_w^lambda| для ростка в базисе x, |Z_+-| и постоянство K

        Args:
            q (int): Порядок
            r (int): Радиус шара
            lam (Shape): Доминантная форма
            x (int): Базовая вершина
            basepoints (Optional[List[int]]): Вершины для проверки постоянства K
            calibrate (Shape): Регулярная форма, на которой измеряются K_w и K_+-
        """
        ball = self.ball(q, r)
        x = self.vertex(ball, x)
        constants = measure_count_constants(ball, x, calibrate)
        germ = sector_germ(ball, x, length(lam) + 1)
        counts = count_Yw(ball, x, germ, lam)
        expected = constants.predicted_Yw(q, lam)
        off_law = {w: counts.by_position[w] for w, n in expected.items() if counts.by_position[w] != n}

        checks = {
            "identity_one": counts.by_position[WeylElt.E.value] == 1,
            "power_laws": not off_law,
            "stable": counts.stable,
        }
        witnesses: Dict[str, Any] = {}
        if off_law:
            witnesses["power_laws"] = off_law
        payload = {
            "counts": counts.model_dump(mode="json"),
            "constants": constants.to_dict(),
            "expected": {w: fraction_str(n) for w, n in expected.items()},
        }

        if lam.is_regular:
            cells = sphere(ball, x, lam)
            z_values = sorted({count_Z(ball, x, y) for y in cells})
            checks["z_counts"] = z_values == [constants.predicted_Z(q, lam)]
            if not checks["z_counts"]:
                witnesses["z_counts"] = [list(z) for z in z_values]
            payload["z_counts"] = [list(z) for z in z_values]

        k_report = self.k_constant(ball, [self.vertex(ball, b) for b in (basepoints or [x])])
        checks["k_constant"] = k_report.passed
        payload["k_constant"] = k_report.model_dump(mode="json")

        report = VerificationReport.from_checks("building_counts", checks, witnesses=witnesses, data=payload)
        logger.info(f"Числа для {lam} в вершине {x}: {report.status}")
        return HandlerResult.from_report(report)
