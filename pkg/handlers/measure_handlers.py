from typing import Optional

from loguru import logger

from apartment import Shape, TranslationVec, length
from boundary_measure import (
    beta_report,
    disintegration_check,
    m_mass_of_Fx,
    measure_constants,
    plus_minus_report,
    refinement_check,
    rn_check,
    visual_table,
)
from building_ball import BuildingBall, germ_through, opposite_germ, sphere
from config import GERM_DEPTH_MARGIN
from handlers import HandlerResult, guarded
from handlers.building_handlers import BuildingHandlers
from models import fraction_str


class MeasureHandlers:
    """Обработчики команд measure: таблицы цилиндров и тождества для мер на границе"""

    def __init__(self, building_handlers: Optional[BuildingHandlers] = None):
        """
        Инициализация обработчиков мер

        Args:
            building_handlers (Optional[BuildingHandlers]): Источник шаров (общий кэш)
        """
        self.building_handlers = building_handlers or BuildingHandlers()
        logger.debug("Инициализированы MeasureHandlers")

    def _ball(self, q: int, r: int, x: int) -> BuildingBall:
        ball = self.building_handlers.ball(q, r)
        self.building_handlers.vertex(ball, x)
        return ball

    def _neighbor(self, ball: BuildingBall, x: int, y: Optional[int]) -> int:
        """Заданная вершина y или первый сосед x"""
        if y is not None:
            return self.building_handlers.vertex(ball, y)
        return ball.neighbors[x][0]

    @guarded("построения таблицы цилиндров")
    def table(self, q: int, r: int, x: int, lam: Shape, refine: bool = True) -> HandlerResult:
        """
        Таблица mu_x(Omega_x(y)) = 1/N_lambda и согласованность с формой lambda + t1

        Args:
            q (int): Порядок
            r (int): Радиус шара
            x (int): Базовая вершина
            lam (Shape): Регулярная форма
            refine (bool): Проверить измельчение на форму lambda + (1,0)
        """
        ball = self._ball(q, r, x)
        table = visual_table(ball, x, lam)
        payload = {"table": table.to_model().model_dump(mode="json")}
        status = "pass" if table.total == 1 else "fail"
        witnesses = {}
        if refine:
            report = refinement_check(ball, x, lam)
            payload["refinement"] = report.model_dump(mode="json")
            witnesses = report.witnesses
            if not report.passed:
                status = "fail"
        return HandlerResult(payload, status, witnesses=witnesses)

    @guarded("проверки производной Радона-Никодима")
    def rn(self, q: int, r: int, x: int, lam: Shape, y: Optional[int] = None) -> HandlerResult:
        ball = self._ball(q, r, x)
        return HandlerResult.from_report(rn_check(ball, x, self._neighbor(ball, x, y), lam))

    @guarded("вычисления beta")
    def beta(self, q: int, r: int, x: int, lam: Shape, y: Optional[int] = None) -> HandlerResult:
        """
        beta на паре противоположных ростков общей плоскости через x и первую вершину V_lambda(x)

        Args:
            q (int): Порядок
            r (int): Радиус шара
            x (int): Базовая вершина ростков
            lam (Shape): Форма, задающая направление ростка
            y (Optional[int]): Вторая базовая точка (по умолчанию первый сосед x)
        """
        ball = self._ball(q, r, x)
        target = sphere(ball, x, lam)[0]
        germ = germ_through(ball, x, target, length(lam) + GERM_DEPTH_MARGIN)
        report = beta_report(ball, x, self._neighbor(ball, x, y), germ, opposite_germ(germ))
        report.data["direction"] = target
        return HandlerResult.from_report(report)

    @guarded("вычисления массы F'_x")
    def mfx(self, q: int, r: int, x: int, lam: Shape) -> HandlerResult:
        return HandlerResult.from_report(m_mass_of_Fx(self._ball(q, r, x), x, lam))

    @guarded("построения проекций mu_+-")
    def pm(self, q: int, r: int, x: int, lam: Shape, calibrate: Shape = TranslationVec(1, 1)) -> HandlerResult:
        """
        Проекции mu_+- с K1, K2, измеренными на форме calibrate

        Args:
            q (int): Порядок
            r (int): Радиус шара
            x (int): Базовая вершина
            lam (Shape): Проверяемая регулярная форма
            calibrate (Shape): Форма, на которой измеряются константы
        """
        ball = self._ball(q, r, x)
        constants = measure_constants(ball, x, calibrate)
        return HandlerResult.from_report(plus_minus_report(ball, x, lam, constants))

    @guarded("проверки дезинтеграции")
    def disint(self, q: int, r: int, x: int, lam: Shape, calibrate: Shape = TranslationVec(1, 1)) -> HandlerResult:
        """
        Тождество дезинтеграции с константами K, K1, K2, K_+-, K', измеренными на форме calibrate

        Args:
            q (int): Порядок
            r (int): Радиус шара
            x (int): Базовая вершина
            lam (Shape): Проверяемая регулярная форма
            calibrate (Shape): Форма, на которой измеряются константы
        """
        ball = self._ball(q, r, x)
        constants = measure_constants(ball, x, calibrate)
        logger.info(f"K' = {fraction_str(constants.k_prime)} по форме {calibrate}")
        return HandlerResult.from_report(disintegration_check(ball, x, lam, constants))
