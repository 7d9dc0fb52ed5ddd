from typing import Any, Dict

from loguru import logger

from difference_set import plane_from_difference_set, singer_difference_set
from handlers import HandlerResult, guarded
from projective_plane import IncidencePlane, check_axioms, pg2_of_order
from utils.graph_utils import incidence_graph, plane_isomorphism, to_dot


def _label(item: Any) -> Any:
    return list(item) if isinstance(item, tuple) else item


def plane_to_dict(plane: IncidencePlane) -> Dict[str, Any]:
    return {
        "name": plane.name,
        "order": plane.order,
        "points": [_label(p) for p in plane.points],
        "lines": [_label(l) for l in plane.lines],
        "incidences": [[_label(p), _label(l)] for p, l in plane.flags()],
    }


class PlaneHandlers:
    """Обработчики команд plane: построение и проверка плоскостей"""

    def __init__(self):
        """Инициализация обработчиков плоскостей"""
        logger.debug("Инициализированы PlaneHandlers")

    @staticmethod
    def build(q: int, source: str) -> IncidencePlane:
        if source == "singer":
            return plane_from_difference_set(singer_difference_set(q))
        return pg2_of_order(q)

    @guarded("построения плоскости")
    def gen(self, q: int, source: str = "pg2") -> HandlerResult:
        """
        Построение плоскости порядка q и проверка аксиом

        Args:
            q (int): Порядок плоскости
            source (str): "pg2" - дезаргова плоскость, "singer" - плоскость разностного множества
        """
        plane = self.build(q, source)
        report = check_axioms(plane)
        payload = {"plane": plane_to_dict(plane), "axioms": report.model_dump(mode="json")}
        return HandlerResult(payload, report.status, dot=to_dot(incidence_graph(plane), name=f"plane_{source}_{q}"),
                             witnesses=report.witnesses)

    @guarded("проверки плоскости")
    def check(self, q: int, source: str = "pg2", compare: bool = False) -> HandlerResult:
        """
        Проверка аксиом; при compare - поиск изоморфизма PG(2,q) с плоскостью Зингера

        Args:
            q (int): Порядок плоскости
            source (str): Источник плоскости
            compare (bool): Сравнить PG(2,q) и плоскость разностного множества
        """
        plane = self.build(q, source)
        report = check_axioms(plane)
        if compare:
            other = self.build(q, "singer" if source == "pg2" else "pg2")
            found = plane_isomorphism(plane, other) is not None
            report.checks["isomorphic_to_other_model"] = found
            if not found:
                report.status = "fail"
            logger.info(f"Изоморфизм {plane.name} и {other.name}: {found}")
        return HandlerResult.from_report(report, dot=to_dot(incidence_graph(plane), name=f"plane_{source}_{q}"))
