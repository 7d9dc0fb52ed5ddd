from typing import Optional, Sequence

from loguru import logger

from difference_set import (
    check_difference_set,
    embed_difference_sets,
    embedding_check,
    plane_from_difference_set,
    singer_difference_set,
    translation_action_report,
)
from handlers import HandlerResult, guarded
from handlers.plane_handlers import plane_to_dict
from projective_plane import check_axioms
from utils.graph_utils import incidence_graph, to_dot


class DiffsetHandlers:
    """Обработчики команд diffset: разностные множества и их плоскости"""

    def __init__(self):
        """Инициализация обработчиков разностных множеств"""
        logger.debug("Инициализированы DiffsetHandlers")

    @guarded("построения множества Зингера")
    def singer(self, q: int) -> HandlerResult:
        record = singer_difference_set(q)
        return HandlerResult(record, "pass" if record.verified else "fail",
                             witnesses={"witness": record.witness} if record.witness else {})

    @guarded("проверки разностного множества")
    def check(self, n: int, elements: Sequence[int]) -> HandlerResult:
        """
        Проверка единственности представления разностей

        Args:
            n (int): Модуль
            elements (Sequence[int]): Элементы множества
        """
        record = check_difference_set(n, elements)
        if not record.verified:
            logger.warning(f"{record.D} не является разностным множеством в Z/{n}")
        return HandlerResult(record, "pass" if record.verified else "fail",
                             witnesses={"witness": record.witness} if record.witness else {})

    @guarded("вложения разностных множеств")
    def embed(self, q0: int, e: int) -> HandlerResult:
        """
        Вложенная пара D0 в Z/n0 и D в Z/n с проверкой вложения плоскостей

        Args:
            q0 (int): Порядок меньшей плоскости
            e (int): Показатель, q = q0^e
        """
        pair = embed_difference_sets(q0, e)
        report = embedding_check(pair)
        payload = {"pair": pair.model_dump(mode="json"), "embedding": report.model_dump(mode="json")}
        return HandlerResult(payload, report.status, witnesses=report.witnesses)

    @guarded("построения плоскости разностного множества")
    def plane(self, n: Optional[int] = None, elements: Optional[Sequence[int]] = None,
              q: Optional[int] = None) -> HandlerResult:
        """
        Плоскость P(Z/n, D): аксиомы и действие сдвигов

        Args:
            n (Optional[int]): Модуль явного множества
            elements (Optional[Sequence[int]]): Явное множество
            q (Optional[int]): Вместо явного множества взять множество Зингера порядка q
        """
        record = singer_difference_set(q) if q is not None else check_difference_set(n, elements)
        plane = plane_from_difference_set(record)
        axioms = check_axioms(plane)
        action = translation_action_report(record)
        payload = {
            "record": record.model_dump(mode="json"),
            "plane": plane_to_dict(plane),
            "axioms": axioms.model_dump(mode="json"),
            "translations": action.model_dump(mode="json"),
        }
        status = "pass" if axioms.passed and action.passed else "fail"
        return HandlerResult(payload, status, dot=to_dot(incidence_graph(plane), name=f"diffset_{record.n}"),
                             witnesses={**axioms.witnesses, **action.witnesses})
