from typing import Optional

from loguru import logger

from errors import InvalidData
from group_engine import abelianization, perfect_check
from handlers import HandlerResult, guarded
from models import VerificationReport
from presentation import (
    EssertData,
    Presentation,
    check_morphism_relators,
    essert_presentation,
    gamma0,
    gamma2,
    lattice_morphism,
    presentation_from_gap,
    presentation_to_gap,
    torsion_census,
    torsion_classify,
)
from services.exotic_service import ExoticService

LATTICES = ("gamma0", "gamma2", "exotic")


class LatticeHandlers:
    """Обработчики команд lattice: представления Эссерта, кручение, гомоморфизмы, группы"""

    def __init__(self, exotic_service: Optional[ExoticService] = None):
        """
        Инициализация обработчиков решеток

        Args:
            exotic_service (Optional[ExoticService]): Сервис экзотических решеток
        """
        self.exotic_service = exotic_service or ExoticService()
        logger.debug("Инициализированы LatticeHandlers")

    def data(self, lattice: str, q: Optional[int] = None) -> EssertData:
        """
        Данные Эссерта по имени решетки

        Args:
            lattice (str): "gamma0", "gamma2" или "exotic"
            q (Optional[int]): Порядок для экзотической решетки
        """
        if lattice == "gamma0":
            return gamma0()
        if lattice == "gamma2":
            return gamma2()
        if lattice == "exotic":
            if q is None:
                raise InvalidData("Для экзотической решетки нужен порядок q", {"lattice": lattice})
            return self.exotic_service.data_for(q)[1]
        raise InvalidData(f"Неизвестная решетка {lattice}", {"lattice": lattice})

    def presentation(self, lattice: str, q: Optional[int] = None, gap_file: Optional[str] = None) -> Presentation:
        if gap_file:
            with open(gap_file, encoding="utf-8") as f:
                return presentation_from_gap(f.read())
        return essert_presentation(self.data(lattice, q))

    @guarded("построения представления")
    def present(self, lattice: str, q: Optional[int] = None, gap: bool = False) -> HandlerResult:
        data = self.data(lattice, q)
        presentation = essert_presentation(data)
        payload = {
            "data": data.to_model().model_dump(mode="json"),
            "presentation": presentation.to_model().model_dump(mode="json"),
            "relators": [presentation.format_word(r) for r in presentation.relators],
        }
        if gap:
            payload["gap"] = presentation_to_gap(presentation)
        return HandlerResult(payload, "pass")

    @guarded("классификации кручения")
    def torsion(self, lattice: str, d: int, e: Optional[int] = None, q: Optional[int] = None) -> HandlerResult:
        """
        Вердикт для sigma0^d sigma1^e или полная перепись по e

        Args:
            lattice (str): Имя решетки
            d (int): Показатель при sigma0, d из D без 0
            e (Optional[int]): Показатель при sigma1 (None - перепись по всем e)
            q (Optional[int]): Порядок для экзотической решетки
        """
        data = self.data(lattice, q)
        if e is not None:
            return HandlerResult(torsion_classify(data, d, e), "pass")
        census = torsion_census(data, d)
        expected = {"finite": 2, "infinite": data.q * data.q + data.q - 1}
        report = VerificationReport.from_checks(
            "torsion_census", {"counts": census == expected},
            data={"d": d, "n": data.n, "census": census, "expected": expected},
        )
        return HandlerResult.from_report(report)

    @guarded("построения гомоморфизма решеток")
    def morphism(self, q: int) -> HandlerResult:
        """
        Гомоморфизм Gamma_0 -> экзотическая решетка порядка q

        Args:
            q (int): Порядок целевой решетки
        """
        source, target = gamma0(), self.data("exotic", q)
        certificate = lattice_morphism(source, target)
        relators = check_morphism_relators(source, target, certificate.scale)
        payload = {"certificate": certificate.model_dump(mode="json"), "relators": relators.model_dump(mode="json")}
        status = "pass" if certificate.valid and relators.passed else "fail"
        return HandlerResult(payload, status, witnesses=relators.witnesses)

    @guarded("вычисления абелианизации")
    def abelianize(self, lattice: str, q: Optional[int] = None, gap_file: Optional[str] = None) -> HandlerResult:
        invariants = abelianization(self.presentation(lattice, q, gap_file))
        logger.info(f"Абелианизация: {invariants.invariant_factors}, свободный ранг {invariants.free_rank}")
        return HandlerResult(invariants, "pass")

    @guarded("проверки совершенности")
    def perfect(self, lattice: str, subgroup: str = "derived", max_cosets: Optional[int] = None,
                q: Optional[int] = None, gap_file: Optional[str] = None) -> HandlerResult:
        """
        Совершенность подгруппы: перечисление классов, Райдемайстер-Шрайер, абелианизация

        Args:
            lattice (str): Имя решетки
            subgroup (str): "derived", "whole" или "trivial"
            max_cosets (Optional[int]): Предел числа смежных классов
            q (Optional[int]): Порядок для экзотической решетки
            gap_file (Optional[str]): Файл с представлением в формате GAP вместо решетки
        """
        presentation = self.presentation(lattice, q, gap_file)
        kwargs = {"max_cosets": max_cosets} if max_cosets else {}
        return HandlerResult.from_report(perfect_check(presentation, subgroup, **kwargs))

    @guarded("построения экзотической решетки")
    def exotic(self, q: int) -> HandlerResult:
        return HandlerResult.from_report(self.exotic_service.construct(q))
