from math import gcd
from typing import Dict, List, Optional, Tuple

from loguru import logger

from config import DEFAULT_MAX_COSETS, MAX_SINGER_ORDER
from difference_set import embed_difference_sets
from errors import HypothesisViolated
from finite_field import prime_power
from group_engine import abelianization, perfect_check
from models import EmbeddedPair, ExoticCertificate, RationaleLine, VerificationReport
from presentation import (
    EssertData,
    check_morphism_relators,
    essert_presentation,
    exotic_data,
    gamma0,
    lattice_morphism,
)
from utils.logging_utils import LogEventType, log_event


class ExoticService:
    """Сервис построения экзотических панельно-регулярных решеток для q = 2^e"""

    def __init__(self, max_cosets: int = DEFAULT_MAX_COSETS):
        """
        Инициализация сервиса экзотических решеток

        Args:
            max_cosets (int): Предел числа смежных классов для проверки совершенности
        """
        self.max_cosets = max_cosets
        self._gamma0_report: Optional[VerificationReport] = None
        logger.info("Инициализирован ExoticService")

    @staticmethod
    def exponent_of(q: int) -> int:
        """
        Показатель e в q = 2^e с проверкой условий e не делится на 3 и q <= MAX_SINGER_ORDER

        Args:
            q (int): Порядок решетки
        """
        try:
            p, e = prime_power(q)
        except ValueError:
            raise HypothesisViolated(f"q={q} не является степенью простого", {"condition": "power_of_two", "q": q})
        if p != 2:
            raise HypothesisViolated(f"q={q} не является степенью 2", {"condition": "power_of_two", "q": q})
        if e % 3 == 0:
            raise HypothesisViolated(f"q={q} является степенью 8", {"condition": "not_power_of_eight", "q": q, "e": e})
        if q > MAX_SINGER_ORDER:
            raise HypothesisViolated(f"q={q} превышает {MAX_SINGER_ORDER}", {"condition": "q_bound", "q": q})
        return e

    def data_for(self, q: int) -> Tuple[EmbeddedPair, EssertData]:
        """
        Вложенная пара разностных множеств и данные Эссерта с ограничениями на pi1, pi2

        Args:
            q (int): Порядок, степень 2, не являющаяся степенью 8
        """
        e = self.exponent_of(q)
        logger.info(f"Построение экзотической решетки для q={q} (e={e})")
        pair = embed_difference_sets(2, e)
        return pair, exotic_data(q, pair.big.D)

    def gamma0_perfect_report(self) -> VerificationReport:
        """Совершенность коммутанта Gamma_0 (считается один раз на экземпляр сервиса)"""
        if self._gamma0_report is None:
            self._gamma0_report = perfect_check(essert_presentation(gamma0()), "derived", self.max_cosets)
        return self._gamma0_report

    @staticmethod
    def corollary_checks(data: EssertData, n0: int) -> Dict[str, bool]:
        """
        Ограничения на pi1, pi2 в точках n/7 и 3n/7 и взаимная простота n0 и q-1

        Args:
            data (EssertData): Построенные данные Эссерта
            n0 (int): Параметр исходной решетки (7)
        """
        a, b = data.n // 7, 3 * data.n // 7
        pi1, pi2 = data.pi1_map, data.pi2_map
        return {
            "pi1_fixes_n_7": pi1[a] == a,
            "pi1_fixes_3n_7": pi1[b] == b,
            "pi2_swaps": pi2[a] == b and pi2[b] == a,
            "gcd_n0_q_minus_1": gcd(n0, data.q - 1) == 1,
        }

    def construct(self, q: int) -> ExoticCertificate:
        """
        Полный конвейер: вложенные разностные множества, данные Эссерта,
        представление, гомоморфизм из Gamma_0 и обоснование экзотичности

        Args:
            q (int): Порядок, степень 2, не являющаяся степенью 8
        """
        pair, data = self.data_for(q)
        presentation = essert_presentation(data)
        source = gamma0()
        morphism = lattice_morphism(source, data)
        relators = check_morphism_relators(source, data, morphism.scale)

        source_presentation = essert_presentation(source)
        invariants = abelianization(source_presentation)
        perfect = self.gamma0_perfect_report()
        corollary = self.corollary_checks(data, source.n)

        rationale: List[RationaleLine] = [
            RationaleLine(
                tag="COMPUTED",
                statement="Вложенная пара разностных множеств: масштабированное D0 лежит в D",
                value={"D0": pair.base.D, "D": pair.big.D, "scale": pair.scale},
            ),
            RationaleLine(tag="COMPUTED", statement="Ограничения на pi1 и pi2 в точках n/7 и 3n/7", value=corollary),
            RationaleLine(
                tag="COMPUTED",
                statement="Три условия гомоморфизма s_i -> sigma_i^(n/7) выполнены",
                value=morphism.conditions,
            ),
            RationaleLine(
                tag="COMPUTED",
                statement="Подстановка переводит соотношения Gamma_0 в соотношения цели",
                value=relators.checks,
            ),
            RationaleLine(
                tag="COMPUTED",
                statement="Образ гомоморфизма бесконечен: свидетель бесконечного порядка",
                value=morphism.witness.model_dump() if morphism.witness else None,
            ),
            RationaleLine(
                tag="COMPUTED",
                statement="Абелианизация Gamma_0",
                value=invariants.model_dump(),
            ),
            RationaleLine(
                tag="COMPUTED",
                statement="Коммутант Gamma_0 индекса 7 совершенен",
                value=perfect.data | {"perfect": perfect.passed},
            ),
            RationaleLine(tag="CITED", statement="Здание решетки Gamma_0 не является зданием Брюа-Титса"),
            RationaleLine(
                tag="CITED",
                statement="Критерий экзотичности: образ решетки с совершенным коммутантом "
                          "не может быть решеткой Галуа в группе Брюа-Титса",
            ),
            RationaleLine(tag="CITED", statement="Следовательно, здание построенной решетки экзотично"),
        ]

        checks = dict(corollary)
        checks["morphism_valid"] = morphism.valid
        checks["relators_map"] = relators.passed
        checks["gamma0_abelianization_z7"] = invariants.invariant_factors == [7] and invariants.free_rank == 0
        checks["gamma0_derived_perfect"] = perfect.passed
        status = "pass" if all(checks.values()) else "fail"
        if status == "fail":
            failed = sorted(name for name, ok in checks.items() if not ok)
            log_event(LogEventType.VERIFICATION_FAILED, f"Сертификат q={q} не прошел проверки: {failed}", q=q)

        certificate = ExoticCertificate(
            q=q,
            data=data.to_model(),
            presentation=presentation.to_model(),
            morphism=morphism,
            rationale=rationale,
            status=status,
        )
        log_event(LogEventType.CERTIFICATE_EMITTED, f"Сертификат экзотичности для q={q}: {status}", q=q, status=status)
        return certificate
