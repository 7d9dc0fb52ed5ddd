"""
Модели отчетов и сертификатов (pydantic v2). Все, что попадает в JSON.
"""
import json
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer

Status = Literal["pass", "fail", "error"]


def fraction_str(value: Fraction) -> str:
    """Точное рациональное число в виде 'p/q'"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def to_json(model: BaseModel) -> str:
    """Детерминированная сериализация: отсортированные ключи, без временных меток"""
    return json.dumps(model.model_dump(mode="json"), sort_keys=True, indent=2, ensure_ascii=False)


class VerificationReport(BaseModel):
    """Отчет проверки: статус, результаты отдельных проверок и свидетельства"""
    kind: str
    status: Status
    checks: Dict[str, bool] = Field(default_factory=dict)
    witnesses: Dict[str, Any] = Field(default_factory=dict)
    data: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_checks(cls, kind: str, checks: Dict[str, bool], **kwargs) -> "VerificationReport":
        status = "pass" if all(checks.values()) else "fail"
        return cls(kind=kind, status=status, checks=checks, **kwargs)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


class DifferenceSetRecord(BaseModel):
    n: int
    D: List[int]
    source: Literal["singer", "user", "embedded"] = "user"
    verified: bool = False
    witness: Optional[Dict[str, Any]] = None

    @property
    def order(self) -> int:
        """Порядок плоскости q = |D| - 1"""
        return len(self.D) - 1


class EmbeddedPair(BaseModel):
    base: DifferenceSetRecord
    big: DifferenceSetRecord
    scale: int
    q0: int
    e: int
    generator_power: int = 1


class EssertDataModel(BaseModel):
    q: int
    n: int
    D: List[int]
    pi1: Dict[int, int]
    pi2: Dict[int, int]


class PresentationModel(BaseModel):
    generators: List[str]
    relators: List[List[Tuple[int, int]]]


class TorsionVerdict(BaseModel):
    d: int
    e: int
    word: List[Tuple[int, int]]
    verdict: Literal["finite", "infinite"]
    justification: str


class MorphismCertificate(BaseModel):
    source: EssertDataModel
    target: EssertDataModel
    scale: int
    conditions: Dict[str, bool]
    failed_witness: Optional[Dict[str, Any]] = None
    assignment: Dict[str, List[Tuple[int, int]]] = Field(default_factory=dict)
    witness: Optional[TorsionVerdict] = None
    valid: bool = False


class AbelianInvariants(BaseModel):
    invariant_factors: List[int]
    free_rank: int

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    @property
    def order(self) -> Optional[int]:
        """Порядок группы, если она конечна"""
        if self.free_rank:
            return None
        result = 1
        for d in self.invariant_factors:
            result *= d
        return result


class RationaleLine(BaseModel):
    tag: Literal["COMPUTED", "CITED"]
    statement: str
    value: Optional[Any] = None


class ExoticCertificate(BaseModel):
    q: int
    data: EssertDataModel
    presentation: PresentationModel
    morphism: MorphismCertificate
    rationale: List[RationaleLine]
    status: Status


class CylinderTableModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    basepoint: str
    depth: Tuple[int, int]
    masses: Dict[str, Fraction]
    total: Fraction

    @field_serializer("masses")
    def _serialize_masses(self, masses: Dict[str, Fraction]) -> Dict[str, str]:
        return {k: fraction_str(v) for k, v in masses.items()}

    @field_serializer("total")
    def _serialize_total(self, total: Fraction) -> str:
        return fraction_str(total)


class WeylCounts(BaseModel):
    """Числа |Y_w| на двух соседних глубинах ростка"""
    shape: Tuple[int, int]
    depths: List[int]
    by_position: Dict[str, int]
    conjugated: Dict[str, int]
    deeper: Dict[str, int]
    stable: bool


class RunManifest(BaseModel):
    command: str
    parameters: Dict[str, Any]
    tool_version: str
    elapsed_seconds: float
    outputs: List[str]
    status: Status
    witnesses: Dict[str, Any] = Field(default_factory=dict)
