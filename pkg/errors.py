"""
Иерархия исключений вычислительного ядра.

Каждое исключение может нести свидетельство (witness) - словарь с данными,
которые попадают в JSON-отчет об ошибке.
"""
from typing import Any, Dict, Optional


class ComputationError(Exception):
    """Базовое исключение всех модулей"""

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.witness = witness or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": str(self), "witness": self.witness}


# Точная алгебра
class NonPrimeCharacteristic(ComputationError):
    pass


class DegreeTooLarge(ComputationError):
    pass


class SingularMatrix(ComputationError):
    pass


class InsufficientPrecision(ComputationError):
    pass


# Проективные плоскости
class FieldTooLarge(ComputationError):
    pass


class NotOpposite(ComputationError):
    pass


class ChainBroken(ComputationError):
    pass


class InvalidConfiguration(ComputationError):
    pass


# Разностные множества
class UnverifiedInput(ComputationError):
    pass


class HypothesisViolated(ComputationError):
    pass


# Здание
class SizeGuardExceeded(ComputationError):
    pass


class SphereTruncated(ComputationError):
    pass


class GermTooShallow(ComputationError):
    pass


class GermNotBased(ComputationError):
    pass


class NoCommonFlat(ComputationError):
    pass


class NotRegular(ComputationError):
    pass


# Представления решеток
class InvalidData(ComputationError):
    pass


class ZeroD(ComputationError):
    pass


class ConditionFailed(ComputationError):
    pass


# Группы
class CosetLimitExceeded(ComputationError):
    pass


class IncompleteTable(ComputationError):
    pass
