import functools
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

from loguru import logger

from errors import ComputationError
from models import Status
from utils.logging_utils import LogEventType, log_event


@dataclass
class HandlerResult:
    """Результат команды: полезная нагрузка, статус и необязательный DOT"""
    payload: Any
    status: Status
    dot: Optional[str] = None
    witnesses: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_report(cls, report, dot: Optional[str] = None) -> "HandlerResult":
        """Статус берется из отчета (VerificationReport или сертификата)"""
        witnesses = getattr(report, "witnesses", None) or {}
        return cls(payload=report, status=report.status, dot=dot, witnesses=witnesses)

    @classmethod
    def from_error(cls, error: ComputationError) -> "HandlerResult":
        return cls(payload=error.to_dict(), status="error", witnesses=error.witness)


def guarded(action: str) -> Callable:
    """Перехват ComputationError: запись в лог и полезная нагрузка со статусом error"""
    def decorator(method: Callable[..., HandlerResult]) -> Callable[..., HandlerResult]:
        @functools.wraps(method)
        def wrapper(*args, **kwargs) -> HandlerResult:
            try:
                return method(*args, **kwargs)
            except ComputationError as e:
                logger.error(f"Ошибка {action}: {e}")
                log_event(LogEventType.COMMAND_ERROR, f"{type(e).__name__} при {action}", error=type(e).__name__)
                return HandlerResult.from_error(e)
        return wrapper
    return decorator
