import os
import sys
from loguru import logger

from config import LOG_FILE


# Константы для типов событий логирования
class LogEventType:
    FIELD_BUILT = 'field_built'
    PLANE_BUILT = 'plane_built'
    GROUP_CLOSED = 'group_closed'
    DIFFERENCE_SET_VERIFIED = 'difference_set_verified'

    BALL_BUILT = 'ball_built'
    LINK_CHECKED = 'link_checked'
    COUNTS_MEASURED = 'counts_measured'

    COSET_ENUMERATION_STARTED = 'coset_enumeration_started'
    COSET_ENUMERATION_DONE = 'coset_enumeration_done'

    CERTIFICATE_EMITTED = 'certificate_emitted'
    VERIFICATION_FAILED = 'verification_failed'
    COMMAND_ERROR = 'command_error'


def setup_logger(level: str = "INFO", log_file: str = LOG_FILE):
    """Настройка логирования для CLI: консоль в stderr и файл с ротацией"""
    # Создаем директорию для логов, если она не существует
    log_dir = os.path.dirname(log_file)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)

    logger.remove()
    logger.add(
        sys.stderr,
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <level>{message}</level>",
        level=level.upper()
    )
    logger.add(
        log_file,
        rotation="10 MB",
        retention="1 week",
        level="DEBUG",
        backtrace=True,
        diagnose=True
    )

    logger.debug(f"Настройка логирования завершена, уровень {level.upper()}")

    return logger


def log_event(event_type: str, message: str, **data) -> None:
    """Запись события с типом в структурированном виде"""
    logger.bind(event=event_type, **data).info(f"[{event_type}] {message}")
