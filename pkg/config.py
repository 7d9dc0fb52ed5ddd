import os
import sys
from dotenv import load_dotenv
from loguru import logger

# Загружаем переменные окружения из .env файла
load_dotenv()

# Окружение влияет только на логирование и число потоков, но не на сертификаты
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
LOG_FILE = os.getenv("LOG_FILE", "logs/buildings.log")

if LOG_LEVEL not in ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"):
    raise ValueError(f"Недопустимое значение LOG_LEVEL: {LOG_LEVEL}")

# Настройка логирования (stdout занят JSON-отчетами, поэтому консольный вывод в stderr)
logger.remove()
logger.add(
    sys.stderr,
    format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>",
    level=LOG_LEVEL
)
logger.add(
    LOG_FILE,
    rotation="10 MB",
    retention="1 week",
    format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}",
    level="DEBUG"
)

_threads = os.getenv("DEFAULT_THREADS")
if _threads:
    try:
        DEFAULT_THREADS = int(_threads)
    except ValueError:
        logger.error(f"DEFAULT_THREADS должен быть целым числом, получено: {_threads}")
        raise ValueError(f"DEFAULT_THREADS должен быть целым числом, получено: {_threads}")
else:
    DEFAULT_THREADS = os.cpu_count() or 1

# Версия инструмента (попадает в манифест запуска, но не в полезную нагрузку)
TOOL_VERSION = "0.4.0"

# Ограничения точной алгебры
MAX_FIELD_ORDER = 2 ** 20  # p^k для field_build
TABLE_FIELD_ORDER = 2 ** 16  # выше этого порядка умножение без таблиц логарифмов

# Проективные плоскости и разностные множества
MAX_PLANE_ORDER = 64  # pg2
MAX_SINGER_ORDER = 32  # singer_difference_set, embed_difference_sets
MAX_PROJECTIVITY_ORDER = 9  # projectivity_group

# Здание Брюа-Титса
BALL_ORDERS = (2, 3)
MAX_BALL_RADIUS = 4
DEFAULT_PRECISION_SLOPE = 4  # точность N = 4*r + 8
DEFAULT_PRECISION_OFFSET = 8
GERM_DEPTH_MARGIN = 2  # глубина ростка по умолчанию: l(lambda) + 2

# Перечисление смежных классов
DEFAULT_MAX_COSETS = 10 ** 6
