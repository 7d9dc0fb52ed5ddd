from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from loguru import logger

from config import DEFAULT_THREADS

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> List[R]:
    """Параллельное применение функции с сохранением порядка результатов"""
    items = list(items)
    workers = threads or DEFAULT_THREADS
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    logger.debug(f"Параллельная обработка {len(items)} задач в {workers} потоках")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
