"""
Командная строка: plane, diffset, proj, lattice, building, measure.

Каждая команда печатает JSON-отчет (или пишет его в --out вместе с манифестом
запуска), по запросу пишет DOT (--dot) и завершается с кодом
0 (pass), 1 (fail) или 2 (ошибка или неверные аргументы).
"""
import functools
import time
from typing import Any, Callable, Dict, List, Optional

import click
from loguru import logger

from apartment import Shape, TranslationVec
from config import DEFAULT_MAX_COSETS, LOG_LEVEL, TOOL_VERSION
from handlers import HandlerResult
from handlers.building_handlers import BuildingHandlers
from handlers.diffset_handlers import DiffsetHandlers
from handlers.lattice_handlers import LATTICES, LatticeHandlers
from handlers.measure_handlers import MeasureHandlers
from handlers.plane_handlers import PlaneHandlers
from handlers.proj_handlers import ProjHandlers
from services.report_service import ReportService
from utils.logging_utils import setup_logger


class ShapeType(click.ParamType):
    """Форма 'i,j' с i, j >= 0"""
    name = "shape"

    def convert(self, value, param, ctx) -> Shape:
        if isinstance(value, TranslationVec):
            return value
        try:
            i, j = (int(part) for part in str(value).split(","))
        except ValueError:
            self.fail(f"ожидается форма вида i,j, получено {value!r}", param, ctx)
        if i < 0 or j < 0:
            self.fail(f"форма {value!r} не доминантна", param, ctx)
        return TranslationVec(i, j)


class IntListType(click.ParamType):
    """Список целых через запятую"""
    name = "ints"

    def convert(self, value, param, ctx) -> List[int]:
        if isinstance(value, list):
            return value
        try:
            return [int(part) for part in str(value).split(",") if part.strip()]
        except ValueError:
            self.fail(f"ожидается список целых через запятую, получено {value!r}", param, ctx)


SHAPE = ShapeType()
INT_LIST = IntListType()

_OUTPUT_KEYS = ("out", "dot", "threads", "log_level", "verbose")


def output_options(command: Callable) -> Callable:
    """Общие опции вывода для всех команд"""
    command = click.option("--out", type=click.Path(dir_okay=False), default=None,
                           help="Файл для JSON-отчета (по умолчанию stdout)")(command)
    command = click.option("--dot", type=click.Path(dir_okay=False), default=None,
                           help="Файл для графа в формате DOT")(command)
    command = click.option("--threads", type=click.IntRange(min=1), default=None,
                           help="Число потоков (по умолчанию DEFAULT_THREADS)")(command)
    command = click.option("--log-level", type=click.Choice(
        ["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"], case_sensitive=False),
        default=LOG_LEVEL, help="Уровень логирования")(command)
    command = click.option("-v", "--verbose", is_flag=True,
                           help="Подробный лог (DEBUG), перекрывает --log-level")(command)
    return command


def _jsonable(value: Any) -> Any:
    if isinstance(value, TranslationVec):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def reported(name: str) -> Callable:
    """Замер времени, вызов обработчика, вывод отчета и код выхода"""
    def decorator(command: Callable[..., HandlerResult]) -> Callable:
        @functools.wraps(command)
        def wrapper(**kwargs) -> None:
            options = {key: kwargs.pop(key) for key in _OUTPUT_KEYS}
            setup_logger("DEBUG" if options["verbose"] else options["log_level"])
            logger.debug(f"Команда {name}: {kwargs}")
            started = time.perf_counter()
            result = command(threads=options["threads"], **kwargs)
            elapsed = time.perf_counter() - started
            reporter = ReportService(options["out"], options["dot"])
            parameters: Dict[str, Any] = {k: _jsonable(v) for k, v in kwargs.items()}
            parameters["threads"] = options["threads"]
            code = reporter.emit(name, parameters, result, elapsed)
            click.get_current_context().exit(code)
        return wrapper
    return decorator


@click.group()
@click.version_option(version=TOOL_VERSION)
def cli() -> None:
    """Проективные плоскости, решетки Эссерта и здания типа A2"""


# ----------------------------------------------------------------------
# plane
# ----------------------------------------------------------------------
@cli.group()
def plane() -> None:
    """Конечные проективные плоскости"""


@plane.command("gen")
@click.option("--q", "q", type=int, required=True, help="Порядок плоскости (степень простого)")
@click.option("--source", type=click.Choice(["pg2", "singer"]), default="pg2")
@output_options
@reported("plane gen")
def plane_gen(threads: Optional[int], q: int, source: str) -> HandlerResult:
    return PlaneHandlers().gen(q, source)


@plane.command("check")
@click.option("--q", "q", type=int, required=True)
@click.option("--source", type=click.Choice(["pg2", "singer"]), default="pg2")
@click.option("--compare", is_flag=True, help="Искать изоморфизм с другой моделью плоскости")
@output_options
@reported("plane check")
def plane_check(threads: Optional[int], q: int, source: str, compare: bool) -> HandlerResult:
    return PlaneHandlers().check(q, source, compare)


# ----------------------------------------------------------------------
# diffset
# ----------------------------------------------------------------------
@cli.group()
def diffset() -> None:
    """Планарные разностные множества"""


@diffset.command("singer")
@click.option("--q", "q", type=int, required=True)
@output_options
@reported("diffset singer")
def diffset_singer(threads: Optional[int], q: int) -> HandlerResult:
    return DiffsetHandlers().singer(q)


@diffset.command("check")
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--set", "elements", type=INT_LIST, required=True, help="Элементы через запятую")
@output_options
@reported("diffset check")
def diffset_check(threads: Optional[int], n: int, elements: List[int]) -> HandlerResult:
    return DiffsetHandlers().check(n, elements)


@diffset.command("embed")
@click.option("--q0", type=int, required=True)
@click.option("--e", "e", type=int, required=True)
@output_options
@reported("diffset embed")
def diffset_embed(threads: Optional[int], q0: int, e: int) -> HandlerResult:
    return DiffsetHandlers().embed(q0, e)


@diffset.command("plane")
@click.option("--q", "q", type=int, default=None, help="Взять множество Зингера порядка q")
@click.option("--n", "n", type=click.IntRange(min=1), default=None)
@click.option("--set", "elements", type=INT_LIST, default=None)
@output_options
@reported("diffset plane")
def diffset_plane(threads: Optional[int], q: Optional[int], n: Optional[int],
                  elements: Optional[List[int]]) -> HandlerResult:
    if q is None and (n is None or elements is None):
        raise click.UsageError("нужно указать --q или пару --n и --set")
    return DiffsetHandlers().plane(n, elements, q)


# ----------------------------------------------------------------------
# proj
# ----------------------------------------------------------------------
@cli.group()
def proj() -> None:
    """Группы проективностей PG(2,q)"""


@proj.command("group")
@click.option("--q", "q", type=int, required=True)
@click.option("--kind", type=click.Choice(["point", "line"]), default="point")
@output_options
@reported("proj group")
def proj_group(threads: Optional[int], q: int, kind: str) -> HandlerResult:
    return ProjHandlers(threads).group(q, kind)


@proj.command("classify")
@click.option("--q", "q", type=int, required=True)
@click.option("--kind", type=click.Choice(["point", "line"]), default="point")
@output_options
@reported("proj classify")
def proj_classify(threads: Optional[int], q: int, kind: str) -> HandlerResult:
    return ProjHandlers(threads).classify(q, kind)


@proj.command("nontriv")
@click.option("--q", "q", type=int, required=True)
@click.option("--limit", type=click.IntRange(min=1), default=None, help="Проверить только первые конфигурации")
@output_options
@reported("proj nontriv")
def proj_nontriv(threads: Optional[int], q: int, limit: Optional[int]) -> HandlerResult:
    return ProjHandlers(threads).nontriv(q, limit)


# ----------------------------------------------------------------------
# lattice
# ----------------------------------------------------------------------
@cli.group()
def lattice() -> None:
    """Представления Эссерта, кручение, гомоморфизмы и экзотические решетки"""


def lattice_options(command: Callable) -> Callable:
    command = click.option("--q", "q", type=int, default=None, help="Порядок экзотической решетки")(command)
    command = click.option("--lattice", "name", type=click.Choice(LATTICES), default="gamma0")(command)
    return command


@lattice.command("present")
@lattice_options
@click.option("--gap", is_flag=True, help="Добавить текст представления для GAP")
@output_options
@reported("lattice present")
def lattice_present(threads: Optional[int], name: str, q: Optional[int], gap: bool) -> HandlerResult:
    return LatticeHandlers().present(name, q, gap)


@lattice.command("torsion")
@lattice_options
@click.option("--d", "d", type=int, required=True)
@click.option("--e", "e", type=int, default=None, help="Без --e - перепись по всем e")
@output_options
@reported("lattice torsion")
def lattice_torsion(threads: Optional[int], name: str, q: Optional[int], d: int, e: Optional[int]) -> HandlerResult:
    return LatticeHandlers().torsion(name, d, e, q)


@lattice.command("morphism")
@click.option("--q", "q", type=int, required=True)
@output_options
@reported("lattice morphism")
def lattice_morphism_command(threads: Optional[int], q: int) -> HandlerResult:
    return LatticeHandlers().morphism(q)


@lattice.command("abelianize")
@lattice_options
@click.option("--gap-file", type=click.Path(exists=True, dir_okay=False), default=None)
@output_options
@reported("lattice abelianize")
def lattice_abelianize(threads: Optional[int], name: str, q: Optional[int], gap_file: Optional[str]) -> HandlerResult:
    return LatticeHandlers().abelianize(name, q, gap_file)


@lattice.command("perfect")
@lattice_options
@click.option("--subgroup", type=click.Choice(["derived", "whole", "trivial"]), default="derived")
@click.option("--max-cosets", type=click.IntRange(min=1), default=DEFAULT_MAX_COSETS)
@click.option("--gap-file", type=click.Path(exists=True, dir_okay=False), default=None)
@output_options
@reported("lattice perfect")
def lattice_perfect(threads: Optional[int], name: str, q: Optional[int], subgroup: str,
                    max_cosets: int, gap_file: Optional[str]) -> HandlerResult:
    return LatticeHandlers().perfect(name, subgroup, max_cosets, q, gap_file)


@lattice.command("exotic")
@click.option("--q", "q", type=int, required=True)
@output_options
@reported("lattice exotic")
def lattice_exotic(threads: Optional[int], q: int) -> HandlerResult:
    return LatticeHandlers().exotic(q)


# ----------------------------------------------------------------------
# building
# ----------------------------------------------------------------------
@cli.group()
def building() -> None:
    """Шар здания Брюа-Титса SL3(F_q((t)))"""


def ball_options(command: Callable) -> Callable:
    command = click.option("--r", "r", type=int, required=True, help="Радиус шара")(command)
    command = click.option("--q", "q", type=int, default=2, show_default=True)(command)
    return command


@building.command("ball")
@ball_options
@click.option("--full", is_flag=True, help="Включить вершины, ребра и камеры")
@click.option("--crosscheck", type=click.IntRange(min=0), default=0,
              help="Сверить расстояния первых вершин с элементарными делителями")
@output_options
@reported("building ball")
def building_ball_command(threads: Optional[int], q: int, r: int, full: bool, crosscheck: int) -> HandlerResult:
    return BuildingHandlers(threads).ball_report(q, r, full, crosscheck)


@building.command("sphere")
@ball_options
@click.option("--x", "x", type=int, default=0, show_default=True)
@click.option("--lam", type=SHAPE, required=True)
@output_options
@reported("building sphere")
def building_sphere(threads: Optional[int], q: int, r: int, x: int, lam: Shape) -> HandlerResult:
    return BuildingHandlers(threads).sphere(q, r, x, lam)


@building.command("counts")
@ball_options
@click.option("--x", "x", type=int, default=0, show_default=True)
@click.option("--lam", type=SHAPE, required=True)
@click.option("--basepoints", type=INT_LIST, default=None, help="Вершины для проверки постоянства K")
@click.option("--calibrate", type=SHAPE, default="1,1", show_default=True, help="Форма для измерения K_w, K_+-")
@output_options
@reported("building counts")
def building_counts(threads: Optional[int], q: int, r: int, x: int, lam: Shape,
                    basepoints: Optional[List[int]], calibrate: Shape) -> HandlerResult:
    return BuildingHandlers(threads).counts(q, r, lam, x, basepoints, calibrate)


# ----------------------------------------------------------------------
# measure
# ----------------------------------------------------------------------
@cli.group()
def measure() -> None:
    """Меры на границе на уровне цилиндров"""


def measure_options(command: Callable) -> Callable:
    command = click.option("--lam", type=SHAPE, required=True)(command)
    command = click.option("--x", "x", type=int, default=0, show_default=True)(command)
    return ball_options(command)


def _measure(threads: Optional[int]) -> MeasureHandlers:
    return MeasureHandlers(BuildingHandlers(threads))


@measure.command("table")
@measure_options
@click.option("--no-refine", is_flag=True, help="Не проверять измельчение")
@output_options
@reported("measure table")
def measure_table(threads: Optional[int], q: int, r: int, x: int, lam: Shape, no_refine: bool) -> HandlerResult:
    return _measure(threads).table(q, r, x, lam, refine=not no_refine)


@measure.command("rn")
@measure_options
@click.option("--y", "y", type=int, default=None, help="Вторая базовая точка (по умолчанию первый сосед x)")
@output_options
@reported("measure rn")
def measure_rn(threads: Optional[int], q: int, r: int, x: int, lam: Shape, y: Optional[int]) -> HandlerResult:
    return _measure(threads).rn(q, r, x, lam, y)


@measure.command("beta")
@measure_options
@click.option("--y", "y", type=int, default=None)
@output_options
@reported("measure beta")
def measure_beta(threads: Optional[int], q: int, r: int, x: int, lam: Shape, y: Optional[int]) -> HandlerResult:
    return _measure(threads).beta(q, r, x, lam, y)


@measure.command("mfx")
@measure_options
@output_options
@reported("measure mfx")
def measure_mfx(threads: Optional[int], q: int, r: int, x: int, lam: Shape) -> HandlerResult:
    return _measure(threads).mfx(q, r, x, lam)


@measure.command("pm")
@measure_options
@click.option("--calibrate", type=SHAPE, default="1,1", show_default=True, help="Форма для измерения K1, K2")
@output_options
@reported("measure pm")
def measure_pm(threads: Optional[int], q: int, r: int, x: int, lam: Shape, calibrate: Shape) -> HandlerResult:
    return _measure(threads).pm(q, r, x, lam, calibrate)


@measure.command("disint")
@measure_options
@click.option("--calibrate", type=SHAPE, default="1,1", show_default=True, help="Форма для измерения констант")
@output_options
@reported("measure disint")
def measure_disint(threads: Optional[int], q: int, r: int, x: int, lam: Shape, calibrate: Shape) -> HandlerResult:
    return _measure(threads).disint(q, r, x, lam, calibrate)
