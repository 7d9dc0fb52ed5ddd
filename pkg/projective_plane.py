"""
Конечные проективные плоскости как структуры инцидентности:
комбинаторные проекции, перспективы и группы проективностей.
"""
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

from loguru import logger
from sympy.combinatorics import Permutation, PermutationGroup

from config import MAX_PLANE_ORDER, MAX_PROJECTIVITY_ORDER
from errors import ChainBroken, DegreeTooLarge, FieldTooLarge, InvalidConfiguration, NotOpposite
from finite_field import FiniteField, field_build, prime_power
from models import VerificationReport
from utils.logging_utils import LogEventType, log_event
from utils.parallel_utils import ordered_map

POINT = "point"
LINE = "line"

Vertex = Tuple[str, Hashable]
Flag = Tuple[Hashable, Hashable]
Perm = Tuple[int, ...]


class IncidencePlane:
    """Структура инцидентности точек и прямых с объявленным порядком q"""

    def __init__(self, points: Iterable, lines: Iterable, incidences: Iterable[Flag], order: int, name: str = ""):
        """Инициализация плоскости"""
        self.points = sorted(set(points))
        self.lines = sorted(set(lines))
        self.incidences: FrozenSet[Flag] = frozenset(incidences)
        self.order = order
        self.name = name

        self.points_on: Dict[Hashable, List] = {line: [] for line in self.lines}
        self.lines_through: Dict[Hashable, List] = {point: [] for point in self.points}
        for point, line in sorted(self.incidences):
            self.points_on[line].append(point)
            self.lines_through[point].append(line)

    def __repr__(self) -> str:
        return f"IncidencePlane({self.name or 'plane'}, q={self.order}, points={len(self.points)})"

    def incident(self, point, line) -> bool:
        return (point, line) in self.incidences

    @cached_property
    def _line_sets(self) -> Dict[Hashable, FrozenSet]:
        return {line: frozenset(pts) for line, pts in self.points_on.items()}

    @cached_property
    def _point_sets(self) -> Dict[Hashable, FrozenSet]:
        return {point: frozenset(lns) for point, lns in self.lines_through.items()}

    def join(self, a, b):
        """Прямая через две различные точки (первая в каноническом порядке)"""
        common = self._point_sets[a] & self._point_sets[b]
        if not common:
            raise InvalidConfiguration("Точки не лежат на общей прямой", {"points": [repr(a), repr(b)]})
        return min(common)

    def meet(self, l1, l2):
        """Точка пересечения двух различных прямых"""
        common = self._line_sets[l1] & self._line_sets[l2]
        if not common:
            raise InvalidConfiguration("Прямые не пересекаются", {"lines": [repr(l1), repr(l2)]})
        return min(common)

    def flags(self) -> List[Flag]:
        return sorted(self.incidences)

    def vertices(self) -> List[Vertex]:
        return [(POINT, p) for p in self.points] + [(LINE, l) for l in self.lines]

    def pencil(self, v: Vertex) -> List[Flag]:
        """Ch(v): флаги, содержащие v, в порядке (точка, прямая)"""
        kind, x = v
        if kind == POINT:
            return sorted((x, line) for line in self.lines_through[x])
        return sorted((point, x) for point in self.points_on[x])


# ----------------------------------------------------------------------
# Построение плоскостей
# ----------------------------------------------------------------------
def _normalize(field: FiniteField, vec: Sequence[int]) -> Tuple[int, int, int]:
    lead = next(c for c in vec if c)
    inv = field.inv(lead)
    return tuple(field.mul(c, inv) for c in vec)


def pg2(field: FiniteField) -> IncidencePlane:
    """Дезаргова плоскость PG(2, F_q): нормализованные однородные тройки"""
    q = field.order
    if q > MAX_PLANE_ORDER:
        raise FieldTooLarge(f"Порядок поля {q} превышает {MAX_PLANE_ORDER}", {"q": q})

    triples = [v for v in itertools.product(field.elements(), repeat=3) if any(v)]
    normalized = sorted({_normalize(field, v) for v in triples})

    incidences = []
    for a, b, c in normalized:
        # базис ядра функционала (a, b, c)
        if a:
            inv_a = field.inv(a)
            u = (field.neg(field.mul(b, inv_a)), 1, 0)
            w = (field.neg(field.mul(c, inv_a)), 0, 1)
        elif b:
            u = (1, 0, 0)
            w = (0, field.neg(field.mul(c, field.inv(b))), 1)
        else:
            u, w = (1, 0, 0), (0, 1, 0)
        incidences.append((_normalize(field, u), (a, b, c)))
        for alpha in field.elements():
            vec = tuple(field.add(field.mul(alpha, x), y) for x, y in zip(u, w))
            incidences.append((_normalize(field, vec), (a, b, c)))

    plane = IncidencePlane(normalized, normalized, incidences, q, name=f"PG(2,{q})")
    log_event(LogEventType.PLANE_BUILT, f"Построена плоскость PG(2,{q})", points=len(plane.points))
    return plane


def pg2_of_order(q: int) -> IncidencePlane:
    try:
        p, k = prime_power(q)
    except ValueError as e:
        raise FieldTooLarge(str(e), {"q": q})
    if q > MAX_PLANE_ORDER:
        raise FieldTooLarge(f"Порядок {q} превышает {MAX_PLANE_ORDER}", {"q": q})
    return pg2(field_build(p, k))


# ----------------------------------------------------------------------
# Аксиомы
# ----------------------------------------------------------------------
def _pair_coverage(incident_to: Dict, members_of: Dict, items: List) -> Optional[Dict[str, Any]]:
    """Первая пара элементов, не соединенных ровно одним общим элементом"""
    for a in items:
        counts: Dict[Hashable, int] = {}
        for carrier in incident_to[a]:
            for b in members_of[carrier]:
                if b != a:
                    counts[b] = counts.get(b, 0) + 1
        for b in items:
            if b != a and counts.get(b, 0) != 1:
                return {"pair": [repr(a), repr(b)], "common": counts.get(b, 0)}
    return None


def _find_quadrangle(plane: IncidencePlane) -> Optional[Tuple]:
    def collinear(x, y, z) -> bool:
        return bool(set(plane.lines_through[x]) & set(plane.lines_through[y]) & set(plane.lines_through[z]))

    for quad in itertools.combinations(plane.points, 4):
        if not any(collinear(*triple) for triple in itertools.combinations(quad, 3)):
            return quad
    return None


def check_axioms(plane: IncidencePlane) -> VerificationReport:
    """Проверка трех аксиом проективной плоскости и регулярности порядка q"""
    q = plane.order
    witnesses: Dict[str, Any] = {}

    points_witness = _pair_coverage(plane.lines_through, plane.points_on, plane.points)
    lines_witness = _pair_coverage(plane.points_on, plane.lines_through, plane.lines)
    quadrangle = _find_quadrangle(plane)

    bad_line = next((l for l in plane.lines if len(plane.points_on[l]) != q + 1), None)
    bad_point = next((p for p in plane.points if len(plane.lines_through[p]) != q + 1), None)
    expected = q * q + q + 1

    checks = {
        "two_points_unique_line": points_witness is None,
        "two_lines_unique_point": lines_witness is None,
        "four_points_in_general_position": quadrangle is not None,
        "line_size": bad_line is None,
        "pencil_size": bad_point is None,
        "counts": len(plane.points) == expected and len(plane.lines) == expected,
    }
    if points_witness:
        witnesses["two_points_unique_line"] = points_witness
    if lines_witness:
        witnesses["two_lines_unique_point"] = lines_witness
    if bad_line is not None:
        witnesses["line_size"] = {"line": repr(bad_line), "size": len(plane.points_on[bad_line])}
    if bad_point is not None:
        witnesses["pencil_size"] = {"point": repr(bad_point), "size": len(plane.lines_through[bad_point])}

    report = VerificationReport.from_checks(
        "plane_axioms", checks, witnesses=witnesses,
        data={"order": q, "points": len(plane.points), "lines": len(plane.lines), "incidences": len(plane.incidences)},
    )
    if not report.passed:
        logger.warning(f"Плоскость {plane} не прошла проверку аксиом: {sorted(witnesses)}")
    return report


# ----------------------------------------------------------------------
# Проекции и перспективы
# ----------------------------------------------------------------------
def opposite(plane: IncidencePlane, v: Vertex, w: Vertex) -> bool:
    """Противоположность: точка и прямая без инцидентности"""
    if v[0] == w[0]:
        return False
    point, line = (v[1], w[1]) if v[0] == POINT else (w[1], v[1])
    return not plane.incident(point, line)


def common_opposite(plane: IncidencePlane, v: Vertex, w: Vertex) -> Vertex:
    """Первая вершина, противоположная одновременно v и w (v, w одного типа)"""
    if v[0] != w[0]:
        raise InvalidConfiguration("Вершины разного типа", {"v": repr(v), "w": repr(w)})
    candidates = plane.lines if v[0] == POINT else plane.points
    kind = LINE if v[0] == POINT else POINT
    for c in candidates:
        u = (kind, c)
        if opposite(plane, v, u) and opposite(plane, w, u):
            return u
    raise InvalidConfiguration("Общей противоположной вершины нет", {"v": repr(v), "w": repr(w)})


def combinatorial_projection(plane: IncidencePlane, target: Vertex, source: Vertex, flag: Flag) -> Flag:
    """Флаг из Ch(target), ближайший к флагу flag из Ch(source)"""
    if not opposite(plane, target, source):
        raise NotOpposite("Вершины не противоположны", {"target": repr(target), "source": repr(source)})
    point, line = flag
    if flag not in plane.incidences:
        raise InvalidConfiguration("Флаг не инцидентен", {"flag": repr(flag)})
    if source[0] == LINE:
        if line != source[1]:
            raise InvalidConfiguration("Флаг не содержит исходную вершину", {"flag": repr(flag)})
        return target[1], plane.join(target[1], point)
    if point != source[1]:
        raise InvalidConfiguration("Флаг не содержит исходную вершину", {"flag": repr(flag)})
    return plane.meet(target[1], line), target[1]


def perspectivity_chain(plane: IncidencePlane, vertices: Sequence[Vertex]) -> Perm:
    """[v0; ...; vk] как биекция индексов пучка Ch(v0) -> Ch(vk)"""
    if not vertices:
        raise ChainBroken("Пустая цепочка", {})
    for k, (a, b) in enumerate(zip(vertices, vertices[1:])):
        if not opposite(plane, a, b):
            raise ChainBroken(f"Вершины {k} и {k + 1} не противоположны", {"index": k, "pair": [repr(a), repr(b)]})

    start = plane.pencil(vertices[0])
    current = list(start)
    for a, b in zip(vertices, vertices[1:]):
        current = [combinatorial_projection(plane, b, a, f) for f in current]
    end_index = {f: i for i, f in enumerate(plane.pencil(vertices[-1]))}
    return tuple(end_index[f] for f in current)


def compose(first: Perm, second: Perm) -> Perm:
    """Сначала first, затем second"""
    return tuple(second[i] for i in first)


def invert(perm: Perm) -> Perm:
    out = [0] * len(perm)
    for i, j in enumerate(perm):
        out[j] = i
    return tuple(out)


# ----------------------------------------------------------------------
# Группы проективностей
# ----------------------------------------------------------------------
@dataclass
class ProjectivityGroup:
    base: Vertex
    degree: int
    pencil: List[Flag]
    generators: List[Perm]
    elements: List[Perm]

    @property
    def order(self) -> int:
        return len(self.elements)

    def sympy_group(self) -> PermutationGroup:
        return PermutationGroup([Permutation(list(g)) for g in self.generators] or [Permutation(self.degree - 1)])


def _closure(generators: List[Perm], degree: int) -> List[Perm]:
    identity = tuple(range(degree))
    elements = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for x in frontier:
            for g in generators:
                y = compose(x, g)
                if y not in elements:
                    elements.add(y)
                    fresh.append(y)
        frontier = fresh
    return sorted(elements)


def _perspectivities(plane: IncidencePlane, v: Vertex, v2: Vertex) -> List[Perm]:
    """Различные [v; w; v2] по всем w, противоположным v и v2"""
    kind = LINE if v[0] == POINT else POINT
    candidates = plane.lines if kind == LINE else plane.points
    maps = set()
    for c in candidates:
        w = (kind, c)
        if opposite(plane, v, w) and opposite(plane, v2, w):
            maps.add(perspectivity_chain(plane, [v, w, v2]))
    return sorted(maps)


def projectivity_group(plane: IncidencePlane, v: Vertex, threads: Optional[int] = None) -> ProjectivityGroup:
    """Группа, порожденная проективностями длины 2 и 4 в вершине v, с замыканием"""
    q = plane.order
    if q > MAX_PROJECTIVITY_ORDER:
        raise DegreeTooLarge(f"Порядок плоскости {q} превышает {MAX_PROJECTIVITY_ORDER}", {"q": q})

    same_type = [(v[0], x) for x in (plane.points if v[0] == POINT else plane.lines)]

    def loops_through(v2: Vertex) -> List[Perm]:
        there = _perspectivities(plane, v, v2)
        back = [invert(p) for p in there]
        return sorted({compose(a, b) for a in there for b in back})

    generators = sorted(set(itertools.chain.from_iterable(ordered_map(loops_through, same_type, threads))))
    degree = q + 1
    identity = tuple(range(degree))
    generators = [g for g in generators if g != identity]

    elements = _closure(generators, degree)
    group = ProjectivityGroup(v, degree, plane.pencil(v), generators, elements)

    # порядок по Шрейеру-Симсу должен совпасть с явным замыканием
    if generators and group.sympy_group().order() != len(elements):
        raise ValueError("Замыкание группы проективностей не совпало с порядком Шрейера-Симса")
    log_event(LogEventType.GROUP_CLOSED, f"Группа проективностей в {v!r}: порядок {len(elements)}", degree=degree)
    return group


def _triple_orbit_is_full(group: ProjectivityGroup) -> bool:
    degree = group.degree
    if degree < 3:
        return True
    base = (0, 1, 2)
    orbit = {tuple(g[i] for i in base) for g in group.elements}
    return len(orbit) == degree * (degree - 1) * (degree - 2)


def _normal_subgroups_up_to(stabilizer: PermutationGroup, bound: int) -> List[PermutationGroup]:
    """
    Нормальные подгруппы stabilizer порядка не больше bound.

    Каждая нормальная подгруппа порождается нормальными замыканиями своих
    элементов, поэтому попарные произведения замыканий повторяются до
    неподвижной точки; подгруппы порядка больше bound дальше не участвуют.
    """
    found: Dict[frozenset, PermutationGroup] = {}

    def add(sub: PermutationGroup) -> bool:
        key = frozenset(tuple(p.array_form) for p in sub.generate())
        if key in found or sub.order() > bound:
            return False
        found[key] = sub
        return True

    queue = [stabilizer.normal_closure(element) for element in stabilizer.generate()]
    queue = [sub for sub in queue if add(sub)]
    while queue:
        current = queue.pop()
        for other in list(found.values()):
            joined = PermutationGroup(current.generators + other.generators)
            if add(joined):
                queue.append(joined)
    return list(found.values())


def _is_moufang_set(group: ProjectivityGroup) -> Tuple[bool, Optional[List[Perm]]]:
    """Поиск нормальной подгруппы стабилизатора точки, регулярной на остальных q точках"""
    q = group.degree - 1
    stabilizer = group.sympy_group().stabilizer(0)
    for sub in _normal_subgroups_up_to(stabilizer, q):
        if sub.order() != q:
            continue
        orbit = sub.orbit(1) if q >= 1 else set()
        if set(orbit) == set(range(1, q + 1)):
            return True, sorted(tuple(p.array_form) for p in sub.generate())
    return False, None


def transitivity_report(group: ProjectivityGroup) -> VerificationReport:
    """Степень транзитивности, точная 3-транзитивность и проверка множества Муфанг"""
    q = group.degree - 1
    sym = group.sympy_group()
    degree_of_transitivity = sym.transitivity_degree if group.order > 1 else 0
    three_transitive = _triple_orbit_is_full(group)
    sharp_bound = (q + 1) * q * (q - 1)
    sharply = three_transitive and group.order == sharp_bound
    moufang, root_group = _is_moufang_set(group)

    return VerificationReport(
        kind="transitivity",
        status="pass" if three_transitive else "fail",
        checks={
            "three_transitive": three_transitive,
            "sharply_three_transitive": sharply,
            "moufang_set": moufang,
        },
        data={
            "order": group.order,
            "degree": group.degree,
            "max_transitivity_degree": degree_of_transitivity,
            "sharp_bound": sharp_bound,
            "root_group": [list(p) for p in root_group] if root_group else None,
        },
    )


# ----------------------------------------------------------------------
# Неподвижные точки проективности [v0; v1; v2; v3; v0]
# ----------------------------------------------------------------------
def _adjacent_along(c: Flag, d: Flag) -> Optional[str]:
    """Тип общей панели двух различных флагов (общая точка или общая прямая)"""
    if c == d:
        return None
    if c[0] == d[0]:
        return POINT
    if c[1] == d[1]:
        return LINE
    return None


def _outer_vertex(c: Flag, ci: Flag) -> Vertex:
    """Вершина флага ci, не лежащая в c"""
    return (LINE, ci[1]) if ci[0] == c[0] else (POINT, ci[0])


def nontriv_fixed_point_check(plane: IncidencePlane, c: Flag, ring: Sequence[Flag]) -> List[Flag]:
    """Неподвижные флаги проективности [v0; v1; v2; v3; v0] для конфигурации C, C0..C3"""
    if len(ring) != 4:
        raise InvalidConfiguration("Нужны ровно четыре флага C0..C3", {"count": len(ring)})
    for f in (c, *ring):
        if f not in plane.incidences:
            raise InvalidConfiguration("Флаг не инцидентен", {"flag": repr(f)})
    c0, c1, c2, c3 = ring
    if c0 == c2 or c1 == c3:
        raise InvalidConfiguration("C0 = C2 или C1 = C3", {"ring": [repr(f) for f in ring]})

    panels = [_adjacent_along(c, ci) for ci in ring]
    for i, panel in enumerate(panels):
        if panel is None:
            raise InvalidConfiguration(f"C{i} не смежен с C", {"index": i})
    for i in (0, 2):
        for j in (1, 3):
            if panels[i] == panels[j]:
                raise InvalidConfiguration(
                    f"C{i} и C{j} смежны с C по одной панели", {"pair": [i, j]}
                )

    chain = [_outer_vertex(c, ci) for ci in ring]
    perm = perspectivity_chain(plane, chain + [chain[0]])
    pencil = plane.pencil(chain[0])
    return [pencil[i] for i, j in enumerate(perm) if i == j]


def valid_configurations(plane: IncidencePlane) -> Iterable[Tuple[Flag, Tuple[Flag, Flag, Flag, Flag]]]:
    """Все допустимые конфигурации (C, (C0, C1, C2, C3))"""
    for c in plane.flags():
        point, line = c
        by_point = [(point, l) for l in plane.lines_through[point] if l != line]
        by_line = [(p, line) for p in plane.points_on[line] if p != point]
        for even, odd in ((by_point, by_line), (by_line, by_point)):
            for c0, c2 in itertools.permutations(even, 2):
                for c1, c3 in itertools.permutations(odd, 2):
                    yield c, (c0, c1, c2, c3)
