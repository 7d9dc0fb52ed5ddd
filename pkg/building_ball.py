"""
Шар здания Брюа-Титса группы SL3(F_q((t))), q простое.

Вершина - класс гомотетии решетки, заданный примитивной столбцовой формой
Эрмита над F_q[t]: верхнетреугольная матрица с диагональю t^e и
внедиагональными элементами строки i степени меньше e_i. Тип вершины равен
сумме показателей e по модулю 3.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx
from loguru import logger

from apartment import (
    DIAGONAL,
    Shape,
    TranslationVec,
    WeylElt,
    dominant,
    length,
    shapes_of_length,
    weyl_apply,
    weyl_conjugate_by_w0,
)
from config import BALL_ORDERS, DEFAULT_PRECISION_OFFSET, DEFAULT_PRECISION_SLOPE, MAX_BALL_RADIUS
from dvr import (
    ONE,
    ZERO as POLY_ZERO,
    DVRMatrix,
    PolyMatrix,
    dvr_elementary_divisors,
    hermite_form,
    poly_add,
    poly_matrix_adjugate,
    poly_matrix_minval,
    poly_matrix_mul,
    poly_scale,
    poly_shift,
    poly_smith_form,
    poly_val,
)
from errors import GermNotBased, GermTooShallow, NoCommonFlat, NotRegular, SizeGuardExceeded, SphereTruncated
from finite_field import field_build
from models import VerificationReport, WeylCounts, fraction_str
from projective_plane import IncidencePlane, check_axioms, pg2
from utils.graph_utils import to_dot, typed_graph
from utils.logging_utils import LogEventType, log_event
from utils.parallel_utils import ordered_map


# ----------------------------------------------------------------------
# Решетки
# ----------------------------------------------------------------------
def _columns(m: PolyMatrix) -> List[List[Tuple[int, ...]]]:
    return [[m[r][c] for r in range(3)] for c in range(3)]


def _from_columns(cols: Sequence[Sequence[Tuple[int, ...]]]) -> PolyMatrix:
    return tuple(tuple(cols[c][r] for c in range(3)) for r in range(3))


def lattice_class(columns: List[List[Tuple[int, ...]]], p: int) -> PolyMatrix:
    """Каноническая форма класса гомотетии: форма Эрмита, деленная на t, пока это возможно"""
    m = hermite_form(columns, p)
    while all(entry[0] == 0 for row in m for entry in row if entry):
        m = tuple(tuple(entry[1:] for entry in row) for row in m)
    return m


def exponents(m: PolyMatrix) -> Tuple[int, int, int]:
    return tuple(len(m[i][i]) - 1 for i in range(3))


def vertex_type(m: PolyMatrix) -> int:
    return sum(exponents(m)) % 3


@lru_cache(maxsize=None)
def _invariants(m: PolyMatrix, p: int) -> Tuple[PolyMatrix, int]:
    """Присоединенная матрица и нормирование определителя"""
    return poly_matrix_adjugate(m, p), sum(exponents(m))


def lattice_distance(bx: PolyMatrix, by: PolyMatrix, p: int) -> Shape:
    """
    Векторное расстояние по нормированиям инвариантных множителей (a >= b >= c)
    матрицы перехода bx^-1 * by: форма (a - b, b - c)
    """
    adj_x, ex = _invariants(bx, p)
    adj_y, ey = _invariants(by, p)
    low = poly_matrix_minval(poly_matrix_mul(adj_x, by, p)) - ex
    high = -(poly_matrix_minval(poly_matrix_mul(adj_y, bx, p)) - ey)
    middle = (ey - ex) - low - high
    return TranslationVec(high - middle, middle - low)


def diagonal_lattice(exps: Sequence[int]) -> PolyMatrix:
    """Класс решетки diag(t^e0, t^e1, t^e2) * L0"""
    base = min(exps)
    return tuple(
        tuple(poly_shift(ONE, exps[r] - base) if r == c else POLY_ZERO for c in range(3))
        for r in range(3)
    )


# ----------------------------------------------------------------------
# Шар
# ----------------------------------------------------------------------
@lru_cache(maxsize=None)
def _subspaces(p: int) -> Tuple[Tuple[Tuple[int, int, int], ...], ...]:
    """Собственные ненулевые подпространства F_p^3: базисы прямых, затем плоскостей"""
    plane = pg2(field_build(p, 1))
    lines = tuple((point,) for point in plane.points)
    planes = tuple(tuple(plane.points_on[line][:2]) for line in plane.lines)
    return lines + planes


def lattice_neighbors(m: PolyMatrix, p: int) -> List[PolyMatrix]:
    """Соседи tL < L' < L: L' = B*U + t*L для собственных подпространств U"""
    cols = _columns(m)
    shifted = [[poly_shift(entry, 1) for entry in col] for col in cols]
    result = []
    for basis in _subspaces(p):
        generators = []
        for u in basis:
            vec = [POLY_ZERO] * 3
            for k, coeff in enumerate(u):
                if coeff:
                    vec = [poly_add(vec[r], poly_scale(cols[k][r], coeff, p), p) for r in range(3)]
            generators.append(vec)
        result.append(lattice_class(generators + [list(c) for c in shifted], p))
    return result


@dataclass
class BuildingBall:
    """Шар радиуса r вокруг o = [L0] с типизированной смежностью и камерами"""
    q: int
    radius: int
    vertices: List[PolyMatrix]
    index: Dict[PolyMatrix, int]
    depth: List[int]
    types: List[int]
    neighbors: List[List[int]]
    chambers: List[Tuple[int, int, int]] = field(default_factory=list)
    _spheres: Dict[Tuple[int, Shape], List[int]] = field(default_factory=dict, repr=False)
    _distances: Dict[Tuple[int, int], Shape] = field(default_factory=dict, repr=False)

    origin: int = 0

    @property
    def size(self) -> int:
        return len(self.vertices)

    def is_interior(self, x: int) -> bool:
        return self.depth[x] <= self.radius - 1

    def edges(self) -> List[Tuple[int, int]]:
        return [(x, y) for x in range(self.size) for y in self.neighbors[x] if x < y]


def build_ball(q: int, r: int, threads: Optional[int] = None) -> BuildingBall:
    """Обход в ширину от o: слой k+1 - новые соседи вершин слоя k"""
    if q not in BALL_ORDERS:
        raise SizeGuardExceeded(f"Порядок {q} вне {BALL_ORDERS}", {"q": q})
    if not 0 <= r <= MAX_BALL_RADIUS:
        raise SizeGuardExceeded(f"Радиус {r} превышает {MAX_BALL_RADIUS}", {"r": r})

    origin = diagonal_lattice((0, 0, 0))
    vertices = [origin]
    index = {origin: 0}
    depth = [0]
    raw_neighbors: Dict[int, List[PolyMatrix]] = {}
    layer = [0]

    for k in range(r + 1):
        found = ordered_map(lambda v: lattice_neighbors(vertices[v], q), layer, threads)
        fresh = set()
        for v, nbrs in zip(layer, found):
            raw_neighbors[v] = nbrs
            if k < r:
                fresh.update(n for n in nbrs if n not in index)
        layer = []
        for m in sorted(fresh):
            index[m] = len(vertices)
            vertices.append(m)
            depth.append(k + 1)
            layer.append(index[m])
        logger.debug(f"Слой {k + 1}: {len(layer)} вершин")

    neighbors = [sorted(index[n] for n in raw_neighbors[v] if n in index) for v in range(len(vertices))]
    ball = BuildingBall(
        q=q, radius=r, vertices=vertices, index=index, depth=depth,
        types=[vertex_type(m) for m in vertices], neighbors=neighbors,
    )
    common = [set(n) for n in neighbors]
    for x in range(ball.size):
        for y in neighbors[x]:
            if y > x:
                for z in sorted(common[x] & common[y]):
                    if z > y:
                        ball.chambers.append((x, y, z))

    log_event(LogEventType.BALL_BUILT, f"Шар q={q}, r={r}: {ball.size} вершин, {len(ball.chambers)} камер",
              q=q, radius=r, vertices=ball.size)
    return ball


# ----------------------------------------------------------------------
# Расстояния и сферы
# ----------------------------------------------------------------------
def vector_distance(ball: BuildingBall, x: int, y: int) -> Shape:
    key = (x, y)
    if key not in ball._distances:
        ball._distances[key] = lattice_distance(ball.vertices[x], ball.vertices[y], ball.q)
    return ball._distances[key]


def change_of_basis(ball: BuildingBall, x: int, y: int, precision: Optional[int] = None) -> DVRMatrix:
    """bx^-1 * by как матрица над F_q((t)) с рабочей точностью"""
    adj, e = _invariants(ball.vertices[x], ball.q)
    product = poly_matrix_mul(adj, ball.vertices[y], ball.q)
    entries = tuple(tuple((-e, tuple(entry)) for entry in row) for row in product)
    return DVRMatrix(ball.q, entries, precision)


def default_precision(ball: BuildingBall) -> int:
    return DEFAULT_PRECISION_SLOPE * ball.radius + DEFAULT_PRECISION_OFFSET


def distance_crosscheck(ball: BuildingBall, pairs: Sequence[Tuple[int, int]]) -> VerificationReport:
    """Сравнение векторного расстояния с элементарными делителями над F_q((t))"""
    precision = default_precision(ball)
    checks, witnesses = {}, {}
    for x, y in pairs:
        a, b, c = dvr_elementary_divisors(change_of_basis(ball, x, y, precision))
        expected = TranslationVec(a - b, b - c)
        ok = expected == vector_distance(ball, x, y)
        checks[f"{x}-{y}"] = ok
        if not ok:
            witnesses[f"{x}-{y}"] = {"divisors": [a, b, c], "shape": str(vector_distance(ball, x, y))}
    return VerificationReport.from_checks("distance_crosscheck", checks, witnesses=witnesses,
                                          data={"precision": precision})


def graph_distance(ball: BuildingBall, x: int, y: int) -> int:
    return length(vector_distance(ball, x, y))


def sphere_is_complete(ball: BuildingBall, x: int, lam: Shape) -> bool:
    return ball.depth[x] + length(lam) <= ball.radius


def sphere(ball: BuildingBall, x: int, lam: Shape) -> List[int]:
    """V_lambda(x): обход в ширину на глубину l(lambda) и фильтр по векторному расстоянию"""
    if not lam.is_dominant:
        raise ValueError(f"Форма {lam} не доминантна")
    if not sphere_is_complete(ball, x, lam):
        raise SphereTruncated(
            f"Сфера {lam} вокруг {x} выходит за шар радиуса {ball.radius}",
            {"x": x, "shape": str(lam), "depth": ball.depth[x], "radius": ball.radius},
        )
    key = (x, lam)
    if key not in ball._spheres:
        seen = {x}
        frontier = [x]
        for _ in range(length(lam)):
            layer = []
            for v in frontier:
                for n in ball.neighbors[v]:
                    if n not in seen:
                        seen.add(n)
                        layer.append(n)
            frontier = layer
        ball._spheres[key] = sorted(v for v in seen if vector_distance(ball, x, v) == lam)
    return ball._spheres[key]


def sphere_size(ball: BuildingBall, lam: Shape) -> int:
    """N_lambda, измеренное в центре шара"""
    return len(sphere(ball, ball.origin, lam))


def geodesic_between(ball: BuildingBall, x: int, y: int, y2: int) -> bool:
    """vd(y2, y) = vd(y2, x) + vd(x, y) как трансляции"""
    return vector_distance(ball, y2, y) == vector_distance(ball, y2, x) + vector_distance(ball, x, y)


def step_toward(ball: BuildingBall, z: int, target: int, step: Shape) -> Optional[int]:
    """Сосед w вершины z с vd(z, w) = step на геодезической к target"""
    rest = vector_distance(ball, z, target) - step
    if not rest.is_dominant:
        return None
    for w in ball.neighbors[z]:
        if vector_distance(ball, z, w) == step and vector_distance(ball, w, target) == rest:
            return w
    return None


def segment_germ(ball: BuildingBall, z: int, target: int) -> Tuple[Optional[int], Optional[int]]:
    """Росток выпуклой оболочки [z, target] в z: вершины типа +1 и +2"""
    return step_toward(ball, z, target, TranslationVec(1, 0)), step_toward(ball, z, target, TranslationVec(0, 1))


# ----------------------------------------------------------------------
# Звенья и регулярность
# ----------------------------------------------------------------------
def link_plane(ball: BuildingBall, x: int) -> IncidencePlane:
    """Звено вершины: точки - соседи типа t+2, прямые - соседи типа t+1"""
    if not ball.is_interior(x):
        raise SphereTruncated(f"Звено вершины {x} не помещается в шар", {"x": x, "depth": ball.depth[x]})
    t = ball.types[x]
    points = [y for y in ball.neighbors[x] if ball.types[y] == (t + 2) % 3]
    lines = [y for y in ball.neighbors[x] if ball.types[y] == (t + 1) % 3]
    line_set = set(lines)
    incidences = [(a, b) for a in points for b in ball.neighbors[a] if b in line_set]
    return IncidencePlane(points, lines, incidences, ball.q, name=f"link({x})")


def link_report(ball: BuildingBall) -> VerificationReport:
    """Звенья внутренних вершин - плоскости порядка q; каждое внутреннее ребро лежит на q+1 камерах"""
    bad_links = []
    for x in range(ball.size):
        if ball.is_interior(x) and not check_axioms(link_plane(ball, x)).passed:
            bad_links.append(x)

    on_edge: Dict[Tuple[int, int], int] = {}
    for a, b, c in ball.chambers:
        for e in ((a, b), (a, c), (b, c)):
            on_edge[e] = on_edge.get(e, 0) + 1
    bad_edges = [
        list(e) for e in ball.edges()
        if ball.is_interior(e[0]) and ball.is_interior(e[1]) and on_edge.get(e, 0) != ball.q + 1
    ]
    checks = {
        "links_are_planes": not bad_links,
        "edge_thickness": not bad_edges,
        "connected": nx.is_connected(ball_graph(ball)),
    }
    witnesses: Dict[str, Any] = {}
    if bad_links:
        witnesses["links_are_planes"] = bad_links[:10]
    if bad_edges:
        witnesses["edge_thickness"] = bad_edges[:10]
    report = VerificationReport.from_checks(
        "ball_links", checks, witnesses=witnesses,
        data={"q": ball.q, "radius": ball.radius, "vertices": ball.size, "chambers": len(ball.chambers)},
    )
    log_event(LogEventType.LINK_CHECKED, f"Проверка звеньев: {report.status}", vertices=ball.size)
    return report


# ----------------------------------------------------------------------
# Ростки секторов
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class SectorGerm:
    """z_0 = base, z_m = frame * diag(t^2m, t^m, 1); vd(z_m, z_{m+1}) = (1,1)"""
    p: int
    base: PolyMatrix
    frame: PolyMatrix
    vertices: Tuple[PolyMatrix, ...]

    @property
    def depth(self) -> int:
        return len(self.vertices) - 1

    @property
    def deepest(self) -> PolyMatrix:
        return self.vertices[-1]


def _germ_vertex(frame: PolyMatrix, m: int, p: int) -> PolyMatrix:
    cols = _columns(frame)
    scaled = [[poly_shift(entry, shift) for entry in col] for col, shift in zip(cols, (2 * m, m, 0))]
    return lattice_class(scaled, p)


def germ_from_frame(frame: PolyMatrix, depth: int, p: int) -> SectorGerm:
    vertices = tuple(_germ_vertex(frame, m, p) for m in range(depth + 1))
    return SectorGerm(p, vertices[0], frame, vertices)


def sector_germ(ball: BuildingBall, x: int, depth: int) -> SectorGerm:
    """Росток в базисе формы Эрмита вершины x"""
    return germ_from_frame(ball.vertices[x], depth, ball.q)


def extend_germ(germ: SectorGerm, depth: int) -> SectorGerm:
    if depth <= germ.depth:
        return germ
    return germ_from_frame(germ.frame, depth, germ.p)


def opposite_germ(germ: SectorGerm) -> SectorGerm:
    """z'_m = frame * diag(1, t^m, t^2m)"""
    reversed_frame = _from_columns(list(reversed(_columns(germ.frame))))
    return germ_from_frame(reversed_frame, germ.depth, germ.p)


def germ_through(ball: BuildingBall, x: int, y: int, depth: int) -> SectorGerm:
    """Росток сектора Q(x, C), содержащего y: базис x, согласованный с y"""
    p = ball.q
    adj, _ = _invariants(ball.vertices[x], p)
    u, exps = poly_smith_form(poly_matrix_mul(adj, ball.vertices[y], p), p)
    order = sorted(range(3), key=lambda i: (-exps[i], i))
    frame = poly_matrix_mul(ball.vertices[x], u, p)
    cols = _columns(frame)
    return germ_from_frame(_from_columns([cols[i] for i in order]), depth, p)


def germs_across(ball: BuildingBall, x: int, y: int, y2: int, depth: int) -> Tuple[SectorGerm, SectorGerm]:
    """
    Противоположные ростки в x на общей квартире через y2 и y.

    Квартира строится по базису y2, согласованному с y (форма Смита y2^-1 * y);
    x обязана лежать в ней, что выполнено, если x лежит на геодезической y2 - y.
    Первый росток содержит y, второй - противоположный ему.
    """
    p = ball.q
    adj2, _ = _invariants(ball.vertices[y2], p)
    u, exps = poly_smith_form(poly_matrix_mul(adj2, ball.vertices[y], p), p)
    frame = poly_matrix_mul(ball.vertices[y2], u, p)
    coords = poly_matrix_mul(poly_matrix_mul(poly_matrix_adjugate(u, p), adj2, p), ball.vertices[x], p)
    shifts = [min(poly_val(entry) for entry in row if entry) for row in coords]
    scaled = [[poly_shift(entry, s) for entry in col] for col, s in zip(_columns(frame), shifts)]
    if lattice_class(scaled, p) != ball.vertices[x]:
        raise NoCommonFlat("Вершина не лежит в квартире через пару", {"x": x, "y": y, "y2": y2})
    order = sorted(range(3), key=lambda i: (shifts[i] - exps[i], i))
    germ = germ_from_frame(_from_columns([scaled[i] for i in order]), depth, p)
    return germ, opposite_germ(germ)


def germ_in_ball(ball: BuildingBall, germ: SectorGerm) -> List[Optional[int]]:
    return [ball.index.get(v) for v in germ.vertices]


def lattice_horofunction(bx: PolyMatrix, by: PolyMatrix, germ: SectorGerm) -> TranslationVec:
    if germ.depth < 1:
        raise GermTooShallow("Росток глубины 0", {"depth": germ.depth})
    values = []
    for z in germ.vertices[-2:]:
        values.append(lattice_distance(bx, z, germ.p) - lattice_distance(by, z, germ.p))
    if values[0] != values[1]:
        raise GermTooShallow(
            "Две самые глубокие вершины ростка дают разные значения",
            {"depth": germ.depth, "values": [str(v) for v in values]},
        )
    return values[1]


def horofunction(ball: BuildingBall, x: int, y: int, germ: SectorGerm) -> TranslationVec:
    """h_C(x, y) = lambda - mu для глубокой z из V_lambda(x) и V_mu(y)"""
    return lattice_horofunction(ball.vertices[x], ball.vertices[y], germ)


# ----------------------------------------------------------------------
# Плоские куски и числа Y_w, Z_+-
# ----------------------------------------------------------------------
def _require_based(ball: BuildingBall, x: int, germ: SectorGerm) -> None:
    if germ.base != ball.vertices[x]:
        raise GermNotBased(f"Росток не начинается в вершине {x}", {"x": x})


def weyl_orbit(lam: TranslationVec) -> List[TranslationVec]:
    return sorted({weyl_apply(w, lam) for w in WeylElt}, key=lambda v: (length(dominant(v)), v.as_tuple()))


def position_filter(ball: BuildingBall, x: int, zk: PolyMatrix, k: int, position: TranslationVec) -> List[int]:
    """Вершины V_dom(p)(x), стоящие в позиции p в плоскостях через x и росток"""
    target = dominant(position - DIAGONAL.scaled(k))
    return [v for v in sphere(ball, x, dominant(position)) if lattice_distance(zk, ball.vertices[v], ball.q) == target]


def flats_through(ball: BuildingBall, x: int, germ: SectorGerm, radius: int) -> List[Dict[TranslationVec, int]]:
    """Изометричные вложения шара радиуса radius из Sigma, содержащие x и росток"""
    _require_based(ball, x, germ)
    if ball.depth[x] + radius > ball.radius:
        raise SphereTruncated("Плоские куски выходят за шар", {"x": x, "radius": radius})
    germ = extend_germ(germ, radius + 1)
    k = germ.depth
    positions = []
    for n in range(radius + 1):
        for shape in shapes_of_length(n):
            positions.extend(weyl_orbit(shape))
    positions = sorted(set(positions), key=lambda v: (length(dominant(v)), v.as_tuple()))
    candidates = {pos: position_filter(ball, x, germ.deepest, k, pos) for pos in positions}

    flats: List[Dict[TranslationVec, int]] = []
    assignment: Dict[TranslationVec, int] = {}

    def extend(i: int) -> None:
        if i == len(positions):
            flats.append(dict(assignment))
            return
        pos = positions[i]
        for v in candidates[pos]:
            if all(vector_distance(ball, u, v) == dominant(pos - other) for other, u in assignment.items()):
                assignment[pos] = v
                extend(i + 1)
                del assignment[pos]

    extend(0)
    logger.debug(f"Плоских кусков радиуса {radius} через {x}: {len(flats)}")
    return flats


def _position_counts(ball: BuildingBall, x: int, germ: SectorGerm, lam: Shape) -> Dict[WeylElt, int]:
    k = germ.depth
    return {w: len(position_filter(ball, x, germ.deepest, k, weyl_apply(w, lam))) for w in WeylElt}


def count_Yw(ball: BuildingBall, x: int, germ: SectorGerm, lam: Shape) -> WeylCounts:
    """|Y_w^lambda| на глубинах k и k+1 ростка, k >= l(lambda)+1"""
    _require_based(ball, x, germ)
    sphere(ball, x, lam)
    k = max(germ.depth, length(lam) + 1)
    first = _position_counts(ball, x, extend_germ(germ, k), lam)
    second = _position_counts(ball, x, extend_germ(germ, k + 1), lam)
    if first != second:
        logger.warning(f"Числа Y_w не стабилизировались на глубинах {k}, {k + 1}")
    log_event(LogEventType.COUNTS_MEASURED, f"Y_w для {lam}", x=x, shape=str(lam))
    return WeylCounts(
        shape=lam.as_tuple(),
        depths=[k, k + 1],
        by_position={w.value: first[w] for w in WeylElt},
        conjugated={w.value: first[weyl_conjugate_by_w0(w)] for w in WeylElt},
        deeper={w.value: second[w] for w in WeylElt},
        stable=first == second,
    )


def count_Z(ball: BuildingBall, x: int, y: int) -> Tuple[int, int]:
    """|Z_+(y)|, |Z_-(y)|: позиции s2*lambda и s1*lambda для ростка через y"""
    lam = vector_distance(ball, x, y)
    if not lam.is_regular:
        raise NotRegular(f"Форма {lam} не регулярна", {"shape": str(lam)})
    sphere(ball, x, lam)
    germ = germ_through(ball, x, y, length(lam) + 1)
    k = germ.depth
    plus = position_filter(ball, x, germ.deepest, k, weyl_apply(WeylElt.S2, lam))
    minus = position_filter(ball, x, germ.deepest, k, weyl_apply(WeylElt.S1, lam))
    return len(plus), len(minus)


def position_exponents(lam: Shape) -> Dict[str, int]:
    """Показатели степенного закона |Y_w| = K_w q^n по позициям w*lambda"""
    i, j = lam.i, lam.j
    return {
        WeylElt.E.value: 0,
        WeylElt.S1.value: i,
        WeylElt.S2.value: j,
        WeylElt.S1S2.value: i + 2 * j,
        WeylElt.S2S1.value: 2 * i + j,
        WeylElt.W0.value: 2 * (i + j),
    }


@dataclass(frozen=True)
class CountConstants:
    """K_w для |Y_w| и K_+, K_- для |Z_+-|, измеренные на форме shape"""
    shape: Shape
    weyl: Dict[str, Fraction]
    k_plus: Fraction
    k_minus: Fraction

    def predicted_Yw(self, q: int, lam: Shape) -> Dict[str, Fraction]:
        return {w: self.weyl[w] * Fraction(q) ** n for w, n in position_exponents(lam).items()}

    def predicted_Z(self, q: int, lam: Shape) -> Tuple[Fraction, Fraction]:
        return self.k_plus * Fraction(q) ** lam.j, self.k_minus * Fraction(q) ** lam.i

    def to_dict(self) -> Dict[str, Any]:
        return {
            "shape": str(self.shape),
            "K_w": {w: fraction_str(k) for w, k in self.weyl.items()},
            "K_plus": fraction_str(self.k_plus),
            "K_minus": fraction_str(self.k_minus),
        }


def measure_count_constants(ball: BuildingBall, x: int, lam: Shape = TranslationVec(1, 1)) -> CountConstants:
    """Константы по наименьшей регулярной форме; дальше они только проверяются"""
    if not lam.is_regular:
        raise NotRegular(f"Форма {lam} не регулярна", {"shape": str(lam)})
    q = Fraction(ball.q)
    counts = count_Yw(ball, x, sector_germ(ball, x, length(lam) + 1), lam)
    weyl = {w: counts.by_position[w] / q ** n for w, n in position_exponents(lam).items()}
    z_plus, z_minus = count_Z(ball, x, sphere(ball, x, lam)[0])
    constants = CountConstants(lam, weyl, z_plus / q ** lam.j, z_minus / q ** lam.i)
    logger.debug(f"Константы чисел Y_w, Z по форме {lam}: {constants.to_dict()}")
    return constants


# ----------------------------------------------------------------------
# Экспорт
# ----------------------------------------------------------------------
def ball_graph(ball: BuildingBall) -> nx.Graph:
    return typed_graph(range(ball.size), dict(enumerate(ball.types)), ball.edges())


def ball_to_dot(ball: BuildingBall) -> str:
    return to_dot(ball_graph(ball), name=f"ball_q{ball.q}_r{ball.radius}")


def ball_to_dict(ball: BuildingBall) -> Dict[str, Any]:
    return {
        "q": ball.q,
        "radius": ball.radius,
        "vertices": [
            {
                "id": v,
                "type": ball.types[v],
                "depth": ball.depth[v],
                "matrix": [[list(entry) for entry in row] for row in ball.vertices[v]],
            }
            for v in range(ball.size)
        ],
        "edges": [list(e) for e in ball.edges()],
        "chambers": [list(c) for c in ball.chambers],
    }


def shape_census(ball: BuildingBall, x: int, max_length: Optional[int] = None) -> Dict[str, int]:
    """N_lambda для всех форм с полной сферой вокруг x"""
    top = ball.radius - ball.depth[x] if max_length is None else max_length
    census = {}
    for n in range(top + 1):
        for lam in shapes_of_length(n):
            census[str(lam)] = len(sphere(ball, x, lam))
    return census
