import pytest
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import SymmetricGroup

from difference_set import plane_from_difference_set, singer_difference_set
from errors import ChainBroken, DegreeTooLarge, FieldTooLarge, InvalidConfiguration, NotOpposite
from projective_plane import (
    _normal_subgroups_up_to,
    LINE,
    POINT,
    IncidencePlane,
    check_axioms,
    combinatorial_projection,
    common_opposite,
    compose,
    invert,
    nontriv_fixed_point_check,
    opposite,
    perspectivity_chain,
    pg2_of_order,
    projectivity_group,
    transitivity_report,
    valid_configurations,
)
from utils.graph_utils import incidence_graph, plane_isomorphism, to_dot


@pytest.mark.parametrize("q", [2, 3, 4])
def test_desarguesian_planes_satisfy_axioms(planes, q):
    plane = planes[q]
    n = q * q + q + 1
    assert len(plane.points) == n
    assert len(plane.lines) == n
    assert len(plane.incidences) == n * (q + 1)
    report = check_axioms(plane)
    assert report.passed, report.witnesses


def test_broken_structure_fails_with_witness():
    """Сдвиги {0,1,2} в Z/7 не образуют плоскость"""
    incidences = [((d + a) % 7, a) for a in range(7) for d in (0, 1, 2)]
    report = check_axioms(IncidencePlane(range(7), range(7), incidences, 2))
    assert report.status == "fail"
    assert not report.checks["two_points_unique_line"]
    assert "two_points_unique_line" in report.witnesses


def test_non_prime_power_order_rejected():
    with pytest.raises(FieldTooLarge):
        pg2_of_order(6)


def test_opposition_and_projection(planes):
    plane = planes[2]
    point, line = (POINT, (0, 0, 1)), (LINE, (0, 0, 1))
    assert opposite(plane, point, line)
    assert not opposite(plane, (POINT, (1, 0, 0)), line)
    assert not opposite(plane, point, (POINT, (1, 0, 0)))
    image = combinatorial_projection(plane, point, line, ((1, 0, 0), (0, 0, 1)))
    assert image == ((0, 0, 1), (0, 1, 0))
    with pytest.raises(NotOpposite):
        combinatorial_projection(plane, (POINT, (1, 0, 0)), line, ((0, 1, 0), (0, 0, 1)))


def test_common_opposite(planes):
    plane = planes[3]
    v, w = (POINT, plane.points[0]), (POINT, plane.points[5])
    u = common_opposite(plane, v, w)
    assert u[0] == LINE
    assert opposite(plane, v, u) and opposite(plane, w, u)


def test_perspectivity_chain_is_bijection(planes):
    plane = planes[3]
    p, p2 = (POINT, plane.points[0]), (POINT, plane.points[7])
    l = common_opposite(plane, p, p2)
    perm = perspectivity_chain(plane, [p, l, p2])
    assert sorted(perm) == list(range(plane.order + 1))
    back = perspectivity_chain(plane, [p2, l, p])
    assert compose(perm, back) == tuple(range(plane.order + 1))
    assert invert(perm) == back


def test_chain_of_non_opposite_vertices_breaks(planes):
    plane = planes[2]
    with pytest.raises(ChainBroken):
        perspectivity_chain(plane, [(POINT, (1, 0, 0)), (LINE, (0, 0, 1))])


@pytest.mark.parametrize("q,order", [(2, 6), (3, 24), (4, 60)])
def test_projectivity_group_orders(planes, q, order):
    group = projectivity_group(planes[q], (POINT, planes[q].points[0]), threads=1)
    assert group.degree == q + 1
    assert group.order == order
    assert group.sympy_group().order() == order


@pytest.mark.parametrize("q", [2, 3, 4])
def test_projectivity_group_is_sharply_three_transitive(planes, q):
    report = transitivity_report(projectivity_group(planes[q], (LINE, planes[q].lines[0]), threads=1))
    assert report.passed
    assert report.checks["three_transitive"]
    assert report.checks["sharply_three_transitive"]
    assert report.checks["moufang_set"]
    assert len(report.data["root_group"]) == q


def test_normal_subgroups_of_s4():
    orders = sorted(sub.order() for sub in _normal_subgroups_up_to(SymmetricGroup(4), 24))
    assert orders == [1, 4, 12, 24]
    assert sorted(sub.order() for sub in _normal_subgroups_up_to(SymmetricGroup(4), 4)) == [1, 4]


def test_normal_subgroups_need_repeated_joins():
    flips = [Permutation([1, 0, 2, 3, 4, 5]), Permutation([0, 1, 3, 2, 4, 5]), Permutation([0, 1, 2, 3, 5, 4])]
    subgroups = _normal_subgroups_up_to(PermutationGroup(flips), 8)
    orders = sorted(sub.order() for sub in subgroups)
    assert orders == [1] + [2] * 7 + [4] * 7 + [8]


def test_projectivity_order_guard():
    plane = pg2_of_order(11)
    with pytest.raises(DegreeTooLarge):
        projectivity_group(plane, (POINT, plane.points[0]))


def test_valid_configurations_count(planes):
    assert sum(1 for _ in valid_configurations(planes[2])) == 168


@pytest.mark.parametrize("q", [2, 3])
def test_nontrivial_projectivity_fixes_only_c0(planes, q):
    plane = planes[q]
    for c, ring in valid_configurations(plane):
        assert nontriv_fixed_point_check(plane, c, ring) == [ring[0]]


def test_invalid_configuration_rejected(planes):
    plane = planes[2]
    c = plane.flags()[0]
    with pytest.raises(InvalidConfiguration):
        nontriv_fixed_point_check(plane, c, [c, c, c])
    _, ring = next(iter(valid_configurations(plane)))
    with pytest.raises(InvalidConfiguration):
        nontriv_fixed_point_check(plane, c, (ring[0], ring[0], ring[0], ring[0]))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_singer_plane_is_desarguesian(planes, q):
    singer = plane_from_difference_set(singer_difference_set(q))
    found = plane_isomorphism(planes[q], singer)
    assert found is not None
    points, lines = found
    for point, line in planes[q].incidences:
        assert singer.incident(points[point], lines[line])


def test_incidence_graph_dot(planes):
    graph = incidence_graph(planes[2])
    assert graph.number_of_nodes() == 14
    assert graph.number_of_edges() == 21
    dot = to_dot(graph, name="fano")
    assert "fano" in dot
    assert "color" in dot
