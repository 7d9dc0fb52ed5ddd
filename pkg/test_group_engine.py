import pytest
from sympy.combinatorics.coset_table import coset_enumeration_r
from sympy.combinatorics.fp_groups import FpGroup, reidemeister_presentation
from sympy.combinatorics.free_groups import free_group

from errors import CosetLimitExceeded, IncompleteTable
from group_engine import (
    CosetTable,
    abelianization,
    derived_coset_table,
    derived_subgroup_generators,
    perfect_check,
    reidemeister_schreier,
    relation_matrix,
    table_is_consistent,
    todd_coxeter,
)
from presentation import Presentation, essert_presentation, gamma0, gamma2


@pytest.fixture(scope="module")
def g0():
    return essert_presentation(gamma0())


@pytest.fixture(scope="module")
def cyclic7():
    return Presentation.build(("a",), [[(0, 7)]])


def test_relation_matrix(g0):
    assert relation_matrix(g0) == [[7, 0, 0], [0, 7, 0], [0, 0, 7], [1, 1, 3], [3, 3, 1]]


def test_abelianization_of_gamma0(g0):
    invariants = abelianization(g0)
    assert invariants.invariant_factors == [7]
    assert invariants.free_rank == 0
    assert invariants.order == 7


def test_abelianization_of_gamma2():
    invariants = abelianization(essert_presentation(gamma2()))
    assert invariants.invariant_factors == [7, 7]
    assert invariants.free_rank == 0


def test_abelianization_of_free_group():
    invariants = abelianization(Presentation.build(("a", "b"), []))
    assert invariants.invariant_factors == []
    assert invariants.free_rank == 2
    assert invariants.order is None


def test_todd_coxeter_cyclic(cyclic7):
    table = todd_coxeter(cyclic7, [])
    assert table.index == 7
    assert table_is_consistent(cyclic7, table)
    assert todd_coxeter(cyclic7, [((0, 1),)]).index == 1


def test_todd_coxeter_symmetric_group():
    """<a, b | a^2, b^3, (ab)^2> = S3"""
    p = Presentation.build(("a", "b"), [[(0, 2)], [(1, 3)], [(0, 1), (1, 1), (0, 1), (1, 1)]])
    assert todd_coxeter(p, []).index == 6
    assert todd_coxeter(p, [((0, 1),)]).index == 3
    assert todd_coxeter(p, [((1, 1),)]).index == 2


def test_coset_limit(cyclic7):
    free = Presentation.build(("a", "b"), [])
    with pytest.raises(CosetLimitExceeded):
        todd_coxeter(free, [], max_cosets=200)
    with pytest.raises(CosetLimitExceeded):
        todd_coxeter(cyclic7, [], max_cosets=3)


def test_derived_table_of_gamma0(g0):
    table = derived_coset_table(g0)
    assert table.index == 7
    assert table_is_consistent(g0, table)
    enumerated = todd_coxeter(g0, table.subgroup)
    assert enumerated.index == 7


def test_derived_subgroup_of_gamma2_by_enumeration():
    p = essert_presentation(gamma2())
    table = todd_coxeter(p, derived_subgroup_generators(p))
    assert table.index == 49
    assert table_is_consistent(p, table)


def test_reidemeister_schreier_counts(g0):
    sub = reidemeister_schreier(g0, derived_coset_table(g0))
    assert len(sub.generators) == 15
    assert all(name.startswith("y") for name in sub.generators)


def test_reidemeister_schreier_needs_full_table(cyclic7):
    broken = CosetTable(1, [[0, None]], False, [])
    with pytest.raises(IncompleteTable):
        reidemeister_schreier(cyclic7, broken)


def test_gamma0_derived_subgroup_is_perfect(g0):
    report = perfect_check(g0, "derived")
    assert report.passed
    assert report.data["index"] == 7
    assert report.data["schreier_generators"] == 15
    assert report.data["rewritten_relators"] == 35
    assert report.data["invariant_factors"] == []


def test_cyclic_group_is_not_perfect(cyclic7):
    report = perfect_check(cyclic7, "whole")
    assert report.status == "fail"
    assert report.data["index"] == 1
    assert report.data["invariant_factors"] == [7]


def test_trivial_subgroup_is_perfect(cyclic7):
    report = perfect_check(cyclic7, "trivial")
    assert report.passed
    assert report.data["index"] == 7


def test_explicit_subgroup_words():
    """Подгруппа <b> в S3 изоморфна Z/3"""
    p = Presentation.build(("a", "b"), [[(0, 2)], [(1, 3)], [(0, 1), (1, 1), (0, 1), (1, 1)]])
    report = perfect_check(p, [((1, 1),)])
    assert report.status == "fail"
    assert report.data["invariant_factors"] == [3]


def test_free_group_perfect_check_hits_limit():
    with pytest.raises(CosetLimitExceeded):
        perfect_check(Presentation.build(("a", "b"), []), "trivial", max_cosets=100)


def _to_sympy(p):
    """FpGroup sympy и перевод наших слов в его свободную группу"""
    free, *gens = free_group(", ".join(p.generators))

    def word(w):
        out = free.identity
        for gen, exp in w:
            out = out * gens[gen] ** exp
        return out

    return FpGroup(free, [word(r) for r in p.relators]), word


def _from_sympy(gens, rels):
    names = [str(g) for g in gens]
    index = {name: i for i, name in enumerate(names)}
    return Presentation.build(names, [[(index[str(sym)], exp) for sym, exp in r.array_form] for r in rels])


def _sympy_index(p, subgroup):
    group, word = _to_sympy(p)
    table = coset_enumeration_r(group, [word(w) for w in subgroup])
    table.compress()
    return len(table.table)


S3 = Presentation.build(("a", "b"), [[(0, 2)], [(1, 3)], [(0, 1), (1, 1), (0, 1), (1, 1)]])


@pytest.mark.parametrize("subgroup", [[], [((0, 1),)], [((1, 1),)]])
def test_indices_match_sympy_enumeration(subgroup):
    assert todd_coxeter(S3, subgroup).index == _sympy_index(S3, subgroup)


def test_orders_match_sympy(cyclic7):
    for p in (cyclic7, S3):
        group, _ = _to_sympy(p)
        assert todd_coxeter(p, []).index == group.order()


def test_gamma0_derived_index_matches_sympy(g0):
    table = derived_coset_table(g0)
    assert _sympy_index(g0, table.subgroup) == table.index == 7


def test_rewritten_subgroup_matches_sympy():
    ours = reidemeister_schreier(S3, todd_coxeter(S3, [((1, 1),)]))
    group, word = _to_sympy(S3)
    theirs = _from_sympy(*reidemeister_presentation(group, [word(((1, 1),))]))
    assert abelianization(ours) == abelianization(theirs)
    assert abelianization(theirs).invariant_factors == [3]


def test_rewritten_derived_subgroup_matches_sympy(g0):
    table = derived_coset_table(g0)
    ours = reidemeister_schreier(g0, table)
    group, word = _to_sympy(g0)
    theirs = _from_sympy(*reidemeister_presentation(group, [word(w) for w in table.subgroup]))
    assert abelianization(ours).invariant_factors == abelianization(theirs).invariant_factors == []
    assert abelianization(ours).free_rank == abelianization(theirs).free_rank == 0
