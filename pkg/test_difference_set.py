import pytest

from difference_set import (
    check_difference_set,
    embed_difference_sets,
    embedding_check,
    plane_from_difference_set,
    singer_difference_set,
    translation_action_report,
)
from errors import FieldTooLarge, HypothesisViolated, UnverifiedInput
from projective_plane import check_axioms


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_singer_sets_are_planar(q):
    record = singer_difference_set(q)
    assert record.verified
    assert record.source == "singer"
    assert record.n == q * q + q + 1
    assert len(record.D) == q + 1
    assert check_difference_set(record.n, record.D).verified


def test_singer_set_of_order_two_is_normalized():
    assert singer_difference_set(2).D == [0, 1, 3]


def test_singer_order_guards():
    with pytest.raises(FieldTooLarge):
        singer_difference_set(6)
    with pytest.raises(FieldTooLarge):
        singer_difference_set(37)


def test_non_difference_set_has_witness():
    """{0,1,2} в Z/7: вычет 1 представлен дважды"""
    record = check_difference_set(7, [0, 1, 2])
    assert not record.verified
    assert record.witness["residue"] == 1
    assert record.witness["representations"] == 2
    assert sorted(record.witness["pairs"]) == [[1, 0], [2, 1]]


def test_unverified_set_gives_no_plane():
    with pytest.raises(UnverifiedInput):
        plane_from_difference_set(check_difference_set(7, [0, 1, 2]))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_plane_of_difference_set(q):
    record = singer_difference_set(q)
    plane = plane_from_difference_set(record)
    assert check_axioms(plane).passed
    assert translation_action_report(record).passed


@pytest.mark.parametrize("e", [1, 2, 4, 5])
def test_embedded_pairs_over_two(e):
    pair = embed_difference_sets(2, e)
    q = 2 ** e
    assert pair.base.D == [0, 1, 3]
    assert pair.big.n == q * q + q + 1
    assert pair.scale == pair.big.n // 7
    assert {(d * pair.scale) % pair.big.n for d in pair.base.D} <= set(pair.big.D)
    assert embedding_check(pair).passed


def test_embedded_pair_of_order_four():
    pair = embed_difference_sets(2, 2)
    assert pair.big.n == 21
    assert pair.scale == 3
    assert {0, 3, 9} <= set(pair.big.D)
    assert pair.big.verified


def test_embedding_over_three():
    pair = embed_difference_sets(3, 1)
    assert pair.base.n == pair.big.n == 13
    assert embedding_check(pair).passed


@pytest.mark.parametrize("q0,e,condition", [(2, 3, "e_mod_3"), (2, 6, "e_mod_3"), (4, 1, "q0_mod_3"), (6, 1, "prime_power")])
def test_embedding_hypotheses(q0, e, condition):
    with pytest.raises(HypothesisViolated) as info:
        embed_difference_sets(q0, e)
    assert info.value.witness["condition"] == condition


def test_embedding_size_guard():
    with pytest.raises(FieldTooLarge):
        embed_difference_sets(3, 4)
