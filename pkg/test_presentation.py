import pytest

from difference_set import singer_difference_set
from errors import ConditionFailed, InvalidData, ZeroD
from presentation import (
    EssertData,
    Presentation,
    check_morphism_relators,
    concat,
    essert_presentation,
    exotic_data,
    gamma0,
    gamma2,
    invert_word,
    lattice_morphism,
    presentation_from_gap,
    presentation_to_gap,
    reduce_word,
    torsion_census,
    torsion_classify,
)
from services.exotic_service import ExoticService


@pytest.fixture(scope="module")
def exotic4():
    return ExoticService().data_for(4)[1]


def test_word_reduction():
    assert reduce_word([(0, 2), (0, -2), (1, 1)]) == ((1, 1),)
    assert reduce_word([(0, 1), (1, 0), (0, 2)]) == ((0, 3),)
    w = ((0, 2), (1, -1))
    assert invert_word(w) == ((1, 1), (0, -2))
    assert concat(w, invert_word(w)) == ()


def test_gamma0_relators():
    p = essert_presentation(gamma0())
    assert p.generators == ("s0", "s1", "s2")
    assert p.relators == (
        ((0, 7),), ((1, 7),), ((2, 7),),
        ((0, 1), (1, 1), (2, 3)),
        ((0, 3), (1, 3), (2, 1)),
    )
    assert p.format_word(p.relators[3]) == "s0*s1*s2^3"


def test_gamma2_relators():
    p = essert_presentation(gamma2())
    assert p.relators[3:] == (((0, 1), (1, 1), (2, 1)), ((0, 3), (1, 3), (2, 3)))


def test_permutation_must_fix_zero():
    with pytest.raises(InvalidData):
        EssertData.make(2, (0, 1, 3), {0: 1, 1: 0, 3: 3}, {0: 0, 1: 1, 3: 3})


def test_non_difference_set_rejected():
    with pytest.raises(InvalidData):
        EssertData.make(2, (0, 1, 2), {0: 0, 1: 1, 2: 2}, {0: 0, 1: 1, 2: 2})


def test_unknown_generator_rejected():
    with pytest.raises(InvalidData):
        Presentation.build(("a",), [[(1, 2)]])


def test_gap_round_trip():
    p = essert_presentation(gamma0())
    text = presentation_to_gap(p)
    assert text.startswith('F := FreeGroup("s0", "s1", "s2");')
    assert presentation_from_gap(text) == p


def test_gap_garbage_rejected():
    with pytest.raises(InvalidData):
        presentation_from_gap("G := SymmetricGroup(3);")
    with pytest.raises(InvalidData):
        presentation_from_gap('F := FreeGroup("a");\nG := F / [ b^2 ];')


@pytest.mark.parametrize("e,verdict", [(0, "finite"), (1, "finite"), (2, "infinite"), (3, "infinite"), (6, "infinite")])
def test_torsion_verdicts(e, verdict):
    result = torsion_classify(gamma0(), 1, e)
    assert result.verdict == verdict


def test_torsion_reduces_exponents():
    result = torsion_classify(gamma0(), 8, 7)
    assert result.d == 1 and result.e == 0
    assert result.word == [(0, 1)]
    assert result.justification == "power_of_sigma0"


def test_torsion_rejects_bad_d():
    with pytest.raises(ZeroD):
        torsion_classify(gamma0(), 0, 1)
    with pytest.raises(InvalidData):
        torsion_classify(gamma0(), 2, 1)


@pytest.mark.parametrize("d", [1, 3])
def test_torsion_census(d):
    assert torsion_census(gamma0(), d) == {"finite": 2, "infinite": 5}


def test_torsion_census_for_order_four(exotic4):
    for d in exotic4.D:
        if d:
            assert torsion_census(exotic4, d) == {"finite": 2, "infinite": 19}


def test_identity_morphism_of_gamma0():
    certificate = lattice_morphism(gamma0(), gamma0())
    assert certificate.scale == 1
    assert all(certificate.conditions.values())
    assert certificate.witness.d == 1
    assert certificate.witness.e == 2
    assert certificate.witness.verdict == "infinite"
    assert certificate.valid


def test_morphism_into_order_four(exotic4):
    certificate = lattice_morphism(gamma0(), exotic4)
    assert certificate.scale == 3
    assert certificate.assignment["s1"] == [(1, 3)]
    assert certificate.witness.d == 3 and certificate.witness.e == 6
    assert certificate.valid
    assert check_morphism_relators(gamma0(), exotic4, 3).passed


def test_morphism_needs_divisibility():
    D = singer_difference_set(3).D
    target = EssertData.make(3, D, {d: d for d in D}, {d: d for d in D})
    with pytest.raises(ConditionFailed) as info:
        lattice_morphism(gamma0(), target)
    assert info.value.witness["bullet"] == 1


def test_morphism_needs_scaled_inclusion(exotic4):
    D = sorted((-d) % 21 for d in exotic4.D)
    target = EssertData.make(4, D, {d: d for d in D}, {d: d for d in D})
    with pytest.raises(ConditionFailed) as info:
        lattice_morphism(gamma0(), target)
    assert info.value.witness["bullet"] == 2


def test_morphism_needs_compatible_permutations():
    with pytest.raises(ConditionFailed) as info:
        lattice_morphism(gamma0(), gamma2())
    assert info.value.witness["bullet"] == 3
    assert info.value.witness["index"] == 2


def test_relators_do_not_map_into_wrong_target():
    report = check_morphism_relators(gamma0(), gamma2(), 1)
    assert report.status == "fail"
    assert report.witnesses


def test_exotic_data_of_order_two_is_gamma0():
    assert exotic_data(2, (0, 1, 3)) == gamma0()


def test_exotic_data_swaps_in_pi2(exotic4):
    assert {0, 3, 9} <= set(exotic4.D)
    assert exotic4.pi2_map[3] == 9 and exotic4.pi2_map[9] == 3
    assert all(exotic4.pi1_map[d] == d for d in exotic4.D)
