import pytest

from spectral_glue import (
    FiltrationOrderError,
    InvalidInputError,
    ThomasonSet,
    constant_filtration,
    is_constant,
    is_nondegenerate,
    make_filtration,
    restrict_filtration,
    restrict_set,
)
from spectral_glue.thomason import (
    filtration_from_json,
    filtration_to_json,
    set_from_json,
    set_to_json,
)

from conftest import up


def test_from_members_rejects_non_up_sets(vee):
    with pytest.raises(InvalidInputError):
        ThomasonSet.from_members(vee, {"p"})


def test_generators_are_minimal_members(vee):
    s = ThomasonSet.from_members(vee, {"p", "m1", "m2"})
    assert s.generators == ("p",)
    assert up(vee, "m1", "m2").generators == ("m1", "m2")


def test_from_generators_closes_up(vee):
    assert ThomasonSet.from_generators(vee, ["p"]).members == {"p", "m1", "m2"}


def test_filtration_values_and_window(vee):
    filt = make_filtration(
        vee,
        ThomasonSet.full(vee),
        [(0, up(vee, "m1", "m2")), (1, up(vee, "m1"))],
        ThomasonSet.empty(vee),
    )
    assert filt.window() == (0, 1)
    assert filt.at(-5).is_full()
    assert filt.at(0).members == {"m1", "m2"}
    assert filt.at(1).members == {"m1"}
    assert filt.at(2).members == set()


def test_gaps_propagate_previous_value(vee):
    filt = make_filtration(
        vee,
        ThomasonSet.full(vee),
        [(0, up(vee, "m1", "m2")), (3, ThomasonSet.empty(vee))],
        ThomasonSet.empty(vee),
    )
    assert filt.at(1).members == {"m1", "m2"}
    assert filt.at(2).members == {"m1", "m2"}


def test_canonical_trim_maximizes_lo(vee):
    full, empty = ThomasonSet.full(vee), ThomasonSet.empty(vee)
    filt = make_filtration(vee, full, [(-2, full), (0, up(vee, "m1")), (1, empty)], empty)
    assert filt.window() == (0, 0)


def test_pure_step_keeps_its_position(vee):
    full, empty = ThomasonSet.full(vee), ThomasonSet.empty(vee)
    step = make_filtration(vee, full, [(2, full), (3, empty)], empty)
    assert step.values == ()
    assert step.at(2).is_full()
    assert step.at(3).members == set()
    shifted = make_filtration(vee, full, [(0, empty)], empty)
    assert step != shifted
    assert shifted.at(-1).is_full() and shifted.at(0).members == set()


def test_constant_filtration(vee):
    filt = constant_filtration(vee, up(vee, "m1"))
    assert is_constant(filt)
    assert filt.at(-100) == filt.at(100)


def test_tails_differ_without_breakpoint_is_an_error(vee):
    with pytest.raises(FiltrationOrderError):
        make_filtration(vee, ThomasonSet.full(vee), [], ThomasonSet.empty(vee))


def test_non_decreasing_is_an_error(vee):
    with pytest.raises(FiltrationOrderError):
        make_filtration(
            vee,
            ThomasonSet.empty(vee),
            [(0, up(vee, "m1"))],
            ThomasonSet.empty(vee),
        )


def test_nondegenerate_and_constant_predicates(vee):
    full, empty = ThomasonSet.full(vee), ThomasonSet.empty(vee)
    nondeg = make_filtration(vee, full, [(0, empty)], empty)
    assert is_nondegenerate(nondeg) and not is_constant(nondeg)
    const = constant_filtration(vee, up(vee, "m1"))
    assert is_constant(const) and not is_nondegenerate(const)


def test_restrict_set(vee):
    assert restrict_set(up(vee, "m1", "m2"), "m1").members == {"m1"}
    assert restrict_set(ThomasonSet.full(vee), "m2").members == {"p", "m2"}


def test_restrict_filtration(vee):
    full, empty = ThomasonSet.full(vee), ThomasonSet.empty(vee)
    filt = make_filtration(
        vee, full, [(0, up(vee, "m1", "m2")), (1, up(vee, "m1"))], empty
    )
    local = restrict_filtration(filt, "m1")
    assert local.at(-1).is_full()
    assert local.at(0).members == {"m1"}
    assert local.at(1).members == {"m1"}
    assert local.at(2).members == set()


def test_set_json_roundtrip(vee):
    for s in (ThomasonSet.full(vee), ThomasonSet.empty(vee), up(vee, "m1", "m2")):
        assert set_from_json(vee, set_to_json(s)) == s
    assert set_to_json(ThomasonSet.full(vee)) == "full"


def test_filtration_json_roundtrip_including_steps(vee):
    full, empty = ThomasonSet.full(vee), ThomasonSet.empty(vee)
    for filt in (
        make_filtration(vee, full, [(0, up(vee, "m1"))], empty),
        make_filtration(vee, full, [(3, empty)], empty),
        constant_filtration(vee, up(vee, "m2")),
    ):
        assert filtration_from_json(vee, filtration_to_json(filt)) == filt


def test_malformed_filtration_json(vee):
    with pytest.raises(InvalidInputError):
        filtration_from_json(vee, {"low_tail": "full"})
