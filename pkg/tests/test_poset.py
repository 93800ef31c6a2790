import pytest

from spectral_glue import InvalidInputError, SpectralPoset, localization_poset, maximal_points
from spectral_glue.poset import all_up_sets, is_thomason, load_poset, star_image


def test_closure_is_automatic():
    chain = SpectralPoset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert chain.leq("a", "c")
    assert chain.leq("a", "a")


def test_antisymmetry_enforced():
    with pytest.raises(InvalidInputError):
        SpectralPoset(["a", "b"], [("a", "b"), ("b", "a")])


def test_maximal_points(vee):
    assert maximal_points(vee) == frozenset({"m1", "m2"})


def test_up_sets_of_vee(vee):
    ups = all_up_sets(vee)
    assert len(ups) == 5
    assert frozenset({"p"}) not in ups
    assert is_thomason({"m1", "m2"}, vee)
    assert not is_thomason({"p"}, vee)


def test_localization_poset(vee):
    sub, emb = localization_poset(vee, "m1")
    assert set(sub.elements) == {"p", "m1"}
    assert star_image({"p", "m1"}, emb) == frozenset({"p", "m1"})


def test_localization_rejects_unknown_prime(vee):
    with pytest.raises(InvalidInputError):
        localization_poset(vee, "q")


def test_load_poset_roundtrip(vee):
    assert load_poset(vee.to_json()) == vee


def test_load_poset_rejects_unknown_labels():
    with pytest.raises(InvalidInputError):
        load_poset({"elements": ["a"], "leq": [["a", "b"]]})
