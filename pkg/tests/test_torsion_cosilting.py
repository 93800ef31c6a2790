import pytest

from spectral_glue import (
    InvalidInputError,
    ThomasonSet,
    cosilting_equivalent,
    components_of_cosilting,
    cyclic_module,
    free_module,
    glue_cosilting,
    injective_class_of,
    is_cosilting,
    is_torsion,
    is_torsionfree,
    thomason_of_torsion_class,
    torsion_submodule,
    two_term_filtration,
)
from spectral_glue.catalog import all_thomason_sets
from spectral_glue.torsion_cosilting import (
    cosilting_from_json,
    cosilting_from_modules,
    cosilting_thomason_of_module,
    thomason_of_injective_class,
    torsion_class_cyclics,
)


@pytest.fixture
def v2(z12, z12_poset):
    return ThomasonSet.from_members(z12_poset, {"(2)"})


def test_torsion_submodule_oracle(z12, v2):
    free = free_module(z12, 1)
    part = torsion_submodule(free, v2)
    assert part.order == 4
    assert sorted(part.elements) == [(0,), (3,), (6,), (9,)]


def test_torsion_predicates(z12, v2):
    assert is_torsion(cyclic_module(z12, 4), v2)
    assert is_torsionfree(cyclic_module(z12, 3), v2)
    free = free_module(z12, 1)
    assert not is_torsion(free, v2) and not is_torsionfree(free, v2)


def test_thomason_torsion_roundtrip(z12, z12_poset):
    for x_set in all_thomason_sets(z12_poset):
        cyclics = torsion_class_cyclics(z12, x_set)
        assert thomason_of_torsion_class(z12, cyclics) == x_set


def test_injective_class_oracle(z12, v2):
    injectives = injective_class_of(z12, v2)
    assert [m.order for m in injectives] == [3]
    assert thomason_of_injective_class(z12, injectives) == v2


def test_injective_class_is_injective_as_a_map(z12, z12_poset):
    signatures = set()
    for x_set in all_thomason_sets(z12_poset):
        sig = tuple(sorted(tuple(sorted(m.local_invariants().items())) for m in injective_class_of(z12, x_set)))
        assert sig not in signatures
        signatures.add(sig)


def test_cosilting_z3_over_z12(z12, v2):
    c = cosilting_from_modules(z12, [cyclic_module(z12, 3)])
    assert is_cosilting(c)
    assert not c.is_degenerate()
    assert cosilting_thomason_of_module(c) == v2


def test_cogenerator_and_zero_cosilting(z12, z12_poset):
    from spectral_glue.rings import indecomposable_injectives

    cogen = cosilting_from_modules(z12, indecomposable_injectives(z12))
    assert is_cosilting(cogen)
    assert cosilting_thomason_of_module(cogen).members == set()
    zero = cosilting_from_modules(z12, [])
    assert is_cosilting(zero)
    assert zero.is_degenerate()
    assert cosilting_thomason_of_module(zero).is_full()


def test_split_glue_equivalence(z12):
    c = cosilting_from_modules(z12, [cyclic_module(z12, 3)])
    parts = components_of_cosilting(c)
    assert sorted(parts) == ["(2)", "(3)"]
    assert parts["(2)"].module.order == 1
    assert parts["(3)"].module.order == 3
    glued = glue_cosilting(z12, parts)
    assert cosilting_equivalent(glued, c)


def test_componentwise_thomason_sets_glue(z12, v2):
    c = cosilting_from_modules(z12, [cyclic_module(z12, 3)])
    parts = components_of_cosilting(c)
    # (2)-component cuts out the full local spectrum, (3)-component nothing
    assert cosilting_thomason_of_module(parts["(2)"]).is_full()
    assert cosilting_thomason_of_module(parts["(3)"]).members == set()


def test_two_term_filtration(z12, v2):
    filt = two_term_filtration(v2)
    assert filt.at(-1).is_full()
    assert filt.at(0) == v2
    assert filt.at(1).members == set()


def test_not_cosilting_without_cogeneration(z12):
    # Q1 = 0 cannot absorb the missing injective Z/4, so Z/3 alone fails
    data = {"q0": {"relations": [[3]]}, "q1": {"relations": [[1]]}, "eta": [[0]]}
    c = cosilting_from_json(z12, data)
    assert not is_cosilting(c)


def test_cosilting_json_matches_constructor(z12):
    data = {"q0": {"relations": [[3]]}, "q1": {"relations": [[4]]}, "eta": [[0]]}
    via_json = cosilting_from_json(z12, data)
    via_modules = cosilting_from_modules(z12, [cyclic_module(z12, 3)])
    assert cosilting_equivalent(via_json, via_modules)


def test_eta_shape_is_validated(z12):
    with pytest.raises(InvalidInputError):
        cosilting_from_json(z12, {"q0": {"relations": [[3]]}, "q1": {"relations": [[4]]}, "eta": []})


def test_equivalence_is_invariant_under_duplication(z12):
    c = cosilting_from_modules(z12, [cyclic_module(z12, 3)])
    doubled = cosilting_from_json(
        z12,
        {"q0": {"relations": [[3, 0], [0, 3]]}, "q1": {"relations": [[4]]}, "eta": [[0], [0]]},
    )
    assert cosilting_equivalent(c, doubled)
    other = cosilting_from_modules(z12, [cyclic_module(z12, 4)])
    assert not cosilting_equivalent(c, other)
