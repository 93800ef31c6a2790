import pytest

from spectral_glue import (
    Ideal,
    IntegerRing,
    InvalidInputError,
    PolyQuot,
    ProductRing,
    UnsupportedRingError,
    ZMod,
    annihilator,
    cyclic_module,
    direct_sum,
    free_module,
    indecomposable_injectives,
    residue_field,
    ring_from_json,
    support,
    v_of_ideal,
)
from spectral_glue.rings import all_ideals, localize_ring, module_from_json, spec


def test_spec_z12(z12, z12_poset):
    assert sorted(z12_poset.elements) == ["(2)", "(3)"]
    assert z12_poset.relation_pairs == ()  # primes of Z/n are incomparable


def test_v_of_ideal_z12(z12):
    assert v_of_ideal(z12, Ideal(z12, (6,))).sorted_members() == ["(2)", "(3)"]
    assert v_of_ideal(z12, Ideal(z12, (4,))).sorted_members() == ["(2)"]
    assert v_of_ideal(z12, Ideal(z12, (0,))).is_full()
    assert v_of_ideal(z12, Ideal(z12, (1,))).sorted_members() == []


def test_ideal_lattice_z12(z12):
    gens = sorted(i.generators for i in all_ideals(z12))
    assert gens == [(0,), (1,), (2,), (3,), (4,), (6,)]
    assert Ideal(z12, (2, 3)).members == Ideal(z12, (1,)).members


def test_localize_z12(z12):
    local, proj = localize_ring(z12, "(2)")
    assert local.order == 4
    assert proj(6) == local.mul(local.one, proj(6))
    with pytest.raises(InvalidInputError):
        localize_ring(z12, "(5)")


def test_injectives_z12(z12):
    orders = sorted(m.order for m in indecomposable_injectives(z12))
    assert orders == [3, 4]


def test_residue_fields_z12(z12):
    assert residue_field(z12, "(2)").order == 2
    assert residue_field(z12, "(3)").order == 3


def test_poly_quot_spec():
    f4 = PolyQuot(2, (1, 1, 1))  # irreducible: a field with 4 elements
    poset, _ = spec(f4)
    assert list(poset.elements) == ["(x^2+x+1)"]
    dual = PolyQuot(2, (0, 0, 1))  # x^2: one prime (x)
    assert len(spec(dual)[0]) == 1
    split = PolyQuot(3, (2, 0, 1))  # x^2 - 1 = (x-1)(x+1) over F_3
    assert len(spec(split)[0]) == 2


def test_product_ring_spec():
    ring = ProductRing([ZMod(4), ZMod(3)])
    poset, _ = spec(ring)
    assert len(poset) == 2
    assert ring.order == 12


def test_integers_adapter_is_symbolic_only():
    with pytest.raises(UnsupportedRingError):
        spec(IntegerRing())


def test_ring_json_roundtrip():
    for data in (
        {"kind": "zmod", "n": 12},
        {"kind": "poly_quot", "p": 2, "f": [0, 0, 1]},
        {"kind": "product", "factors": [{"kind": "zmod", "n": 4}, {"kind": "zmod", "n": 3}]},
    ):
        ring = ring_from_json(data)
        assert ring_from_json(ring.to_json()).order == ring.order
    with pytest.raises(InvalidInputError):
        ring_from_json({"kind": "matrix"})


def test_free_and_cyclic_modules(z12):
    assert free_module(z12, 1).order == 12
    assert cyclic_module(z12, 4).order == 4
    assert cyclic_module(z12, 0).order == 12
    assert direct_sum(cyclic_module(z12, 4), cyclic_module(z12, 3)).order == 12


def test_annihilator_and_support(z12):
    m = cyclic_module(z12, 4)
    assert set(annihilator(m).members) == set(Ideal(z12, (4,)).members)
    assert support(m).sorted_members() == ["(2)"]
    assert support(free_module(z12, 1)).is_full()


def test_quotient_and_submodule(z12):
    free = free_module(z12, 1)
    sub = free.submodule(free.span([(6,)]))
    assert sub.order == 2
    assert free.quotient(sub.elements).order == 6
    with pytest.raises(InvalidInputError):
        free.submodule({(1,)})


def test_local_invariants_detect_isomorphism(z12):
    a = direct_sum(cyclic_module(z12, 4), cyclic_module(z12, 3))
    b = free_module(z12, 1)
    assert a.isomorphic_to(b)
    assert not cyclic_module(z12, 4).isomorphic_to(cyclic_module(z12, 2))


def test_module_from_json(z12):
    m = module_from_json(z12, {"relations": [[6]]})
    assert m.order == 6
    free2 = module_from_json(z12, {"relations": [], "rank": 2})
    assert free2.order == 144
