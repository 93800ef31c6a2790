import pytest

from spectral_glue import SpectralPoset, ThomasonSet, ZMod
from spectral_glue.rings import spec


@pytest.fixture
def vee() -> SpectralPoset:
    """One generic point below two closed points: p < m1, p < m2."""
    return SpectralPoset(["p", "m1", "m2"], [("p", "m1"), ("p", "m2")])


@pytest.fixture
def z12() -> ZMod:
    return ZMod(12)


@pytest.fixture
def z12_poset(z12):
    poset, _ = spec(z12)
    return poset


def up(poset, *members) -> ThomasonSet:
    return ThomasonSet.from_members(poset, members)
