"""Pairwise compatibility of local Thomason data and the glue/localize maps.

Local data is indexed by the maximal points of a global poset; the value at m
lives on the localization poset (the down-set of m).  Gluing takes the union
of the images under the natural inclusions; it is defined exactly when the
family agrees pairwise on shared primes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import IncompatibleFamilyError, InvalidInputError
from .poset import PrimeId, SpectralPoset, is_thomason, localization_poset, maximal_points
from .thomason import (
    ThomasonFiltration,
    ThomasonSet,
    make_filtration,
    restrict_filtration,
    restrict_set,
)


@dataclass(frozen=True)
class LocalFamily:
    """Assignment m -> filtration on the localization poset at m.

    All maximal points of ``global_poset`` must be present.  Families over an
    infinite maximal spectrum (the integers adapter) are handled separately in
    :mod:`spectral_glue.integers`.
    """

    global_poset: SpectralPoset
    filtrations: Mapping[PrimeId, ThomasonFiltration]

    def __post_init__(self):
        maxima = maximal_points(self.global_poset)
        if set(self.filtrations) != set(maxima):
            raise InvalidInputError(
                f"family keys {sorted(self.filtrations)} do not match "
                f"maximal points {sorted(maxima)}"
            )
        for m, filt in self.filtrations.items():
            sub, _ = localization_poset(self.global_poset, m)
            if filt.poset != sub:
                raise InvalidInputError(f"filtration at {m!r} lives on the wrong poset")
        object.__setattr__(self, "filtrations", dict(self.filtrations))

    @classmethod
    def from_default(
        cls,
        global_poset: SpectralPoset,
        default: ThomasonFiltration,
        exceptions: Mapping[PrimeId, ThomasonFiltration] = (),
    ) -> "LocalFamily":
        """Materialize the default (restriction of a global filtration) at every
        maximal point, then apply the finitely many exceptions."""
        exceptions = dict(exceptions or ())
        filts = {}
        for m in maximal_points(global_poset):
            filts[m] = exceptions.get(m, restrict_filtration(default, m))
        return cls(global_poset, filts)

    def window(self) -> tuple[int, int]:
        windows = [f.window() for f in self.filtrations.values()]
        return (min(w[0] for w in windows), max(w[1] for w in windows))

    def sets_at(self, n: int) -> dict[PrimeId, ThomasonSet]:
        return {m: f.at(n) for m, f in self.filtrations.items()}


@dataclass(frozen=True)
class CompatibilityReport:
    dagger_holds: bool
    violating_pair: Optional[tuple[PrimeId, PrimeId, PrimeId]]
    glued_thomason: bool

    def __post_init__(self):
        if not self.dagger_holds and self.violating_pair is None:
            raise InvalidInputError("a failing report must carry a witness")


def _check_sets(poset: SpectralPoset, sets: Mapping[PrimeId, ThomasonSet]):
    maxima = maximal_points(poset)
    if set(sets) != set(maxima):
        raise InvalidInputError("set family must cover exactly the maximal points")
    violating = None
    for m in sorted(sets):
        for m2 in sorted(sets):
            if m2 <= m:
                continue
            shared = poset.down_set(m) & poset.down_set(m2)
            if not shared:
                continue  # the condition is vacuous for disjoint down-sets
            lhs = sets[m].members & poset.down_set(m2)
            rhs = sets[m2].members & poset.down_set(m)
            if lhs != rhs:
                p = min(lhs ^ rhs)
                violating = (m, m2, p)
                break
        if violating:
            break
    glued = set()
    for m in sets:
        glued |= sets[m].members
    return violating, is_thomason(glued, poset), frozenset(glued)


def check_dagger_sets(
    poset: SpectralPoset, sets: Mapping[PrimeId, ThomasonSet]
) -> CompatibilityReport:
    """Pairwise agreement of the local sets on shared primes."""
    violating, glued_thomason, _ = _check_sets(poset, sets)
    return CompatibilityReport(violating is None, violating, glued_thomason)


def check_dagger(family: LocalFamily, n: int) -> CompatibilityReport:
    """Evaluate the gluing condition at filtration level n."""
    return check_dagger_sets(family.global_poset, family.sets_at(n))


def glue_sets(poset: SpectralPoset, sets: Mapping[PrimeId, ThomasonSet]) -> ThomasonSet:
    """Union of the star images; defined only for compatible families."""
    violating, glued_thomason, glued = _check_sets(poset, sets)
    if violating is not None:
        raise IncompatibleFamilyError(
            f"family disagrees on shared prime {violating[2]!r} "
            f"between {violating[0]!r} and {violating[1]!r}",
            witness=violating,
        )
    # automatic on a finite poset: a union of up-sets is an up-set
    assert glued_thomason, "glued set of a compatible family must be Thomason"
    return ThomasonSet.from_members(poset, glued)


def localize_sets(s: ThomasonSet) -> dict[PrimeId, ThomasonSet]:
    """X |-> X(m) = X restricted to Spec(R_m), at every maximal m."""
    return {m: restrict_set(s, m) for m in maximal_points(s.poset)}


def glue_filtrations(family: LocalFamily) -> ThomasonFiltration:
    """Degreewise gluing; raises with the offending degree when incompatible."""
    poset = family.global_poset
    lo, hi = family.window()

    def glue_at(n: int) -> ThomasonSet:
        try:
            return glue_sets(poset, family.sets_at(n))
        except IncompatibleFamilyError as exc:
            raise IncompatibleFamilyError(
                f"family incompatible at degree {n}: {exc}", degree=n, witness=exc.witness
            ) from None

    low = glue_sets(poset, {m: f.low_tail for m, f in family.filtrations.items()})
    high = glue_sets(poset, {m: f.high_tail for m, f in family.filtrations.items()})
    # lo - 1 is included so pure-step families keep their step position
    return make_filtration(poset, low, [(n, glue_at(n)) for n in range(lo - 1, hi + 1)], high)


def localize_filtrations(filtration: ThomasonFiltration) -> LocalFamily:
    poset = filtration.poset
    return LocalFamily(
        poset, {m: restrict_filtration(filtration, m) for m in maximal_points(poset)}
    )


def check_lemma_equiv(poset: SpectralPoset, sets: Mapping[PrimeId, ThomasonSet]) -> bool:
    """Confirm the two descriptions of a compatible family agree.

    The ideal-family side is modelled by principal up-sets: X' is the union of
    all up-sets of single points g whose restriction to every localization is
    contained in the local set.  Returns True iff [pairwise agreement and the
    union of star images being an up-set] holds exactly when the union equals
    X'.
    """
    maxima = maximal_points(poset)
    if set(sets) != set(maxima):
        raise InvalidInputError("set family must cover exactly the maximal points")
    x_prime: set[PrimeId] = set()
    for g in poset.elements:
        up = poset.up_set(g)
        if all(up & poset.down_set(m) <= sets[m].members for m in maxima):
            x_prime |= up
    violating, glued_thomason, glued = _check_sets(poset, sets)
    condition_i = violating is None and glued_thomason
    condition_ii = glued == frozenset(x_prime)
    return condition_i == condition_ii
