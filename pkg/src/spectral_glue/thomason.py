"""Thomason sets with generator witnesses and decreasing Z-indexed filtrations.

A filtration is stored by its finite breakpoint window [lo, hi] plus the two
tail values (the value for all n < lo, resp. n > hi).  Construction always
normalizes, so two filtrations with equal pointwise values compare and
serialize identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import FiltrationOrderError, InvalidInputError
from .poset import (
    PrimeId,
    SpectralPoset,
    is_thomason,
    localization_poset,
    maximal_points,
    specialization_closure,
)


@dataclass(frozen=True)
class ThomasonSet:
    """An up-set of a finite spectral poset, with principal-up-set witnesses.

    ``generators`` are the minimal elements of ``members``; they play the role
    of the V(I) witnesses exhibiting the set as Thomason.
    """

    poset: SpectralPoset
    generators: tuple[PrimeId, ...]
    members: frozenset[PrimeId]

    @classmethod
    def from_members(cls, poset: SpectralPoset, members: Iterable[PrimeId]) -> "ThomasonSet":
        members = poset.check_subset(members)
        if specialization_closure(members, poset) != members:
            raise InvalidInputError(f"{sorted(members)} is not specialization closed")
        gens = tuple(
            sorted(p for p in members if not any(q != p and poset.leq(q, p) for q in members))
        )
        return cls(poset, gens, members)

    @classmethod
    def from_generators(cls, poset: SpectralPoset, generators: Iterable[PrimeId]) -> "ThomasonSet":
        members: set[PrimeId] = set()
        for g in generators:
            members |= poset.up_set(g)
        return cls.from_members(poset, members)

    @classmethod
    def full(cls, poset: SpectralPoset) -> "ThomasonSet":
        return cls.from_members(poset, poset.elements)

    @classmethod
    def empty(cls, poset: SpectralPoset) -> "ThomasonSet":
        return cls.from_members(poset, ())

    def is_full(self) -> bool:
        return self.members == frozenset(self.poset.elements)

    def __contains__(self, p: PrimeId) -> bool:
        return p in self.members

    def __le__(self, other: "ThomasonSet") -> bool:
        return self.members <= other.members

    def union(self, other: "ThomasonSet") -> "ThomasonSet":
        if other.poset != self.poset:
            raise InvalidInputError("cannot combine Thomason sets over different posets")
        return ThomasonSet.from_members(self.poset, self.members | other.members)

    def sorted_members(self) -> list[PrimeId]:
        return sorted(self.members)

    def __repr__(self):
        return f"ThomasonSet({self.sorted_members()})"


@dataclass(frozen=True)
class ThomasonFiltration:
    """Decreasing Z-indexed sequence of Thomason sets, finitely represented.

    ``values[k]`` is X_n for n = lo + k; X_n = low_tail for n < lo and
    X_n = high_tail for n > hi.  Empty ``values`` with distinct tails encodes a
    pure step: low_tail through lo - 1, high_tail from lo on.  Use
    :func:`make_filtration` to build one.
    """

    poset: SpectralPoset
    low_tail: ThomasonSet
    lo: int
    values: tuple[ThomasonSet, ...]
    high_tail: ThomasonSet

    @property
    def hi(self) -> int:
        return self.lo + len(self.values) - 1

    def at(self, n: int) -> ThomasonSet:
        if n < self.lo:
            return self.low_tail
        if n > self.hi:
            return self.high_tail
        return self.values[n - self.lo]

    def window(self) -> tuple[int, int]:
        """(lo, hi); empty (lo, lo - 1) for constants and pure steps, in which
        case the value at every n is already determined by the tails."""
        return (self.lo, self.hi)

    def __repr__(self):
        parts = [f"<{self.low_tail.sorted_members()}"]
        parts += [f"{self.lo + k}:{v.sorted_members()}" for k, v in enumerate(self.values)]
        parts.append(f">{self.high_tail.sorted_members()}")
        return "ThomasonFiltration(" + " / ".join(parts) + ")"


def make_filtration(
    poset: SpectralPoset,
    low_tail: ThomasonSet,
    breakpoints: Sequence[tuple[int, ThomasonSet]],
    high_tail: ThomasonSet,
) -> ThomasonFiltration:
    """Validate and canonicalize a filtration.

    Breakpoint indices must be strictly increasing; gaps are filled by
    propagating the previous value downward (the filtration is constant between
    explicit breakpoints).  Breakpoints equal to the value already implied by
    the tails are dropped.
    """
    for _, s in breakpoints:
        if s.poset != poset:
            raise InvalidInputError("breakpoint set lives on a different poset")
    if low_tail.poset != poset or high_tail.poset != poset:
        raise InvalidInputError("tail set lives on a different poset")
    ns = [n for n, _ in breakpoints]
    if ns != sorted(set(ns)):
        raise InvalidInputError("breakpoint indices must be strictly increasing")
    if not ns and low_tail.members != high_tail.members:
        raise FiltrationOrderError(
            "tails differ but no breakpoint locates the step; give at least one breakpoint"
        )
    # expand to one value per degree in [lo, hi]
    values: list[ThomasonSet] = []
    lo = ns[0] if ns else 0
    prev = low_tail
    idx = dict(breakpoints)
    for n in range(lo, (ns[-1] + 1) if ns else lo):
        cur = idx.get(n, prev)
        if not cur.members <= prev.members:
            raise FiltrationOrderError(
                f"filtration not decreasing at degree {n}: "
                f"{cur.sorted_members()} is not contained in {prev.sorted_members()}"
            )
        values.append(cur)
        prev = cur
    if not high_tail.members <= prev.members:
        raise FiltrationOrderError(
            f"filtration not decreasing into the high tail: "
            f"{high_tail.sorted_members()} is not contained in {prev.sorted_members()}"
        )
    # canonical trim: drop leading values equal to the low tail and trailing
    # values equal to the high tail
    while values and values[0].members == low_tail.members:
        values.pop(0)
        lo += 1
    while values and values[-1].members == high_tail.members:
        values.pop()
    if not values and low_tail.members == high_tail.members:
        lo = 0
    return ThomasonFiltration(poset, low_tail, lo, tuple(values), high_tail)


def constant_filtration(poset: SpectralPoset, value: ThomasonSet) -> ThomasonFiltration:
    return make_filtration(poset, value, [], value)


def filtration_at(filtration: ThomasonFiltration, n: int) -> ThomasonSet:
    return filtration.at(n)


def is_nondegenerate(filtration: ThomasonFiltration) -> bool:
    """Intersection of all X_n empty and union all of Spec; with the finite
    representation this is exactly high_tail = empty and low_tail = full."""
    return not filtration.high_tail.members and filtration.low_tail.is_full()


def is_constant(filtration: ThomasonFiltration) -> bool:
    return not filtration.values and filtration.low_tail.members == filtration.high_tail.members


def restrict_set(s: ThomasonSet, m: PrimeId) -> ThomasonSet:
    """X |-> X intersected with the down-set of m, on Spec(R_m)."""
    sub, _ = localization_poset(s.poset, m)
    return ThomasonSet.from_members(sub, s.members & set(sub.elements))


def restrict_filtration(filtration: ThomasonFiltration, m: PrimeId) -> ThomasonFiltration:
    """Degreewise restriction to the localization poset at a maximal point m."""
    poset = filtration.poset
    if m not in maximal_points(poset):
        raise InvalidInputError(f"{m!r} is not a maximal point")
    sub, _ = localization_poset(poset, m)
    down = set(sub.elements)

    def cut(s: ThomasonSet) -> ThomasonSet:
        return ThomasonSet.from_members(sub, s.members & down)

    lo, hi = filtration.window()
    # lo - 1 is included so the position of a pure step survives restriction
    return make_filtration(
        sub,
        cut(filtration.low_tail),
        [(n, cut(filtration.at(n))) for n in range(lo - 1, hi + 1)],
        cut(filtration.high_tail),
    )


def set_to_json(s: ThomasonSet):
    return "full" if s.is_full() else s.sorted_members()


def set_from_json(poset: SpectralPoset, data) -> ThomasonSet:
    if data == "full":
        return ThomasonSet.full(poset)
    if not isinstance(data, (list, tuple)):
        raise InvalidInputError(f"expected 'full' or a list of labels, got {data!r}")
    return ThomasonSet.from_members(poset, data)


def filtration_to_json(filtration: ThomasonFiltration) -> dict:
    breakpoints = [
        {"n": filtration.lo + k, "set": set_to_json(v)}
        for k, v in enumerate(filtration.values)
    ]
    if not breakpoints and filtration.low_tail.members != filtration.high_tail.members:
        # pure step: record the last degree still equal to the low tail
        breakpoints = [{"n": filtration.lo - 1, "set": set_to_json(filtration.low_tail)}]
    return {
        "low_tail": set_to_json(filtration.low_tail),
        "breakpoints": breakpoints,
        "high_tail": set_to_json(filtration.high_tail),
    }


def filtration_from_json(poset: SpectralPoset, data: Mapping) -> ThomasonFiltration:
    try:
        low = set_from_json(poset, data["low_tail"])
        high = set_from_json(poset, data["high_tail"])
        bps = [(bp["n"], set_from_json(poset, bp["set"])) for bp in data.get("breakpoints", [])]
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed filtration JSON: {exc}") from exc
    return make_filtration(poset, low, bps, high)
