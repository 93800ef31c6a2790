"""Narrow symbolic layer for gluing over Z.

Z has infinitely many maximal ideals, so local families are stored as a
default pattern plus finitely many exceptions.  The only Thomason subsets of
Spec(Z) we represent are "full" and finite sets of maximal primes; a default
whose closed point is populated would glue to an infinite, non-full set and is
rejected loudly.  Everything outside this scope raises UnsupportedRingError.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .errors import IncompatibleFamilyError, InvalidInputError, UnsupportedRingError
from .poset import SpectralPoset
from .thomason import ThomasonFiltration, ThomasonSet, filtration_from_json, make_filtration

GENERIC = "(0)"
CLOSED_POINT = "(m)"  # placeholder label for "the maximal ideal" in default patterns


def is_prime_int(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def primes_upto(bound: int) -> list[int]:
    return [p for p in range(2, bound + 1) if is_prime_int(p)]


@lru_cache(maxsize=None)
def chain_poset(p: int) -> SpectralPoset:
    """Spec(Z_(p)) as the 2-chain (0) < (p)."""
    if not is_prime_int(p):
        raise InvalidInputError(f"{p} is not a prime number")
    return SpectralPoset([GENERIC, f"({p})"], [(GENERIC, f"({p})")])


@lru_cache(maxsize=None)
def template_poset() -> SpectralPoset:
    """The generic 2-chain pattern used for default filtrations."""
    return SpectralPoset([GENERIC, CLOSED_POINT], [(GENERIC, CLOSED_POINT)])


@dataclass(frozen=True)
class ZThomason:
    """A Thomason subset of Spec(Z): full, or a finite set of maximal primes."""

    full: bool
    primes: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.full and self.primes:
            raise InvalidInputError("a full set carries no explicit primes")
        for p in self.primes:
            if not is_prime_int(p):
                raise InvalidInputError(f"{p} is not a prime number")

    def contains_generic(self) -> bool:
        return self.full

    def restrict(self, p: int) -> ThomasonSet:
        poset = chain_poset(p)
        if self.full:
            return ThomasonSet.full(poset)
        return ThomasonSet.from_members(poset, {f"({p})"} if p in self.primes else set())

    def to_json(self):
        return "full" if self.full else sorted(self.primes)

    def __repr__(self):
        return "ZThomason(full)" if self.full else f"ZThomason({sorted(self.primes)})"


def z_v_of_ideal(generators) -> ZThomason:
    """V(I) for a finitely generated (hence principal up to gcd) ideal of Z."""
    import math

    g = 0
    for x in generators:
        g = math.gcd(g, int(x))
    if g == 0:
        return ZThomason(full=True)
    if g == 1:
        return ZThomason(full=False)
    return ZThomason(full=False, primes=frozenset(p for p in primes_upto(g) if g % p == 0))


@dataclass(frozen=True)
class ZFiltration:
    """Decreasing Z-indexed sequence of ZThomason sets, finitely represented."""

    low_tail: ZThomason
    lo: int
    values: tuple[ZThomason, ...]
    high_tail: ZThomason

    @property
    def hi(self) -> int:
        return self.lo + len(self.values) - 1

    def at(self, n: int) -> ZThomason:
        if n < self.lo:
            return self.low_tail
        if n > self.hi:
            return self.high_tail
        return self.values[n - self.lo]

    def window(self) -> tuple[int, int]:
        return (self.lo, self.hi)


def _z_leq(a: ZThomason, b: ZThomason) -> bool:
    if b.full:
        return True
    if a.full:
        return False
    return a.primes <= b.primes


def make_z_filtration(low_tail, breakpoints, high_tail) -> ZFiltration:
    ns = [n for n, _ in breakpoints]
    if ns != sorted(set(ns)):
        raise InvalidInputError("breakpoint indices must be strictly increasing")
    if not ns and low_tail != high_tail:
        raise InvalidInputError("tails differ but no breakpoint locates the step")
    values = []
    lo = ns[0] if ns else 0
    prev = low_tail
    idx = dict(breakpoints)
    for n in range(lo, (ns[-1] + 1) if ns else lo):
        cur = idx.get(n, prev)
        if not _z_leq(cur, prev):
            raise InvalidInputError(f"filtration not decreasing at degree {n}")
        values.append(cur)
        prev = cur
    if not _z_leq(high_tail, prev):
        raise InvalidInputError("filtration not decreasing into the high tail")
    while values and values[0] == low_tail:
        values.pop(0)
        lo += 1
    while values and values[-1] == high_tail:
        values.pop()
    if not values and low_tail == high_tail:
        lo = 0
    return ZFiltration(low_tail, lo, tuple(values), high_tail)


@dataclass(frozen=True)
class ZLocalFamily:
    """default pattern on the template 2-chain + finitely many exceptions.

    The default is applied at every maximal ideal not listed in ``exceptions``;
    exception filtrations live on the actual 2-chain at their prime.
    """

    default: ThomasonFiltration
    exceptions: Mapping[int, ThomasonFiltration]

    def __post_init__(self):
        if self.default.poset != template_poset():
            raise InvalidInputError("default filtration must live on the template 2-chain")
        for p, filt in self.exceptions.items():
            if filt.poset != chain_poset(p):
                raise InvalidInputError(f"exception at {p} lives on the wrong poset")
        object.__setattr__(self, "exceptions", dict(self.exceptions))

    def window(self) -> tuple[int, int]:
        windows = [f.window() for f in (self.default, *self.exceptions.values())]
        return (min(w[0] for w in windows), max(w[1] for w in windows))


def _generic_profile(filt, n: int) -> bool:
    return GENERIC in filt.at(n).members


def check_z_dagger(family: ZLocalFamily, n: int):
    """Over Z the only shared prime between distinct localizations is (0),
    so the gluing condition reduces to agreement on generic-point membership."""
    default_has = _generic_profile(family.default, n)
    for p in sorted(family.exceptions):
        if _generic_profile(family.exceptions[p], n) != default_has:
            return (p, "default", GENERIC)
    # exception/exception disagreement is subsumed by comparison with default
    return None


def glue_z_sets(family: ZLocalFamily, n: int) -> ZThomason:
    witness = check_z_dagger(family, n)
    if witness is not None:
        raise IncompatibleFamilyError(
            f"family disagrees on the generic point at degree {n} "
            f"(exception at {witness[0]})",
            degree=n,
            witness=witness,
        )
    if _generic_profile(family.default, n):
        # every local set is the full 2-chain (up-set containing the bottom)
        return ZThomason(full=True)
    if CLOSED_POINT in family.default.at(n).members:
        raise UnsupportedRingError(
            "default populates the closed point at infinitely many primes; "
            "the glued set would be infinite and not representable"
        )
    primes = set()
    for p, filt in family.exceptions.items():
        members = filt.at(n).members
        if GENERIC in members:
            raise IncompatibleFamilyError(
                f"exception at {p} contains the generic point while the default does not",
                degree=n,
                witness=(p, "default", GENERIC),
            )
        if f"({p})" in members:
            primes.add(p)
    return ZThomason(full=False, primes=frozenset(primes))


def glue_z_filtrations(family: ZLocalFamily) -> ZFiltration:
    lo, hi = family.window()
    low = glue_z_sets_tail(family, low=True)
    high = glue_z_sets_tail(family, low=False)
    # lo - 1 is included so pure-step families keep their step position
    return make_z_filtration(
        low, [(n, glue_z_sets(family, n)) for n in range(lo - 1, hi + 1)], high
    )


def glue_z_sets_tail(family: ZLocalFamily, low: bool) -> ZThomason:
    lo, hi = family.window()
    n = (lo - 1) if low else (hi + 1)
    return glue_z_sets(family, n)


def localize_z_filtration(filtration: ZFiltration, bound: int = 0) -> ZLocalFamily:
    """Restrict a global Z filtration to every localization.

    The restriction at almost every prime is the same pattern (full where the
    level is full, the generic point never isolated, the closed point only at
    the finitely many primes listed in a level); those finitely many primes
    become the exceptions.
    """
    mentioned = set()
    lo, hi = filtration.window()
    lo -= 1  # keep the step position of pure-step filtrations
    for n in range(lo, hi + 1):
        mentioned |= filtration.at(n).primes
    mentioned |= filtration.low_tail.primes | filtration.high_tail.primes

    def template_set(z: ZThomason) -> ThomasonSet:
        poset = template_poset()
        return ThomasonSet.full(poset) if z.full else ThomasonSet.empty(poset)

    default = make_filtration(
        template_poset(),
        template_set(filtration.low_tail),
        [(n, template_set(filtration.at(n))) for n in range(lo, hi + 1)],
        template_set(filtration.high_tail),
    )
    exceptions = {}
    for p in sorted(mentioned):
        exceptions[p] = make_filtration(
            chain_poset(p),
            filtration.low_tail.restrict(p),
            [(n, filtration.at(n).restrict(p)) for n in range(lo, hi + 1)],
            filtration.high_tail.restrict(p),
        )
    return ZLocalFamily(default, exceptions)


def z_filtration_from_json(data: Mapping) -> ZFiltration:
    def parse_set(v):
        if v == "full":
            return ZThomason(full=True)
        return ZThomason(full=False, primes=frozenset(int(p) for p in v))

    try:
        return make_z_filtration(
            parse_set(data["low_tail"]),
            [(bp["n"], parse_set(bp["set"])) for bp in data.get("breakpoints", [])],
            parse_set(data["high_tail"]),
        )
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed Z filtration JSON: {exc}") from exc


def z_filtration_to_json(filtration: ZFiltration) -> dict:
    breakpoints = [
        {"n": filtration.lo + k, "set": v.to_json()}
        for k, v in enumerate(filtration.values)
    ]
    if not breakpoints and filtration.low_tail != filtration.high_tail:
        # pure step: a synthetic breakpoint pins the step position
        breakpoints = [{"n": filtration.lo - 1, "set": filtration.low_tail.to_json()}]
    return {
        "low_tail": filtration.low_tail.to_json(),
        "breakpoints": breakpoints,
        "high_tail": filtration.high_tail.to_json(),
    }


def z_family_from_json(data: Mapping) -> ZLocalFamily:
    try:
        default = filtration_from_json(template_poset(), data["default"])
        exceptions = {
            int(p): filtration_from_json(chain_poset(int(p)), filt)
            for p, filt in data.get("exceptions", {}).items()
        }
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed Z family JSON: {exc}") from exc
    return ZLocalFamily(default, exceptions)
