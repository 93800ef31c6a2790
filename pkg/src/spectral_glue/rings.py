"""Concrete finite commutative rings with computable spectra.

Supported kinds: Z/n, F_p[x]/(f), finite direct products of these, and a
narrow symbolic adapter for Z (see :mod:`spectral_glue.integers`).  Every
finite kind decomposes as a product of local chain rings (Z/p^k or
F_p[x]/(pi^k)); the decomposition drives localization, injectives and module
isomorphism invariants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Mapping

from . import modules
from .errors import InvalidInputError, UnsupportedRingError
from .modules import FiniteModule
from .poset import SpectralPoset
from .thomason import ThomasonSet

# -- polynomial helpers over F_p (coefficient tuples, low degree first) ------


def pnorm(coeffs, p):
    cs = [c % p for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def padd(a, b, p):
    n = max(len(a), len(b))
    return pnorm([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], p)


def pneg(a, p):
    return pnorm([-c for c in a], p)


def pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return pnorm(out, p)


def pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    rem = list(a)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(rem) >= len(b) and pnorm(rem, p):
        rem = list(pnorm(rem, p))
        if len(rem) < len(b):
            break
        shift = len(rem) - len(b)
        factor = rem[-1] * inv_lead % p
        quot[shift] = factor
        for i, cb in enumerate(b):
            rem[shift + i] -= factor * cb
        rem = list(pnorm(rem, p))
    return pnorm(quot, p), pnorm(rem, p)


def pmonic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return pnorm([c * inv for c in a], p)


def pegcd(a, b, p):
    """Extended gcd over F_p[x]: returns (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = pnorm(a, p), pnorm(b, p)
    u0, u1 = (1,), ()
    v0, v1 = (), (1,)
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        u0, u1 = u1, padd(u0, pneg(pmul(q, u1, p), p), p)
        v0, v1 = v1, padd(v0, pneg(pmul(q, v1, p), p), p)
    if r0:
        inv = pow(r0[-1], -1, p)
        scale = (inv,)
        r0, u0, v0 = pmul(r0, scale, p), pmul(u0, scale, p), pmul(v0, scale, p)
    return r0, u0, v0


def monic_polys(p, degree):
    for tail in itertools.product(range(p), repeat=degree):
        yield pnorm(list(tail) + [1], p)


def poly_factor(f, p):
    """Factor a monic polynomial into monic irreducibles by trial division."""
    f = pmonic(f, p)
    factors: list = []
    stack = [f]
    while stack:
        g = stack.pop()
        if len(g) <= 2:  # constant or linear: irreducible (or unit)
            if len(g) == 2:
                factors.append(g)
            continue
        found = False
        for d in range(1, (len(g) - 1) // 2 + 1):
            for cand in monic_polys(p, d):
                q, r = pdivmod(g, cand, p)
                if not r:
                    stack.extend([cand, q])
                    found = True
                    break
            if found:
                break
        if not found:
            factors.append(g)
    factors.sort()
    return factors


def poly_str(coeffs) -> str:
    if not coeffs:
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            var = "x" if i == 1 else f"x^{i}"
            terms.append(var if c == 1 else f"{c}{var}")
    return "+".join(terms)


# -- integer helpers ---------------------------------------------------------


def factorint_trial(n: int) -> dict[int, int]:
    if n > 10**6:
        raise InvalidInputError("modulus too large for trial division (limit 10^6)")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# -- ring classes ------------------------------------------------------------


@dataclass(frozen=True)
class LocalFactor:
    """One local chain-ring factor of a finite ring.

    ``prime_gen`` generates the prime ideal of the factor inside the global
    ring, ``idempotent`` projects onto the factor, ``proj``/``lift`` move
    elements between the global and local rings (``lift`` lands in the factor
    component, zero elsewhere).
    """

    label: str
    prime_gen: object
    idempotent: object
    ring: "FiniteRing"
    proj: Callable
    lift: Callable


class FiniteRing:
    """Shared machinery; concrete kinds implement the raw ring operations."""

    kind = "abstract"

    def elements(self):
        raise NotImplementedError

    @cached_property
    def element_index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements())}

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    @property
    def order(self) -> int:
        return len(self.elements())

    def local_factors(self) -> list[LocalFactor]:
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(self.descriptor())

    def __repr__(self):
        return self.describe()

    def describe(self) -> str:
        raise NotImplementedError

    def descriptor(self):
        raise NotImplementedError


class ZMod(FiniteRing):
    kind = "zmod"

    def __init__(self, n: int):
        if n < 2:
            raise InvalidInputError("modulus must be at least 2")
        self.n = n
        self.zero = 0
        self.one = 1 % n

    def elements(self):
        return list(range(self.n))

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    @cached_property
    def _factors(self):
        out = []
        for p, k in sorted(factorint_trial(self.n).items()):
            q = p**k
            rest = self.n // q
            if rest == 1:
                e = 1 % self.n
            else:
                e = rest * pow(rest, -1, q) % self.n
            local = ZMod(q)
            out.append(
                LocalFactor(
                    label=f"({p})",
                    prime_gen=p % self.n,
                    idempotent=e,
                    ring=local,
                    proj=lambda x, q=q: x % q,
                    lift=lambda y, e=e: (y * e) % self.n,
                )
            )
        return out

    def local_factors(self):
        return self._factors

    def describe(self):
        return f"Z/{self.n}"

    def descriptor(self):
        return ("zmod", self.n)

    def to_json(self):
        return {"kind": "zmod", "n": self.n}


class PolyQuot(FiniteRing):
    """F_p[x]/(f) with f monic non-constant; elements are coefficient tuples."""

    kind = "poly_quot"

    def __init__(self, p: int, f):
        if p < 2 or any(p % d == 0 for d in range(2, p)):
            raise InvalidInputError("p must be prime")
        f = pnorm(f, p)
        if len(f) < 2:
            raise InvalidInputError("f must be non-constant")
        if f[-1] != 1:
            if pow(f[-1], -1, p) is None:  # pragma: no cover - always invertible mod prime
                raise InvalidInputError("leading coefficient must be a unit")
            f = pmonic(f, p)
        if p > 7 or len(f) - 1 > 6:
            raise InvalidInputError("supported range is p <= 7 and deg f <= 6")
        self.p = p
        self.f = f
        self.zero = ()
        self.one = (1,)

    def elements(self):
        deg = len(self.f) - 1
        return [pnorm(c, self.p) for c in itertools.product(range(self.p), repeat=deg)]

    @cached_property
    def _add_table(self) -> dict:
        elems = self.elements()
        return {(a, b): padd(a, b, self.p) for a in elems for b in elems}

    @cached_property
    def _mul_table(self) -> dict:
        elems = self.elements()
        return {
            (a, b): pdivmod(pmul(a, b, self.p), self.f, self.p)[1]
            for a in elems
            for b in elems
        }

    def add(self, a, b):
        return self._add_table[(a, b)]

    def neg(self, a):
        return pneg(a, self.p)

    def mul(self, a, b):
        return self._mul_table[(a, b)]

    @cached_property
    def _factors(self):
        irreducibles: dict[tuple, int] = {}
        for g in poly_factor(self.f, self.p):
            irreducibles[g] = irreducibles.get(g, 0) + 1
        out = []
        for pi in sorted(irreducibles):
            k = irreducibles[pi]
            pik = pi
            for _ in range(k - 1):
                pik = pmul(pik, pi, self.p)
            rest = pdivmod(self.f, pik, self.p)[0]
            if len(rest) == 1:
                e = self.one
            else:
                _, u, _ = pegcd(rest, pik, self.p)
                e = self.mul(rest, u)
            local = PolyQuot(self.p, pik)
            out.append(
                LocalFactor(
                    label=f"({poly_str(pi)})",
                    prime_gen=pdivmod(pi, self.f, self.p)[1],
                    idempotent=e,
                    ring=local,
                    proj=lambda x, pik=pik: pdivmod(x, pik, self.p)[1],
                    lift=lambda y, e=e: self.mul(y, e),
                )
            )
        return out

    def local_factors(self):
        return self._factors

    def describe(self):
        return f"F_{self.p}[x]/({poly_str(self.f)})"

    def descriptor(self):
        return ("poly_quot", self.p, self.f)

    def to_json(self):
        return {"kind": "poly_quot", "p": self.p, "f": list(self.f)}


class ProductRing(FiniteRing):
    kind = "product"

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise InvalidInputError("product needs at least one factor")
        for f in factors:
            if isinstance(f, IntegerRing):
                raise UnsupportedRingError("the integers adapter cannot be a product factor")
        self.factors = factors
        self.zero = tuple(f.zero for f in factors)
        self.one = tuple(f.one for f in factors)

    def elements(self):
        return [tuple(t) for t in itertools.product(*(f.elements() for f in self.factors))]

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def _embed(self, i, x, fill):
        out = list(fill)
        out[i] = x
        return tuple(out)

    @cached_property
    def _factors(self):
        out = []
        for i, component in enumerate(self.factors):
            for lf in component.local_factors():
                out.append(
                    LocalFactor(
                        label=f"{i}:{lf.label}",
                        prime_gen=self._embed(i, lf.prime_gen, self.one),
                        idempotent=self._embed(i, lf.idempotent, self.zero),
                        ring=lf.ring,
                        proj=lambda x, i=i, lf=lf: lf.proj(x[i]),
                        lift=lambda y, i=i, lf=lf: self._embed(i, lf.lift(y), self.zero),
                    )
                )
        return out

    def local_factors(self):
        return self._factors

    def describe(self):
        return " x ".join(f.describe() for f in self.factors)

    def descriptor(self):
        return ("product", tuple(f.descriptor() for f in self.factors))

    def to_json(self):
        return {"kind": "product", "factors": [f.to_json() for f in self.factors]}


class IntegerRing(FiniteRing):
    """Symbolic adapter for Z; only the operations the gluing demo needs."""

    kind = "integers"

    def __init__(self):
        self.zero = 0
        self.one = 1

    def elements(self):
        raise UnsupportedRingError("cannot enumerate the integers")

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def local_factors(self):
        raise UnsupportedRingError("the integers have infinitely many maximal ideals")

    def describe(self):
        return "Z"

    def descriptor(self):
        return ("integers",)

    def to_json(self):
        return {"kind": "integers"}


def ring_from_json(data: Mapping) -> FiniteRing:
    try:
        kind = data["kind"]
        if kind == "zmod":
            return ZMod(data["n"])
        if kind == "poly_quot":
            return PolyQuot(data["p"], tuple(data["f"]))
        if kind == "product":
            return ProductRing([ring_from_json(f) for f in data["factors"]])
        if kind == "integers":
            return IntegerRing()
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed ring JSON: {exc}") from exc
    raise InvalidInputError(f"unsupported ring kind {kind!r}")


# -- ideals ------------------------------------------------------------------


@dataclass(frozen=True)
class Ideal:
    ring: FiniteRing
    generators: tuple

    def __post_init__(self):
        if not self.generators:
            raise InvalidInputError("ideal needs at least one generator (use [0])")
        object.__setattr__(self, "generators", tuple(self.generators))

    @cached_property
    def members(self) -> frozenset:
        if len(self.generators) == 1:
            return principal_members(self.ring, self.generators[0])
        free = modules.free_module(self.ring, 1)
        return frozenset(v[0] for v in free.span([(g,) for g in self.generators]))

    def __contains__(self, x) -> bool:
        return x in self.members


@lru_cache(maxsize=None)
def principal_members(ring: FiniteRing, g) -> frozenset:
    """The principal ideal (g) = {rg | r in R}, cached per ring and generator."""
    return frozenset(ring.mul(r, g) for r in ring.elements())


# -- spectra, localization, modules over rings --------------------------------


def _check_finite(ring: FiniteRing, operation: str):
    if isinstance(ring, IntegerRing):
        raise UnsupportedRingError(f"{operation} is not supported for the integers adapter")


@lru_cache(maxsize=None)
def spec(ring: FiniteRing) -> tuple[SpectralPoset, dict[str, Ideal]]:
    """Spectrum as an antichain poset plus the label -> prime ideal map."""
    _check_finite(ring, "spec enumeration")
    labeling = {lf.label: Ideal(ring, (lf.prime_gen,)) for lf in ring.local_factors()}
    return SpectralPoset(labeling.keys()), labeling


def prime_members(ring: FiniteRing, label: str) -> frozenset:
    _, labeling = spec(ring)
    if label not in labeling:
        raise InvalidInputError(f"unknown prime {label!r} of {ring}")
    return labeling[label].members


def v_of_ideal(ring: FiniteRing, ideal: Ideal) -> ThomasonSet:
    """Primes containing every generator of the ideal."""
    if ideal.ring != ring:
        raise InvalidInputError("ideal belongs to a different ring")
    poset, labeling = spec(ring)
    members = [
        label
        for label, prime in labeling.items()
        if all(g in prime.members for g in ideal.generators)
    ]
    return ThomasonSet.from_members(poset, members)


def localize_ring(ring: FiniteRing, label: str):
    """Local factor at a maximal prime, with the projection map."""
    _check_finite(ring, "localization")
    for lf in ring.local_factors():
        if lf.label == label:
            return lf.ring, lf.proj
    raise InvalidInputError(f"unknown maximal prime {label!r} of {ring}")


def local_factor(ring: FiniteRing, label: str) -> LocalFactor:
    for lf in ring.local_factors():
        if lf.label == label:
            return lf
    raise InvalidInputError(f"unknown maximal prime {label!r} of {ring}")


def annihilator(module: FiniteModule) -> Ideal:
    """Ann(M) as a principal ideal (all ideals of the supported rings are)."""
    ring = module.ring
    _check_finite(ring, "annihilator")
    ann = module.annihilator_elements
    for g in sorted(ann, key=lambda e: ring.element_index[e]):
        if Ideal(ring, (g,)).members == ann:
            return Ideal(ring, (g,))
    # products of chain rings have only principal ideals
    raise AssertionError("annihilator was not principal")


def support(module: FiniteModule) -> ThomasonSet:
    """Supp(M) = V(Ann M) for finitely generated M."""
    return v_of_ideal(module.ring, annihilator(module))


def residue_field(ring: FiniteRing, label: str) -> FiniteModule:
    """kappa(p) = R/p, presented over R (all primes are maximal here)."""
    _check_finite(ring, "residue fields")
    members = prime_members(ring, label)
    free = modules.free_module(ring, 1)
    return free.quotient(frozenset((m,) for m in members))


def indecomposable_injectives(ring: FiniteRing) -> list[FiniteModule]:
    """One injective envelope E(R/m) per maximal ideal, in label order.

    The supported rings are quasi-Frobenius products of chain rings, so the
    envelope at m is the corresponding local factor e_m R.
    """
    _check_finite(ring, "injectives")
    out = []
    free = modules.free_module(ring, 1)
    for lf in sorted(ring.local_factors(), key=lambda f: f.label):
        members = frozenset((ring.mul(lf.idempotent, x),) for x in ring.elements())
        out.append(free.submodule(members, check=False))
    return out


def all_ideals(ring: FiniteRing) -> list[Ideal]:
    """All ideals, one principal representative each, deterministically ordered."""
    _check_finite(ring, "ideal enumeration")
    seen: dict[frozenset, Ideal] = {}
    for g in ring.elements():
        ideal = Ideal(ring, (g,))
        if ideal.members not in seen:
            seen[ideal.members] = ideal
    key = lambda i: tuple(sorted(ring.element_index[e] for e in i.members))
    return sorted(seen.values(), key=key)


def module_from_json(ring: FiniteRing, data: Mapping) -> FiniteModule:
    """Module JSON: {"relations": [[...]], "rank": r} (rank optional with relations)."""
    _check_finite(ring, "module presentations")
    try:
        relations = [tuple(_element_from_json(ring, c) for c in row) for row in data.get("relations", [])]
        rank = data.get("rank", len(relations[0]) if relations else 1)
    except (KeyError, TypeError, IndexError) as exc:
        raise InvalidInputError(f"malformed module JSON: {exc}") from exc
    return modules.cokernel_of_rank(ring, rank, relations)


def _element_from_json(ring: FiniteRing, value):
    if isinstance(ring, ZMod):
        return int(value) % ring.n
    if isinstance(ring, PolyQuot):
        return pnorm(value, ring.p)
    if isinstance(ring, ProductRing):
        return tuple(_element_from_json(f, v) for f, v in zip(ring.factors, value))
    raise UnsupportedRingError("cannot parse elements for this ring kind")
