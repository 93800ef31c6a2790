"""Exhaustive property sweeps over the generated corpora.

Each sweep returns a :class:`SweepReport` with the number of instances checked
and serializable witnesses for every violation (empty list = property holds).
The sweeps are deterministic; ``jobs`` distributes independent instances over
a thread pool.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import catalog, gluing, homalg, rings as rng, torsion_cosilting as tc, tstructures as ts
from .errors import IncompatibleFamilyError
from .poset import SpectralPoset, localization_poset, maximal_points
from .rings import FiniteRing
from .thomason import (
    ThomasonFiltration,
    ThomasonSet,
    filtration_to_json,
    is_constant,
    is_nondegenerate,
    restrict_filtration,
    set_to_json,
)


@dataclass
class SweepReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "ok": self.ok,
            "failures": self.failures,
            "details": self.details,
        }


def default_jobs() -> int:
    value = os.environ.get("SPECTRAL_GLUE_JOBS", "")
    try:
        return max(1, int(value))
    except ValueError:
        return 1


def _map(fn, items, jobs):
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _merge(name, parts) -> SweepReport:
    report = SweepReport(name)
    for part in parts:
        report.checked += part.checked
        report.failures.extend(part.failures)
        for key, value in part.details.items():
            report.details[key] = report.details.get(key, 0) + value
    return report


# -- 1: set-level localize/glue bijection ------------------------------------


def _set_gluing_for_poset(poset: SpectralPoset) -> SweepReport:
    report = SweepReport("set-gluing")
    descr = poset.to_json()
    # localize-then-glue is the identity on Thomason sets
    for x in catalog.all_thomason_sets(poset):
        report.checked += 1
        back = gluing.glue_sets(poset, gluing.localize_sets(x))
        if back.members != x.members:
            report.failures.append(
                {"poset": descr, "set": set_to_json(x), "glued": set_to_json(back)}
            )
    # glue-then-localize is the identity on compatible families
    for family in catalog.all_set_families(poset):
        verdict = gluing.check_dagger_sets(poset, family)
        if not verdict.dagger_holds:
            continue
        report.checked += 1
        glued = gluing.glue_sets(poset, family)
        back = gluing.localize_sets(glued)
        if any(back[m].members != family[m].members for m in family):
            report.failures.append(
                {
                    "poset": descr,
                    "family": {m: set_to_json(s) for m, s in family.items()},
                    "glued": set_to_json(glued),
                }
            )
    return report


def sweep_set_gluing(max_poset: int = 6, jobs: int = 1) -> SweepReport:
    posets = catalog.poset_catalog(max_poset)
    report = _merge("set-gluing", _map(_set_gluing_for_poset, posets, jobs))
    report.details["posets"] = len(posets)
    return report


# -- 2: compatibility equivalent to the ideal-family description -------------


def _compat_for_poset(poset: SpectralPoset) -> SweepReport:
    report = SweepReport("compat-equivalence")
    descr = poset.to_json()
    for family in catalog.all_set_families(poset):
        report.checked += 1
        if not gluing.check_lemma_equiv(poset, family):
            report.failures.append(
                {
                    "poset": descr,
                    "family": {m: set_to_json(s) for m, s in family.items()},
                    "reason": "condition (dagger) and ideal-family description disagree",
                }
            )
        verdict = gluing.check_dagger_sets(poset, family)
        if verdict.dagger_holds and not verdict.glued_thomason:
            report.failures.append(
                {
                    "poset": descr,
                    "family": {m: set_to_json(s) for m, s in family.items()},
                    "reason": "compatible family glued to a non-Thomason set",
                }
            )
    return report


def sweep_lemma_equiv(max_poset: int = 6, jobs: int = 1) -> SweepReport:
    posets = catalog.poset_catalog(max_poset)
    report = _merge("compat-equivalence", _map(_compat_for_poset, posets, jobs))
    report.details["posets"] = len(posets)
    return report


# -- 3: filtration-level localize/glue bijection ------------------------------


def _family_compatible(poset, family) -> bool:
    lo = min(f.window()[0] for f in family.values()) - 1
    hi = max(f.window()[1] for f in family.values()) + 1
    return all(
        gluing.check_dagger_sets(poset, {m: f.at(n) for m, f in family.items()}).dagger_holds
        for n in range(lo, hi + 1)
    )


def _filtration_for_poset(poset: SpectralPoset, lo: int, hi: int) -> SweepReport:
    report = SweepReport("filtration-bijection")
    descr = poset.to_json()
    for filt in catalog.all_filtrations(poset, lo, hi):
        report.checked += 1
        family = gluing.localize_filtrations(filt)
        problems = []
        if not _family_compatible(poset, family.filtrations):
            problems.append("localized family not compatible")
        glued = gluing.glue_filtrations(family)
        if glued != filt:
            problems.append("glue(localize(F)) differs from F")
        local_nondeg = all(is_nondegenerate(f) for f in family.filtrations.values())
        if is_nondegenerate(filt) != local_nondeg:
            problems.append("non-degeneracy not preserved/reflected")
        local_const = all(is_constant(f) for f in family.filtrations.values())
        if is_constant(filt) != local_const:
            problems.append("stability (constancy) not preserved/reflected")
        if problems:
            report.failures.append(
                {"poset": descr, "filtration": filtration_to_json(filt), "problems": problems}
            )
    for family in catalog.all_filtration_families(poset, lo, hi):
        if not _family_compatible(poset, family):
            continue
        report.checked += 1
        glued = gluing.glue_filtrations(gluing.LocalFamily(poset, family))
        back = gluing.localize_filtrations(glued)
        if any(back.filtrations[m] != family[m] for m in family):
            report.failures.append(
                {
                    "poset": descr,
                    "family": {m: filtration_to_json(f) for m, f in family.items()},
                    "problems": ["localize(glue(family)) differs from family"],
                }
            )
    return report


def sweep_filtration_bijection(
    max_poset: int = 4, window: tuple[int, int] = (-2, 2), jobs: int = 1
) -> SweepReport:
    posets = catalog.poset_catalog(max_poset)
    lo, hi = window
    report = _merge(
        "filtration-bijection", _map(lambda p: _filtration_for_poset(p, lo, hi), posets, jobs)
    )
    report.details["posets"] = len(posets)
    return report


# -- 4: Koszul support -------------------------------------------------------


def _koszul_for_ring(ring: FiniteRing) -> SweepReport:
    report = SweepReport("koszul_support")
    ideals = rng.all_ideals(ring)
    gen_lists = [ideal.generators for ideal in ideals]
    # redundant two-generator presentations must give the same support; the
    # middle Koszul term has rank 2, so only enumerate where |R|^2 is small
    if ring.order**2 <= 1000:
        for a, b in itertools.islice(itertools.combinations(ideals, 2), 10):
            gen_lists.append((a.generators[0], b.generators[0]))
    for gens in gen_lists:
        ideal = rng.Ideal(ring, gens)
        kos = homalg.koszul(ring, gens)
        v_set = rng.v_of_ideal(ring, ideal)
        for n in range(kos.min_degree, kos.max_degree + 1):
            report.checked += 1
            supp = homalg.support_of_cohomology(kos, n)
            if not supp.members <= v_set.members:
                report.failures.append(
                    {
                        "ring": ring.to_json(),
                        "generators": [str(g) for g in gens],
                        "degree": n,
                        "support": set_to_json(supp),
                        "v_of_ideal": set_to_json(v_set),
                    }
                )
    return report


def sweep_koszul_support(
    max_n: int = 60, max_p: int = 5, max_deg: int = 3, jobs: int = 1
) -> SweepReport:
    rings = catalog.zmod_catalog(max_n) + catalog.poly_catalog(max_p, max_deg)
    report = _merge("koszul_support", _map(_koszul_for_ring, rings, jobs))
    report.details["rings"] = len(rings)
    return report


# -- shared membership tables for 5 and 6 ------------------------------------


def _aisle_supports(complex_) -> dict[int, frozenset]:
    return {
        n: homalg.support_of_cohomology(complex_, n).members
        for n in range(complex_.min_degree, complex_.max_degree + 1)
    }


def _aisle_ok(supports, filt: ThomasonFiltration) -> bool:
    return all(supp <= filt.at(n).members for n, supp in supports.items())


def _coaisle_table(ring, ideals, koszuls, complex_):
    """(ideal index, n) -> derived_hom(K(I), Y, n) vanishes."""
    max_len = max(k.max_degree - k.min_degree for k in koszuls)
    lo = complex_.min_degree
    hi = complex_.max_degree + max_len
    table = {}
    for idx, kos in enumerate(koszuls):
        for n in range(lo, hi + 1):
            table[(idx, n)] = homalg.derived_hom(kos, complex_, n).is_zero_module()
    return table, (lo, hi)


def _coaisle_ok(ideal_supports, table, span, filt: ThomasonFiltration) -> bool:
    lo, hi = span
    for (idx, n), vanishes in table.items():
        if vanishes:
            continue
        if ideal_supports[idx] <= filt.at(n).members:
            return False
    return True


# -- 5: orthogonality of the classified t-structures -------------------------


def _orthogonality_for_ring(ring: FiniteRing, window) -> SweepReport:
    report = SweepReport("orthogonality")
    ideals = rng.all_ideals(ring)
    koszuls = [homalg.koszul_of_ideal(ring, ideal) for ideal in ideals]
    ideal_supports = [rng.v_of_ideal(ring, ideal).members for ideal in ideals]
    xs = catalog.koszul_complexes(ring, shifts=(0, 1))
    xs = xs[: len(ideals) * 2 + 10]  # all singles plus a few direct sums
    ys = catalog.stalk_complexes(ring, degrees=(0, 1))
    x_supports = [_aisle_supports(x) for x in xs]
    y_tables = [_coaisle_table(ring, ideals, koszuls, y) for y in ys]
    orthogonal = {}
    filts = catalog.spec_filtrations(ring, *window)
    for filt in filts:
        aisle = [i for i, supp in enumerate(x_supports) if _aisle_ok(supp, filt)]
        coaisle = [
            j for j, (table, span) in enumerate(y_tables) if _coaisle_ok(ideal_supports, table, span, filt)
        ]
        for i in aisle:
            for j in coaisle:
                report.checked += 1
                if (i, j) not in orthogonal:
                    orthogonal[(i, j)] = homalg.derived_hom(xs[i], ys[j], 0).is_zero_module()
                if not orthogonal[(i, j)]:
                    report.failures.append(
                        {
                            "ring": ring.to_json(),
                            "filtration": filtration_to_json(filt),
                            "aisle_complex": repr(xs[i]),
                            "coaisle_complex": repr(ys[j]),
                        }
                    )
    return report


def sweep_orthogonality(
    max_ring: int = 30, window: tuple[int, int] = (-1, 1), jobs: int = 1
) -> SweepReport:
    rings = [r for r in catalog.zmod_catalog(max_ring) if r.order <= max_ring]
    rings += [r for r in catalog.poly_catalog(3, 2) if r.order <= max_ring]
    rings += [r for r in catalog.product_catalog(max_ring) if r.order <= max_ring]
    report = _merge(
        "orthogonality", _map(lambda r: _orthogonality_for_ring(r, window), rings, jobs)
    )
    report.details["rings"] = len(rings)
    return report


# -- 6: local-global coaisle membership and descriptor gluing ----------------


def _local_global_for_ring(ring: FiniteRing, window) -> SweepReport:
    report = SweepReport("local_global")
    ideals = rng.all_ideals(ring)
    koszuls = [homalg.koszul_of_ideal(ring, ideal) for ideal in ideals]
    ideal_supports = [rng.v_of_ideal(ring, ideal).members for ideal in ideals]
    ys = catalog.stalk_complexes(ring, degrees=(0, 1))
    y_tables = [_coaisle_table(ring, ideals, koszuls, y) for y in ys]
    labels = sorted(lf.label for lf in ring.local_factors())
    local_parts = {m: [homalg.localize_complex(y, m) for y in ys] for m in labels}
    filts = catalog.spec_filtrations(ring, *window)
    poset, _ = rng.spec(ring)
    for filt in filts:
        t = ts.TStructureDescriptor(ring, filt)
        local_ts = {m: ts.localize_tstructure(t, m) for m in labels}
        # descriptor family glues back to the original filtration
        report.checked += 1
        glued = gluing.glue_filtrations(gluing.localize_filtrations(filt))
        if glued != filt:
            report.failures.append(
                {"ring": ring.to_json(), "problem": "descriptor family does not glue back"}
            )
        for j, y in enumerate(ys):
            report.checked += 1
            table, span = y_tables[j]
            global_verdict = _coaisle_ok(ideal_supports, table, span, filt)
            local_verdict = all(
                ts.coaisle_membership(local_parts[m][j], local_ts[m]) for m in labels
            )
            if global_verdict != local_verdict:
                report.failures.append(
                    {
                        "ring": ring.to_json(),
                        "complex": repr(y),
                        "global": global_verdict,
                        "local": local_verdict,
                    }
                )
    return report


def sweep_local_global(
    max_ring: int = 40, window: tuple[int, int] = (-1, 1), jobs: int = 1
) -> SweepReport:
    rings = [r for r in catalog.product_catalog(max_ring) if len(r.local_factors()) <= 3]
    rings += [rng.ZMod(12), rng.ZMod(30)]
    report = _merge(
        "local_global", _map(lambda r: _local_global_for_ring(r, window), rings, jobs)
    )
    report.details["rings"] = len(rings)
    return report


# -- 7: torsion / injective-class bijections ---------------------------------


def _torsion_for_ring(ring: FiniteRing) -> SweepReport:
    report = SweepReport("torsion")
    poset, _ = rng.spec(ring)
    injective_images = {}
    for x in catalog.all_thomason_sets(poset):
        report.checked += 1
        cyclics = tc.torsion_class_cyclics(ring, x)
        back = tc.thomason_of_torsion_class(ring, cyclics)
        problems = []
        if back.members != x.members:
            problems.append("torsion-class roundtrip broke")
        injectives = tc.injective_class_of(ring, x)
        signature = tuple(sorted(repr(sorted(e.elements)) for e in injectives))
        if signature in injective_images:
            problems.append(
                f"injective_class_of not injective (collides with {injective_images[signature]})"
            )
        injective_images[signature] = set_to_json(x)
        recovered = tc.thomason_of_injective_class(ring, injectives)
        if recovered.members != x.members:
            problems.append("Hom-vanishing recovery from the injective class broke")
        if problems:
            report.failures.append(
                {"ring": ring.to_json(), "set": set_to_json(x), "problems": problems}
            )
    return report


def sweep_torsion(max_n: int = 60, jobs: int = 1) -> SweepReport:
    rings = catalog.zmod_catalog(max_n)
    report = _merge("torsion", _map(_torsion_for_ring, rings, jobs))
    report.details["rings"] = len(rings)
    return report


# -- 8: cosilting gluing -----------------------------------------------------


def _cosilting_fixture_report(cosilting) -> SweepReport:
    report = SweepReport("cosilting")
    ring = cosilting.ring
    poset, _ = rng.spec(ring)
    report.checked += 1
    problems = []
    if not tc.is_cosilting(cosilting):
        problems.append("fixture fails the cosilting verification")
    global_set = tc.cosilting_thomason_of_module(cosilting)
    components = tc.components_of_cosilting(cosilting)
    glued = tc.glue_cosilting(ring, components)
    if not tc.cosilting_equivalent(glued, cosilting):
        problems.append("split-then-glue is not equivalent to the original")
    # componentwise Thomason sets as a family over the maximal spectrum
    family = {}
    for m, comp in components.items():
        local_set = tc.cosilting_thomason_of_module(comp)
        sub, _ = localization_poset(poset, m)
        members = {m} if local_set.members else set()
        family[m] = ThomasonSet.from_members(sub, members)
    verdict = gluing.check_dagger_sets(poset, family)
    if not verdict.dagger_holds:
        problems.append("componentwise Thomason sets are not compatible")
    else:
        glued_set = gluing.glue_sets(poset, family)
        if glued_set.members != global_set.members:
            problems.append("componentwise Thomason sets do not glue to the global set")
    # the two-term filtration restricts to the local two-term pattern
    filt = tc.two_term_filtration(global_set)
    for m in family:
        local_filt = restrict_filtration(filt, m)
        if local_filt.at(0).members != family[m].members:
            problems.append(f"two-term filtration at {m!r} disagrees with the local set")
    if problems:
        report.failures.append(
            {
                "ring": ring.to_json(),
                "module_order": cosilting.module.order,
                "problems": problems,
            }
        )
    return report


def sweep_cosilting(jobs: int = 1) -> SweepReport:
    fixtures = catalog.cosilting_fixtures()
    report = _merge("cosilting", _map(_cosilting_fixture_report, fixtures, jobs))
    report.details["fixtures"] = len(fixtures)
    return report


# -- 9: adjunction across localize/colocalize --------------------------------


def _adjunction_for_ring(ring: FiniteRing) -> SweepReport:
    report = SweepReport("adjunction")
    ys = catalog.stalk_complexes(ring, degrees=(0, 1))
    for lf in ring.local_factors():
        xs = catalog.koszul_complexes(lf.ring, shifts=(0,))
        xs = xs[: len(rng.all_ideals(lf.ring)) + 4]
        for x in xs:
            for y in ys:
                y_local = homalg.localize_complex(y, lf.label)
                for i in (-1, 0, 1):
                    report.checked += 1
                    lhs = homalg.derived_hom(x, y, i, factor=lf).order
                    rhs = homalg.derived_hom(x, y_local, i).order
                    if lhs != rhs:
                        report.failures.append(
                            {
                                "ring": ring.to_json(),
                                "factor": lf.label,
                                "perfect": repr(x),
                                "target": repr(y),
                                "degree": i,
                                "hom_over_R": lhs,
                                "hom_over_Rm": rhs,
                            }
                        )
    return report


def sweep_adjunction(jobs: int = 1) -> SweepReport:
    rings = [rng.ZMod(12), rng.ZMod(30), rng.ZMod(36)]
    rings += [r for r in catalog.product_catalog(40)][:4]
    report = _merge("adjunction", _map(_adjunction_for_ring, rings, jobs))
    report.details["rings"] = len(rings)
    return report


# -- aggregate ---------------------------------------------------------------


def run_all(
    max_poset: int = 5,
    max_ring: int = 24,
    window: tuple[int, int] = (-1, 1),
    jobs: int = 1,
) -> list[SweepReport]:
    """The fuzz entry point: every sweep with (reduced) default bounds."""
    return [
        sweep_set_gluing(max_poset=max_poset, jobs=jobs),
        sweep_lemma_equiv(max_poset=max_poset, jobs=jobs),
        sweep_filtration_bijection(max_poset=min(max_poset, 4), window=window, jobs=jobs),
        sweep_koszul_support(max_n=max_ring, max_p=3, max_deg=2, jobs=jobs),
        sweep_orthogonality(max_ring=max_ring, window=window, jobs=jobs),
        sweep_local_global(max_ring=max_ring, window=window, jobs=jobs),
        sweep_torsion(max_n=max_ring, jobs=jobs),
        sweep_cosilting(jobs=jobs),
        sweep_adjunction(jobs=jobs),
    ]
