"""Acceptance gate: one exhaustive property sweep per release criterion.

Each test prints exactly one PASS/FAIL line (run with ``pytest -s`` or read
captured output) and fails loudly with the first counterexample fixture if a
sweep finds one.
"""

import time

from spectral_glue import sweeps


def _gate(name: str, report, *, extra_ok: bool = True, extra_msg: str = ""):
    ok = report.ok and extra_ok
    print(f"{'PASS' if ok else 'FAIL'}: {name} ({report.checked} instances checked)")
    assert report.ok, f"{name}: first counterexample {report.failures[:1]}"
    assert extra_ok, f"{name}: {extra_msg}"


def test_criterion_1_set_gluing_bijection():
    start = time.monotonic()
    report = sweeps.sweep_set_gluing(max_poset=6)
    elapsed = time.monotonic() - start
    _gate(
        "set-level localize/glue bijection on all posets with <= 6 elements",
        report,
        extra_ok=report.details["posets"] >= 300 and elapsed < 60,
        extra_msg=f"{report.details['posets']} posets in {elapsed:.1f}s (need >= 300 in < 60s)",
    )


def test_criterion_2_compatibility_equivalence():
    report = sweeps.sweep_lemma_equiv(max_poset=6)
    _gate(
        "compatibility condition equivalent to the ideal-family description; "
        "compatible families glue to up-sets",
        report,
    )


def test_criterion_3_filtration_bijection():
    report = sweeps.sweep_filtration_bijection(max_poset=4, window=(-2, 2))
    _gate(
        "filtration-level glue/localize bijection preserving and reflecting "
        "(non-)degeneracy and constancy, window [-2, 2], posets <= 4 elements",
        report,
    )


def test_criterion_4_koszul_support():
    start = time.monotonic()
    report = sweeps.sweep_koszul_support(max_n=60, max_p=5, max_deg=3)
    elapsed = time.monotonic() - start
    _gate(
        "Koszul cohomology supported on V(I) for all ideals of Z/n (n <= 60) "
        "and F_p[x]/(f) (p <= 5, deg f <= 3)",
        report,
        extra_ok=elapsed < 30,
        extra_msg=f"took {elapsed:.1f}s (budget 30s)",
    )


def test_criterion_5_orthogonality():
    report = sweeps.sweep_orthogonality(max_ring=30, window=(-1, 1))
    _gate(
        "derived Hom vanishes in degree 0 between aisle and coaisle members, "
        "rings of order <= 30, window [-1, 1]",
        report,
        extra_ok=report.checked >= 10_000,
        extra_msg=f"only {report.checked} pairs (need >= 10^4)",
    )


def test_criterion_6_local_global():
    report = sweeps.sweep_local_global(max_ring=40)
    _gate(
        "coaisle membership over product rings equals the conjunction of local "
        "memberships; descriptor families glue back",
        report,
    )


def test_criterion_7_torsion_bijections():
    report = sweeps.sweep_torsion(max_n=60)
    _gate(
        "Thomason <-> torsion-class roundtrip exact and injective-class map "
        "injective on all Z/n (n <= 60)",
        report,
    )


def test_criterion_8_cosilting_gluing():
    report = sweeps.sweep_cosilting()
    _gate(
        "split-then-glue of cosilting fixtures yields equivalent modules with "
        "compatible componentwise Thomason sets",
        report,
        extra_ok=report.details["fixtures"] >= 10,
        extra_msg=f"only {report.details['fixtures']} fixtures (need >= 10)",
    )


def test_criterion_9_adjunction():
    report = sweeps.sweep_adjunction()
    _gate(
        "Hom-group cardinalities agree across localization/colocalization",
        report,
        extra_ok=report.checked >= 1_000,
        extra_msg=f"only {report.checked} triples (need >= 10^3)",
    )
