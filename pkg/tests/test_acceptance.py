"""Acceptance gate: one test per criterion, each printing a pass/fail line.

The criteria are exact (no numeric tolerances); the stated time limits are
asserted with a wall clock.
"""

import os
import subprocess
import sys
import time

import pytest

from wittforge.indexset import IndexSet
from wittforge.structure import v_nonfree_obstruction
from wittforge.suites import Budget, suite_run

SRC = os.path.join(os.path.dirname(__file__), "..", "src")


def _run(name, seed=42):
    return suite_run(name, seed, Budget())


def _report(num, label, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"{status} criterion {num}: {label}" + (f" ({detail})" if detail else ""))
    assert ok, f"criterion {num}: {label}: {detail}"


def test_criterion_01_witt_ring_axioms():
    t0 = time.monotonic()
    rep = _run("witt-ring-axioms")
    elapsed = time.monotonic() - t0
    _report(
        1,
        "Witt ring axioms + ghost homomorphism, 200 triples per (ring, E)",
        rep.ok() and elapsed < 10.0,
        f"{rep.cases} cases, {elapsed:.1f}s, failures={rep.failures[:2]}",
    )


def test_criterion_02_operator_identities():
    rep = _run("witt-operators")
    _report(
        2,
        "F_n ring hom, F_m F_n = F_mn, F_p V_p = p, projection formula, Teichmuller",
        rep.ok(),
        f"{rep.cases} cases",
    )


def test_criterion_03_universal_integrality():
    rep = _run("witt-universal-integrality")
    _report(
        3,
        "universal polynomial generation up to div(30), p_typical(p,4), p in {2,3,5}; "
        "s2 and m2 reproduced exactly",
        rep.ok(),
        f"{rep.cases} cases, failures={rep.failures[:2]}",
    )


def test_criterion_04_annihilator_equivalence():
    rep = _run("wf-annihilator")
    _report(
        4,
        "lambda in W[F] iff lambda * VW = 0, exhaustive over W_2(Z/2) and W_2(Z/4)",
        rep.ok(),
        f"{rep.cases} cases",
    )


def test_criterion_05_local_decomposition():
    rep = _run("local-decomposition")
    _report(
        5,
        "local decomposition is a ring isomorphism with two-sided round trips "
        "over zmod(9) (p=3, E=div 6) and Q",
        rep.ok(),
        f"{rep.cases} cases",
    )


def test_criterion_06_hodge_tate_equivalences():
    rep = _run("hodge-tate-equivalences")
    _report(
        6,
        "Hodge-Tate predicate iff V(unit) search iff kernel = W[F]; distinguished "
        "iff [x]+V(unit) search, exhaustive over W_2(Z/4)",
        rep.ok(),
        f"{rep.cases} cases, failures={rep.failures[:2]}",
    )


def test_criterion_07_nonfree_obstruction():
    t0 = time.monotonic()
    out = v_nonfree_obstruction(IndexSet.divisors_of(10))
    elapsed = time.monotonic() - t0
    ok = (
        out.get("result") == "unsat"
        and out.get("congruence") == {"n": 10, "m": 2, "p": 5}
        and elapsed < 1.0
    )
    _report(7, "div(10) obstruction UNSAT citing v_10 = v_2 mod 5", ok, f"{elapsed:.3f}s")


def test_criterion_08_cone():
    rep = _run("cone-laws")
    _report(
        8,
        "cone commutativity iff quasi-ideal law; associativity at levels 2-3; "
        "trivial isotropy and pi0 = R/I for injective d",
        rep.ok(),
        f"{rep.cases} cases",
    )


def test_criterion_09_rees():
    rep = _run("rees-dictionary")
    _report(
        9,
        "Rees round trips, Day convolution laws, twist/degree-shift consistency, "
        "footnote normalization",
        rep.ok(),
        f"{rep.cases} cases",
    )


def test_criterion_10_derham():
    t0 = time.monotonic()
    rep = _run("derham-cohomology")
    elapsed = time.monotonic() - t0
    _report(
        10,
        "G_m (1,1) with full/zero Hodge pattern; A^1 (1,0); Kunneth a<=3 b<=2; "
        "Fil pattern for a+b<=4",
        rep.ok() and elapsed < 5.0,
        f"{rep.cases} cases, {elapsed:.1f}s",
    )


def test_criterion_11_iadic_gr():
    rep = _run("iadic-gr")
    _report(
        11,
        "I-adic gr ranks equal Sym^i ranks of the Kahler module for Q[x], Q[x,z] "
        "up to degree 4",
        rep.ok(),
        f"{rep.cases} cases",
    )


def test_criterion_12_prismatic_points():
    rep = _run("prismatic-points")
    _report(
        12,
        "Wbar pi0 maps surjective with nilpotent kernels; Z[x]/(x^2) groupoid has "
        "4 objects; unit scaling leaves counts invariant",
        rep.ok(),
        f"{rep.cases} cases, failures={rep.failures[:2]}",
    )


def test_criterion_13_verify_cli():
    env = dict(os.environ, PYTHONPATH=SRC)
    t0 = time.monotonic()
    proc = subprocess.run(
        [sys.executable, "-m", "wittforge", "verify", "--suite", "all", "--seed", "42"],
        capture_output=True,
        text=True,
        env=env,
        timeout=120,
    )
    elapsed = time.monotonic() - t0
    ok = proc.returncode == 0 and elapsed < 60.0
    _report(
        13,
        "verify --suite all --seed 42 exits 0 in under 60 s",
        ok,
        f"exit={proc.returncode}, {elapsed:.1f}s",
    )
