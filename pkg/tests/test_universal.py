import json
import os
import threading

import pytest

from wittforge.indexset import IndexSet
from wittforge.sparsepoly import IntPoly
from wittforge.universal import (
    UniversalEntry,
    _certify_step,
    _entry_from_json,
    clear_memory_cache,
    generate_universal_polynomials,
    get_universal,
    ghost_poly,
)

E2 = IndexSet.divisors_of(2)


def test_ghost_poly():
    g2 = ghost_poly(E2, 2, 0, 2)
    # g_2 = x_1^2 + 2 x_2 in variables (x1, x2, y1, y2)
    assert g2 == IntPoly(4, {(2, 0, 0, 0): 1, (0, 1, 0, 0): 2})


def test_sum_product_frozen_forms():
    s = get_universal(E2, "sum")
    assert s.poly(1) == IntPoly(4, {(1, 0, 0, 0): 1, (0, 0, 1, 0): 1})
    assert s.poly(2) == IntPoly(4, {(0, 1, 0, 0): 1, (0, 0, 0, 1): 1, (1, 0, 1, 0): -1})
    m = get_universal(E2, "product")
    assert m.poly(2) == IntPoly(4, {(2, 0, 0, 1): 1, (0, 1, 2, 0): 1, (0, 1, 0, 1): 2})


def test_negation_family():
    n = get_universal(E2, "negation")
    assert n.poly(1) == IntPoly(2, {(1, 0): -1})
    # ghost(neg) = -ghost: n2 = -x1^2 - x2
    assert n.poly(2) == IntPoly(2, {(2, 0): -1, (0, 1): -1})


def test_frobenius_family():
    E = IndexSet.p_typical(2, 1)
    f = get_universal(E, "frobenius:2")
    # F_2(x1, x2) has the single coordinate x1^2 + 2 x2
    assert f.poly(1) == IntPoly(2, {(2, 0): 1, (0, 1): 2})
    fid = get_universal(E, "frobenius:1")
    assert fid.poly(1) == IntPoly(2, {(1, 0): 1})
    assert fid.poly(2) == IntPoly(2, {(0, 1): 1})


def test_generation_certificates_for_oversized_levels():
    E = IndexSet.p_typical(5, 4)
    entry = generate_universal_polynomials(E, "sum", term_cap=200)
    assert 625 in entry.certified
    assert entry.polys[625] is None
    assert entry.polys[1] is not None
    with pytest.raises(Exception):
        entry.poly(625)


def test_certify_step_is_exact():
    # the congruence checker runs on sparse ghosts only
    _certify_step(IndexSet.p_typical(5, 4), "sum", 625)
    _certify_step(IndexSet.p_typical(5, 4), "product", 625)
    _certify_step(IndexSet.divisors_of(30), "product", 30)


def test_json_round_trip():
    entry = get_universal(E2, "sum")
    obj = json.loads(json.dumps(entry.to_json()))
    back = _entry_from_json(obj)
    assert back.polys[2] == entry.polys[2]


def test_disk_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("WITTFORGE_CACHE_DIR", str(tmp_path))
    clear_memory_cache()
    E = IndexSet.divisors_of(4)
    first = get_universal(E, "sum")
    files = os.listdir(tmp_path)
    assert any("sum" in f for f in files)
    clear_memory_cache()
    second = get_universal(E, "sum")
    assert first.polys[4] == second.polys[4]
    clear_memory_cache()


def test_concurrent_generation_idempotent():
    clear_memory_cache()
    E = IndexSet.divisors_of(12)
    results = []

    def worker():
        results.append(get_universal(E, "product"))

    threads = [threading.Thread(target=worker) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r is results[0] for r in results)


def test_intpoly_engine():
    p = IntPoly(2, {(1, 0): 1, (0, 1): 1})
    assert (p**2) == IntPoly(2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert (p - p) == IntPoly(2)
    q = (p**2).exact_div(1)
    assert q == p**2
    with pytest.raises(Exception):
        (p**2).exact_div(2)
    assert p.frobenius_substitute(3) == IntPoly(2, {(3, 0): 1, (0, 3): 1})


def test_certificates_agree_with_exact_expansion():
    # force certificate mode on levels that are also small enough to expand,
    # then confirm the materialized ground truth exists with exact divisions
    for E, op in (
        (IndexSet.divisors_of(12), "sum"),
        (IndexSet.divisors_of(12), "product"),
        (IndexSet.p_typical(3, 3), "sum"),
    ):
        forced = generate_universal_polynomials(E, op, term_cap=5)
        exact = generate_universal_polynomials(E, op, term_cap=10**9)
        assert forced.certified, "expected certificate-mode levels"
        assert not exact.certified
        for n in forced.certified:
            assert exact.polys[n] is not None  # exact division succeeded too
