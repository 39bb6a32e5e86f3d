import random

import pytest

from wittforge.cone import (
    FreeModule,
    QuasiIdeal,
    UnsupportedRing,
    cone_hom_set,
    cone_level_arith,
    cone_level_mul,
    cone_level_one,
    cone_pi0,
    quasi_ideal_check,
)
from wittforge.indexset import IndexSet
from wittforge.rings import INTEGERS, RATIONALS, make_ring
from wittforge.witt import WittRing


def test_law_ideal_always_holds():
    q = QuasiIdeal.from_ideal(INTEGERS, [3])
    assert quasi_ideal_check(q) == (True, None)


def test_law_rank_one():
    q = QuasiIdeal.rank_one(INTEGERS, 7)
    assert quasi_ideal_check(q)[0]


def test_law_negative_control():
    R = make_ring("poly(integers; a,b)")
    q = QuasiIdeal(R, FreeModule(R, 2), [R.variable("a"), R.variable("b")])
    ok, witness = quasi_ideal_check(q)
    assert not ok and witness is not None
    # commutativity fails exactly when the law does
    e1 = (R.zero(), (R.one(), R.zero()))
    e2 = (R.zero(), (R.zero(), R.one()))
    assert cone_level_mul(q, e1, e2) != cone_level_mul(q, e2, e1)


def test_level_arithmetic_worked_example():
    q = QuasiIdeal.rank_one(INTEGERS, 2)
    assert cone_level_mul(q, (1, (3,)), (2, (5,))) == (2, (41,))
    assert cone_level_mul(q, (3, (0,)), (4, (0,))) == (12, (0,))
    assert cone_level_mul(q, (0, (3,)), (0, (5,))) == (0, (30,))
    assert cone_level_arith(q, 2, "add", (1, (3,)), (2, (5,))) == (3, (8,))
    with pytest.raises(Exception):
        cone_level_arith(q, 3, "mul", (1, (3,)), (2, (5,)))


def test_level_axioms_random():
    rng = random.Random(23)
    z4 = make_ring("zmod:4")
    for q in (QuasiIdeal.rank_one(INTEGERS, 2), QuasiIdeal.rank_one(z4, 2)):
        for n in (2, 3):
            one = cone_level_one(q, n)
            for _ in range(100):
                u = (q.ring.random(rng),) + tuple(
                    (q.ring.random(rng),) for _ in range(n - 1)
                )
                v = (q.ring.random(rng),) + tuple(
                    (q.ring.random(rng),) for _ in range(n - 1)
                )
                w = (q.ring.random(rng),) + tuple(
                    (q.ring.random(rng),) for _ in range(n - 1)
                )
                assert cone_level_mul(q, u, v) == cone_level_mul(q, v, u)
                assert cone_level_mul(q, cone_level_mul(q, u, v), w) == cone_level_mul(
                    q, u, cone_level_mul(q, v, w)
                )
                assert cone_level_mul(q, u, one) == u


def test_pi0():
    assert cone_pi0(QuasiIdeal.rank_one(INTEGERS, 2)).quotient_ring.descriptor() == "zmod:2"
    assert cone_pi0(QuasiIdeal.rank_one(INTEGERS, 0)).quotient_ring.descriptor() == "integers"
    p = cone_pi0(QuasiIdeal.from_ideal(INTEGERS, [3]))
    assert p.quotient_ring.descriptor() == "zmod:3"
    z4 = make_ring("zmod:4")
    p4 = cone_pi0(QuasiIdeal.rank_one(z4, 2))
    assert len(p4.classes) == 2 and len(p4.image) == 2


def test_pi0_witt_coefficients():
    z4 = make_ring("zmod:4")
    W = WittRing(IndexSet.divisors_of(2), z4)
    q = QuasiIdeal.rank_one(W, W.from_int(2))
    p = cone_pi0(q)
    assert len(p.classes) * len(p.image) == 16


def test_hom_sets():
    q = QuasiIdeal.rank_one(INTEGERS, 2)
    assert cone_hom_set(q, 0, 4) == [(2,)]
    assert cone_hom_set(q, 0, 3) == []
    z4 = make_ring("zmod:4")
    q4 = QuasiIdeal.rank_one(z4, 2)
    assert sorted(cone_hom_set(q4, 0, 2)) == [(1,), (3,)]
    # injective d: trivial isotropy
    q3 = QuasiIdeal.from_ideal(INTEGERS, [3])
    assert cone_hom_set(q3, 5, 5) == [0]
    assert cone_hom_set(q3, 0, 3) == [3]
    assert cone_hom_set(q3, 0, 1) == []


def test_groupoid_composition():
    z4 = make_ring("zmod:4")
    q = QuasiIdeal.rank_one(z4, 2)
    for r1 in range(4):
        for r2 in range(4):
            for r3 in range(4):
                h13 = cone_hom_set(q, r1, r3)
                for x in cone_hom_set(q, r1, r2):
                    for y in cone_hom_set(q, r2, r3):
                        assert tuple(z4.add(a, b) for a, b in zip(x, y)) in h13


def test_pi0_unsupported():
    with pytest.raises(UnsupportedRing):
        cone_pi0(QuasiIdeal.rank_one(make_ring("poly(integers; x)"), 2))


def test_quasi_ideal_json():
    from wittforge.cone import quasi_ideal_from_json, quasi_ideal_to_json

    q = QuasiIdeal.rank_one(INTEGERS, 2)
    obj = quasi_ideal_to_json(q)
    assert obj == {"base": "integers", "generators": 1, "relations": [], "d": ["2"]}
    q2 = quasi_ideal_from_json(obj)
    assert q2.d_gens == q.d_gens and q2.ring == q.ring
    with pytest.raises(UnsupportedRing):
        quasi_ideal_from_json({"base": "integers", "generators": 1, "relations": [[1]], "d": ["2"]})
