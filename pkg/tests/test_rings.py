import random

import pytest

from wittforge.rings import (
    INTEGERS,
    RATIONALS,
    InexactDivision,
    ParseError,
    RingMismatch,
    UnsupportedRing,
    ValidationError,
    elem_arith,
    elem_is_nilpotent,
    elem_is_unit,
    exact_div,
    make_ring,
)


def test_parse_basic():
    assert make_ring("zmod:4").descriptor() == "zmod:4"
    assert make_ring("integers").descriptor() == "integers"
    r = make_ring("poly(rationals; x; inv x)")
    assert r.descriptor() == "poly(rationals; x; inv x)"
    q = make_ring("quot(poly(rationals; t); 1*t^3)")
    assert q.degree == 3


def test_parse_errors():
    with pytest.raises(ValidationError):
        make_ring("zmod:1")
    with pytest.raises(ParseError):
        make_ring("gibberish")
    with pytest.raises(ValidationError):
        make_ring("poly(integers; x; inv y)")
    with pytest.raises(UnsupportedRing):
        make_ring("quot(poly(rationals; t); 1*t^2, 1*t^3)")


def test_zmod_arith():
    z4 = make_ring("zmod:4")
    assert elem_arith("add", z4(2), z4(3)) == z4(1)
    assert elem_arith("mul", z4(2), z4(3)) == z4(2)
    assert elem_arith("sub", z4(1), z4(3)) == z4(2)
    assert elem_arith("neg", z4(3)) == z4(1)


def test_laurent_inverse_monomial():
    lq = make_ring("poly(rationals; x; inv x)")
    x = lq.elem(lq.variable("x"))
    xinv = lq.elem(lq.monomial((-1,)))
    assert x * xinv == lq(1)
    ok, inv = elem_is_unit(x)
    assert ok and inv == xinv


def test_exact_division():
    zx = make_ring("poly(integers; x)")
    e = zx("6*x+3")
    assert exact_div(e, 3) == zx("2*x+1")
    with pytest.raises(InexactDivision):
        exact_div(e, 2)


def test_unit_examples():
    z4 = make_ring("zmod:4")
    ok, inv = elem_is_unit(z4(3))
    assert ok and inv == z4(3)
    assert elem_is_unit(z4(2)) == (False, None)
    assert elem_is_unit(INTEGERS(-1))[0]
    assert not elem_is_unit(INTEGERS(2))[0]
    assert elem_is_unit(RATIONALS("2/3"))[0]


def test_unit_poly_over_zmod():
    # 1 + 2x is a unit in (Z/4)[x]; x alone is not
    r = make_ring("poly(zmod:4; x)")
    f = r("1+2*x")
    ok, inv = elem_is_unit(f)
    assert ok and f * inv == r(1)
    assert not elem_is_unit(r.elem(r.variable("x")))[0]
    # mixed CRT unit in (Z/6)[x, 1/x]
    r6 = make_ring("poly(zmod:6; x; inv x)")
    g = r6("4+3*x")
    ok, inv = elem_is_unit(g)
    assert ok and g * inv == r6(1)


def test_nilpotent_examples():
    z4, z6 = make_ring("zmod:4"), make_ring("zmod:6")
    assert elem_is_nilpotent(z4(2)) == (True, 2)
    assert elem_is_nilpotent(z6(2)) == (False, None)
    assert elem_is_nilpotent(INTEGERS(0)) == (True, 1)
    assert elem_is_nilpotent(INTEGERS(5)) == (False, None)
    p = make_ring("poly(zmod:4; x)")
    ok, k = elem_is_nilpotent(p("2*x+2"))
    assert ok and (p("2*x+2") ** k).is_zero() and not (p("2*x+2") ** (k - 1)).is_zero()


def test_quotient_ring():
    q = make_ring("quot(poly(rationals; t); 1*t^3)")
    t = q.elem(q.variable("t"))
    assert (t**3).is_zero()
    assert elem_is_nilpotent(t) == (True, 3)
    ok, inv = elem_is_unit(q("1+1*t"))
    assert ok and q("1+1*t") * inv == q(1)
    assert not elem_is_unit(t)[0]


def test_quotient_unit_over_integers():
    # t is a unit in Z[t]/(t^2 - 1), with inverse t
    q = make_ring("quot(poly(integers; t); 1*t^2+-1)")
    t = q.elem(q.variable("t"))
    ok, inv = elem_is_unit(t)
    assert ok and inv == t
    assert not elem_is_unit(q(2))[0]


def test_zero_ring():
    zr = make_ring("quot(poly(rationals; t); 1)")
    assert zr.size() == 1
    assert zr(1) == zr(0)


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        elem_arith("add", make_ring("zmod:4")(1), make_ring("zmod:5")(1))


def test_serialization_round_trip():
    rng = random.Random(7)
    for desc in (
        "integers",
        "rationals",
        "zmod:12",
        "poly(integers; x,y)",
        "poly(rationals; x; inv x)",
        "poly(zmod:4; u,v)",
        "quot(poly(rationals; t); 1*t^3)",
    ):
        ring = make_ring(desc)
        for _ in range(50):
            raw = ring.canonicalize(ring.random(rng))
            assert ring.el_from_str(ring.el_to_str(raw)) == raw


def test_canonical_sorting():
    r = make_ring("poly(integers; x,y)")
    s = r.el_to_str(r.el_from_str("3+1*x^2+2*x*y+1*x"))
    # ascending total degree, then lexicographic exponent order
    assert s.index("3") < s.index("x^2")
