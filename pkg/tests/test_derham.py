import pytest

from wittforge.derham import (
    DeRhamError,
    MonomialAlgebra,
    build_complex,
    gadr_points,
    hodge_cohomology,
    rees_package,
    rees_package_degree,
)
from wittforge.numutil import binomial
from wittforge.rings import make_ring


def test_gm():
    H = hodge_cohomology(MonomialAlgebra(1, 0))
    assert (H.h[0], H.h[1]) == (1, 1)
    assert H.fil[(1, 1)] == 1 and H.fil[(2, 1)] == 0
    assert H.fil[(0, 0)] == 1 and H.fil[(1, 0)] == 0


def test_affine_line():
    H = hodge_cohomology(MonomialAlgebra(0, 1))
    assert (H.h[0], H.h[1]) == (1, 0)


def test_torus_squared():
    H = hodge_cohomology(MonomialAlgebra(2, 0))
    assert [H.h[j] for j in range(3)] == [1, 2, 1]


@pytest.mark.parametrize("a", range(4))
@pytest.mark.parametrize("b", range(3))
def test_kunneth_and_fil(a, b):
    H = hodge_cohomology(MonomialAlgebra(a, b))
    n = a + b
    for j in range(n + 1):
        assert H.h[j] == binomial(a, j)
    if n <= 4:
        for j in range(n + 1):
            for i in range(n + 2):
                assert H.fil[(i, j)] == (H.h[j] if i <= j else 0)
    assert sum((-1) ** j * H.h[j] for j in range(n + 1)) == (0 if a >= 1 else 1)
    assert H.h[0] == 1


def test_slices():
    A = MonomialAlgebra(1, 1)
    for sl in build_complex(A, 1, 2):
        assert sl.verify_d_squared()
        r = sum(1 for m in sl.character[1] if m >= 1)
        for k, d in enumerate(sl.dims()):
            assert d == binomial(1 + r, k)
        # exactness off the zero character
        if any(sl.character[0]) or any(sl.character[1]):
            for j in range(A.dim() + 1):
                assert sl.cohomology_dim(j) == 0


def test_zero_slice_contributes():
    A = MonomialAlgebra(1, 0)
    zero_slice = [
        sl for sl in build_complex(A, 1, 0) if not any(sl.character[0])
    ][0]
    assert zero_slice.cohomology_dim(0) == 1
    assert zero_slice.cohomology_dim(1) == 1


def test_box_soundness():
    small = hodge_cohomology(MonomialAlgebra(1, 1), 1, 1)
    big = hodge_cohomology(MonomialAlgebra(1, 1), 2, 3)
    assert small.h == big.h and small.fil == big.fil


def test_rees_packaging():
    gm = hodge_cohomology(MonomialAlgebra(1, 0))
    rm = rees_package_degree(gm, 1)
    assert rm.piece(-1).dim() == 1 and rm.piece(-2).dim() == 0
    a1 = hodge_cohomology(MonomialAlgebra(0, 1))
    assert rees_package_degree(a1, 1).piece(-1).dim() == 0
    g2 = hodge_cohomology(MonomialAlgebra(2, 0))
    assert rees_package_degree(g2, 1).piece(-1).dim() == 2
    assert set(rees_package(g2)) == {0, 1, 2}


def test_report_json():
    obj = hodge_cohomology(MonomialAlgebra(1, 0)).to_json()
    assert obj["a"] == 1 and obj["b"] == 0
    assert obj["H"] == {"0": 1, "1": 1}
    assert obj["Fil"]["1"]["1"] == 1 and obj["Fil"]["1"]["2"] == 0
    assert "rees" in obj


def test_gadr_points():
    R = make_ring("quot(poly(rationals; t); 1*t^3)")
    out = gadr_points(R, R.variable("t"))
    assert out["pi0"].quotient_ring.descriptor() == "quot(poly(rationals; t); 1*t)"
    out1 = gadr_points(R, R.one())
    assert out1["pi0"].quotient_ring.size() == 1
    out0 = gadr_points(R, R.zero())
    assert out0["pi0"].quotient_ring.descriptor() == R.descriptor()


def test_bad_algebra():
    with pytest.raises(DeRhamError):
        MonomialAlgebra(-1, 0)
