import pytest

from wittforge.indexset import IndexSet
from wittforge.rings import make_ring
from wittforge.structure import EnumerationBudget, LocalContext
from wittforge.prismatic import (
    AffinePresentation,
    PrismaticContext,
    PrismaticError,
    prismatic_points_affine,
    wbar_ring,
    witt_points,
)
from wittforge.witt import make_witt, witt_mul, witt_space

Z4 = make_ring("zmod:4")
E1 = IndexSet.explicit([1])
E2 = IndexSet.divisors_of(2)


def ctx_e1():
    return PrismaticContext(Z4, E1, make_witt(E1, Z4, [2]), LocalContext.p_local(2, Z4, E1))


def ctx_e2():
    return PrismaticContext(Z4, E2, make_witt(E2, Z4, [2, 3]), LocalContext.p_local(2, Z4, E2))


def test_context_requires_distinguished():
    with pytest.raises(PrismaticError):
        PrismaticContext(Z4, E1, make_witt(E1, Z4, [1]), LocalContext.p_local(2, Z4, E1))


def test_wbar_pi0():
    model = wbar_ring(ctx_e1())
    assert model.pi0.size() == 2
    assert model.rbar.size() == 2
    assert model.check_pi0_maps()


def test_wbar_levels():
    model = wbar_ring(ctx_e2())
    W = model.context.witt_ring
    u = (W.from_int(1), (W.from_int(3),))
    v = (W.from_int(2), (W.from_int(5),))
    prod = model.level_arith(2, "mul", u, v)
    assert prod[0] == W.from_int(2)
    assert model.check_pi0_maps()
    assert model.kernel_squares_into_ideal()


def test_x_squared_groupoid():
    gpd = prismatic_points_affine(AffinePresentation(("x",), ("1*x^2",)), ctx_e1())
    assert gpd.object_count() == 4
    ws = sorted((w[0][0], g[0][0]) for w, g in gpd.objects)
    assert ws == [(0, 0), (0, 2), (2, 0), (2, 2)]
    assert gpd.check_axioms()
    assert len(gpd.components) == 2


def test_free_groupoid():
    model = wbar_ring(ctx_e2())
    gpd = prismatic_points_affine(AffinePresentation(("x",)), ctx_e2())
    assert gpd.object_count() == 16
    assert len(gpd.components) == model.pi0.size()
    sizes = {len(ms) for ms in gpd.homs.values()}
    assert len(sizes) == 1  # |Hom| constant within classes, zero across
    assert gpd.check_axioms()


def test_unit_scaling_invariance():
    base = prismatic_points_affine(AffinePresentation(("x",), ("1*x^2",)), ctx_e2())
    scaled_ctx = ctx_e2().scaled(make_witt(E2, Z4, [3, 1]))
    scaled = prismatic_points_affine(AffinePresentation(("x",), ("1*x^2",)), scaled_ctx)
    assert base.object_count() == scaled.object_count()
    assert base.morphism_count() == scaled.morphism_count()
    assert len(base.components) == len(scaled.components)


def test_scaling_requires_unit():
    with pytest.raises(PrismaticError):
        ctx_e2().scaled(make_witt(E2, Z4, [2, 0]))


def test_witt_points():
    z2 = make_ring("zmod:2")
    pts = witt_points(AffinePresentation(("x",)), E2, z2)
    assert len(pts) == 4
    idem = witt_points(AffinePresentation(("x",), ("1*x^2+-1*x",)), E2, z2)
    brute = [w for w in witt_space(E2, z2) if witt_mul(w, w) == w]
    assert len(idem) == len(brute) == 2
    none = witt_points(AffinePresentation(("x",), ("1",)), E2, z2)
    assert none == []


def test_zero_relation_rejected():
    with pytest.raises(PrismaticError):
        AffinePresentation(("x",), ("0",))


def test_budget():
    z8 = make_ring("zmod:8")
    E3 = IndexSet.p_typical(2, 2)
    with pytest.raises(EnumerationBudget):
        witt_points(AffinePresentation(("x", "y", "z")), E3, z8, cap=100)


def test_two_generators():
    B = AffinePresentation(("x", "y"), ("1*x^2",))
    gpd = prismatic_points_affine(B, ctx_e1())
    # objects: (w_x, w_y, gamma) with 2*gamma = w_x^2: 4 choices of (w_x, gamma), 4 of w_y
    assert gpd.object_count() == 16
    assert gpd.check_axioms()


def test_groupoid_json():
    gpd = prismatic_points_affine(AffinePresentation(("x",), ("1*x^2",)), ctx_e1())
    obj = gpd.to_json()
    assert len(obj["objects"]) == 4
    assert len(obj["morphism_counts"]) == 4
    assert obj["pi0"]
