import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import F1009, QQ, P
from detvar.cohomology import euler_char_X
from detvar.gallery import X, Y, Z, build
from detvar.ideal import (
    Ideal,
    annihilator,
    dimension_degree,
    eliminate,
    hilbert_function,
    hilbert_slice_dim,
    ideal_intersection,
    ideal_quotient,
    radical_membership,
    saturate,
    zero_dim_certificate,
)
from detvar.matrix import minors, pfaffians4
from detvar.polynomial import random_form
from detvar.ring import ring_create
from oracles import slice_hilbert


def _vars(R, names):
    return Ideal(R, [R.var(v) for v in names])


@pytest.fixture(scope="module")
def xy():
    return ring_create(["x", "y"], field=QQ)


# -- equality -----------------------------------------------------------------------------

def test_equality_is_mathematical(twisted_cubic):
    R = twisted_cubic.ring
    q0, q1, q2 = twisted_cubic.gens
    other = Ideal(R, [q0 + q1, q1 - q2, q2 * 3, q0 * R.var("y3")])
    assert other == twisted_cubic
    assert Ideal(R, [q0, q1]) != twisted_cubic


# -- intersection ---------------------------------------------------------------------------

def test_self_intersection(twisted_cubic):
    assert ideal_intersection(twisted_cubic, twisted_cubic) == twisted_cubic


def test_coordinate_axes(xy):
    meet = ideal_intersection(Ideal(xy, [xy.var("x")]), Ideal(xy, [xy.var("y")]))
    assert meet == Ideal(xy, [xy.parse("x*y")])


def test_methods_agree(ctx1):
    a = ideal_intersection(ctx1.C_1, ctx1.E)
    b = ideal_intersection(ctx1.C_1, ctx1.E, method="elimination")
    assert a == b


def test_component_certificate(ctx1):
    R = ctx1.P2xP3
    J = annihilator(ctx1.m) + ctx1.I_C(R)
    sat = saturate(saturate(J, _vars(R, X)), _vars(R, Y))
    assert sat == ideal_intersection(ctx1.C_1, ctx1.E)


# -- colon and saturation ----------------------------------------------------------------------

def test_colon_examples(xy, twisted_cubic):
    assert ideal_quotient(Ideal(xy, [xy.parse("x*y")]), Ideal(xy, [xy.var("x")])) == Ideal(xy, [xy.var("y")])
    R = twisted_cubic.ring
    assert ideal_quotient(twisted_cubic, Ideal(R, [R.one()])) == twisted_cubic


def test_colon_gives_residual_curve(ctx1):
    P = ctx1.P1xP3
    pre = Ideal(P, [ctx1.f]) + ctx1.I_C(P)
    sat = saturate(saturate(pre, _vars(P, Z)), _vars(P, Y))
    assert ideal_quotient(sat, ctx1.C1_curve) == pfaffians4(ctx1.pfaffian_matrix)


def test_saturate_monomial(xy):
    assert saturate(Ideal(xy, [xy.parse("x^2*y")]), Ideal(xy, [xy.var("x")])) == Ideal(xy, [xy.var("y")])


def test_saturate_non_variable_ideal(xy):
    # (x^2 y, x y^2) : (x + y)^inf = (x y)
    I = Ideal(xy, [xy.parse("x^2*y"), xy.parse("x*y^2")])
    J = Ideal(xy, [xy.parse("x + y")])
    assert saturate(I, J) == Ideal(xy, [xy.parse("x*y")])


def test_hypersurface_pipeline(ctx1):
    S = saturate(ctx1.I, _vars(ctx1.P1xP2xP3, X))
    J = eliminate(S, X).map_to(ctx1.P1xP3).trim()
    assert [g.multidegree() for g in J.gens] == [(2, 2)]


def test_saturate_fixpoint(ctx1):
    R = ctx1.P1xP3
    J = _vars(R, Z)
    I = ctx1.I_C(R) + Ideal(R, [ctx1.f])
    once = saturate(I, J)
    assert saturate(once, J) == once
    assert I.is_subset(once)


# -- elimination ------------------------------------------------------------------------------

def test_eliminate_example():
    R = ring_create(["w", "y0"], field=QQ)
    out = eliminate(Ideal(R, [R.parse("w - y0"), R.parse("w^2")]), ["w"])
    S = R.drop(["w"])
    assert out == Ideal(S, [S.parse("y0^2")])


def test_eliminate_nothing(twisted_cubic):
    assert eliminate(twisted_cubic, []) == twisted_cubic


def test_eliminate_w_gives_hypersurface(ctx1):
    out = eliminate(minors(2, ctx1.L), ["w"])
    sub = ctx1.Rw.drop(["w"])
    assert out == Ideal(sub, [ctx1.f.map_to(sub)])


def test_eliminate_commutes_with_unrelated_substitution(ctx1):
    # eliminating x then fixing z = (1, c) equals fixing first then eliminating
    T = ctx1.P1xP2xP3
    c = 17
    S = saturate(ctx1.I, _vars(T, X))
    a = eliminate(S, X)
    A = a.ring
    Fa = A.drop(["z0", "z1"])
    sub_a = {"z0": Fa.one(), "z1": Fa.const(c)}
    left = Ideal(Fa, [g.subs(sub_a, Fa) for g in a.gens])
    Tf = T.drop(["z0", "z1"])
    sub_t = {"z0": Tf.one(), "z1": Tf.const(c)}
    fixed = Ideal(Tf, [g.subs(sub_t, Tf) for g in ctx1.I.gens])
    right = eliminate(saturate(fixed, _vars(Tf, X)), X)
    assert left == right.map_to(Fa)


# -- radicals -------------------------------------------------------------------------------------

def test_radical_membership_examples(P3):
    R = ring_create(["x", "y0"], field=QQ)
    I = Ideal(R, [R.parse("x^2")])
    assert radical_membership(R.var("x"), I)
    assert not radical_membership(R.var("y0"), I)


def test_radical_of_minors(ctx1):
    P = ctx1.P1xP3
    Nm = ctx1.N.to_ring(P)
    m3 = Ideal(P, [g for g in Nm.minors_list(3) if not g.is_zero()])
    assert radical_membership(ctx1.f, m3)
    # and conversely every 3x3 minor is a multiple of f
    assert m3.is_subset(Ideal(P, [ctx1.f]))


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_radical_membership_consistent_with_powers(seed):
    R = P(2, "v")
    rng = random.Random(seed)
    f = random_form(R, (1,), seed)
    k = rng.randint(1, 3)
    g = random_form(R, (2,), seed + 1)
    I = Ideal(R, [f**k * R.var("v0"), f**k * g, R.var("v2") ** 2])
    # f * v2 has (f v2)^(k+2) in I
    h = f * R.var("v2")
    assert I.contains(h ** (k + 2))
    assert radical_membership(h, I)


# -- dimension and degree ---------------------------------------------------------------------------

def test_twisted_cubic_invariants(twisted_cubic):
    hd = dimension_degree(twisted_cubic)
    assert (hd.dimension, hd.degree, hd.genus) == (1, 3, 0)
    assert hd.krull_dim == 2


def test_branch_divisor_degree(ctx1):
    assert dimension_degree(Ideal(ctx1.P3, [ctx1.detM])).degree == 4


def test_unit_ideal(P3):
    hd = dimension_degree(Ideal(P3, [P3.one()]))
    assert hd.dimension == -1


@settings(max_examples=15)
@given(st.integers(1, 3), st.integers(1, 4), st.integers(0, 10**6))
def test_random_hypersurface(n, d, seed):
    R = P(n, field=F1009)
    f = random_form(R, (d,), seed)
    if f.is_zero():
        return
    hd = dimension_degree(Ideal(R, [f]))
    assert (hd.dimension, hd.degree) == (n - 1, d)


# -- Hilbert functions ------------------------------------------------------------------------------

def test_slice_of_polynomial_ring(P3):
    assert hilbert_slice_dim(Ideal(P3, []), (2,)) == 10


def test_slice_X3():
    ctx = build(3)
    IX = annihilator(ctx.m)
    assert hilbert_slice_dim(IX, (0, 0)) == 1
    # the homogeneous coordinate ring misses one section in degree (0, 4)
    assert hilbert_slice_dim(IX, (0, 4)) == 35
    assert euler_char_X(3, (0, 4)) == 36


@settings(max_examples=20)
@given(st.integers(2, 3), st.integers(1, 3), st.integers(0, 4), st.integers(0, 10**6))
def test_slice_agrees_with_gb_hilbert_function(n, ngens, d, seed):
    rng = random.Random(seed)
    R = P(n, field=F1009)
    gens = [random_form(R, (rng.randint(1, 3),), seed + k) for k in range(ngens)]
    I = Ideal(R, gens)
    a = hilbert_slice_dim(I, (d,))
    b = hilbert_function(I, (d,))
    c = slice_hilbert(gens, R, d)
    assert a == b == c


def test_bigraded_slice_agrees(ctx1):
    IX = annihilator(ctx1.m)
    for t in [(0, 1), (1, 1), (1, 2), (2, 2), (0, 3)]:
        assert hilbert_slice_dim(IX, t) == hilbert_function(IX, t)


# -- zero-dimensional schemes -------------------------------------------------------------------------

def test_nodes_b1(ctx1):
    A = Ideal(ctx1.P3, list(ctx1.a()))
    z = zero_dim_certificate(A, seed=42)
    assert (z["finite"], z["length"], z["reduced"]) == (True, 8, True)


def test_nodes_b2(ctx2):
    A = Ideal(ctx2.P3, list(ctx2.a()))
    assert zero_dim_certificate(A, seed=42)["length"] == 27


def test_fat_point(P3):
    z = zero_dim_certificate(Ideal.parse(P3, ["y0^2", "y1", "y2", "y3"]))
    assert (z["finite"], z["length"], z["reduced"]) == (True, 2, False)


def test_projective_double_point(P3):
    z = zero_dim_certificate(Ideal.parse(P3, ["y1^2", "y2", "y3"]))
    assert (z["length"], z["reduced"], z["support"]) == (2, False, 1)


def test_reduced_points(P3):
    # three distinct points on a line
    y0, y1 = P3.var("y0"), P3.var("y1")
    cubic = y1 * (y1 - y0) * (y1 + y0 * 2)
    z = zero_dim_certificate(Ideal(P3, [cubic, P3.var("y2"), P3.var("y3")]))
    assert (z["length"], z["reduced"], z["support"]) == (3, True, 3)


# -- containments ------------------------------------------------------------------------------------

def _small_ideal(seed, R):
    rng = random.Random(seed)
    return Ideal(R, [random_form(R, (rng.randint(1, 2),), seed * 7 + k) * R.var(f"v{rng.randrange(3)}")
                     for k in range(rng.randint(1, 3))])


@settings(max_examples=15)
@given(st.integers(0, 10**5), st.integers(0, 10**5))
def test_intersection_and_product(s1, s2):
    R = P(2, "v", F1009)
    I, J = _small_ideal(s1, R), _small_ideal(s2, R)
    K = ideal_intersection(I, J)
    assert K.is_subset(I) and K.is_subset(J)
    assert (I * J).is_subset(K)
    assert I.is_subset(saturate(I, J))
