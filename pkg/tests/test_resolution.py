from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from conftest import F1009, P
from detvar.errors import LengthExceeded
from detvar.ideal import Ideal, annihilator, hilbert_slice_dim
from detvar.matrix import PolyMatrix, pfaffians4
from detvar.polynomial import random_form
from detvar.resolution import (
    BettiTable,
    betti_generators,
    betti_ideal,
    dual_twisted,
    free_resolution,
    ideal_presentation,
    minimal_betti,
    prune,
    structural_resolution,
)

GOLDEN = Path(__file__).parent / "golden"


def tokens(text):
    return [line.split() for line in text.strip().splitlines()]


def golden(name):
    return (GOLDEN / name).read_text()


# -- golden tables at b = 1 -------------------------------------------------------------------

def test_coker_m(ctx1):
    bt = minimal_betti(ctx1.m)
    assert bt.totals() == (2, 4, 2)
    assert tokens(bt.render()) == tokens(golden("coker_m.txt"))


def test_IX_generators_and_resolution(ctx1):
    IX = annihilator(ctx1.m)
    assert tokens(betti_generators(IX).render()) == tokens(golden("IX_generators.txt"))
    assert tokens(betti_ideal(IX).render()) == tokens(golden("IX_resolution.txt"))


def test_exceptional_surface_images(ctx1):
    assert tokens(betti_ideal(ctx1.C1_curve).render()) == tokens(golden("E_P1xP3.txt"))
    assert tokens(betti_ideal(ctx1.E).render()) == tokens(golden("E_P2xP3.txt"))


def test_twisted_cubic(twisted_cubic):
    bt = betti_ideal(twisted_cubic)
    assert bt.totals() == (1, 3, 2)
    assert bt.regularity() == 1
    assert tokens(bt.render()) == tokens(golden("C.txt"))


def test_pfaffian_curve(ctx1):
    bt = betti_ideal(pfaffians4(ctx1.pfaffian_matrix))
    assert tokens(bt.render()) == tokens(golden("C2.txt"))
    # Gorenstein symmetry of the totals
    t = bt.totals()
    assert t == tuple(reversed(t))


def test_curve_component(ctx1):
    assert tokens(betti_ideal(ctx1.C_1).render()) == tokens(golden("C1_P2xP3.txt"))


def test_render_is_exact_layout(ctx1):
    # byte-level check on one table, the others are token-level
    assert minimal_betti(ctx1.m).render() + "\n" == golden("coker_m.txt")


# -- small cases ----------------------------------------------------------------------------------

def test_free_module(P3):
    m = PolyMatrix(P3, [[], []], [(0,), (-1,)], [], ncols=0)
    diffs = free_resolution(m)
    bt = BettiTable.from_resolution(P3, diffs)
    assert bt.length == 0
    assert bt.totals() == (2,)


def test_prune_removes_units(P3):
    y0, y1 = P3.var("y0"), P3.var("y1")
    m = PolyMatrix(P3, [[P3.one(), y0], [y1, y1 * y0]], [(0,), (1,)], [(0,), (1,)])
    p = prune(m)
    assert all(not e.is_constant() or e.is_zero() for e in p.entries())
    assert p.nrows == 1


def test_length_cap(twisted_cubic):
    with pytest.raises(LengthExceeded):
        free_resolution(ideal_presentation(twisted_cubic), max_length=1)


# -- structural resolution ---------------------------------------------------------------------------

def test_structural_middle_term():
    assert sorted(structural_resolution(3)[1]) == sorted([(-1, -1)] * 3 + [(-1, -3)])


def test_structural_last_term():
    assert structural_resolution(1)[2] == [(-2, -1), (-2, -3)]


@pytest.mark.parametrize("b", [1, 2, 3, 4])
def test_dual_gives_pushforward_twists(b):
    dual = dual_twisted(structural_resolution(b), (-2, -b - 2))
    assert sorted(t[1] for t in dual[0]) == sorted([0, -b - 1])
    assert all(t[0] == 0 for t in dual[0])


# -- properties ------------------------------------------------------------------------------------------

def _random_ideal(seed, n=3, k=3):
    R = P(n, field=F1009)
    gens = [random_form(R, (1 + (seed + i) % 2,), f"{seed}:{i}") for i in range(k)]
    return Ideal(R, gens)


@settings(max_examples=10)
@given(st.integers(0, 10**5))
def test_differentials_compose_to_zero(seed):
    I = _random_ideal(seed)
    diffs = free_resolution(ideal_presentation(I))
    for a, b in zip(diffs, diffs[1:]):
        assert (a * b).is_zero()


@settings(max_examples=10)
@given(st.integers(0, 10**5), st.permutations(range(3)))
def test_betti_independent_of_generator_order(seed, perm):
    I = _random_ideal(seed)
    J = Ideal(I.ring, [I.gens[i] for i in perm])
    assert betti_ideal(I) == betti_ideal(J)


def _free_dim(ring, twist, d):
    return len(ring.monomials_of_degree(tuple(a + b for a, b in zip(d, twist))))


@settings(max_examples=10)
@given(st.integers(0, 10**5))
def test_euler_characteristic_matches_slices(seed):
    I = _random_ideal(seed)
    R = I.ring
    bt = betti_ideal(I)
    for d in range(10):
        chi = sum((-1) ** i * v * _free_dim(R, tuple(-x for x in md), (d,)) for (i, md), v in bt.entries.items())
        assert chi == hilbert_slice_dim(I, (d,))


def test_bigraded_euler_characteristic(ctx1):
    IX = annihilator(ctx1.m)
    R = IX.ring
    bt = betti_ideal(IX)
    for d in [(0, 0), (1, 0), (0, 2), (1, 1), (2, 1), (1, 3), (2, 2), (3, 0), (0, 4), (2, 3)]:
        chi = sum((-1) ** i * v * _free_dim(R, tuple(-x for x in md), d) for (i, md), v in bt.entries.items())
        assert chi == hilbert_slice_dim(IX, d)
