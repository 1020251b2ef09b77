"""End-to-end acceptance checks; the terminal summary prints one line per criterion."""

import json
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from conftest import F1009, QQ, P
from detvar import cones
from detvar.cohomology import bott, chi_X1, euler_char_X, hypersurface_cohomology, kunneth
from detvar.gallery import build
from detvar.groebner import buchberger, normal_form
from detvar.ideal import Ideal, annihilator, hilbert_function, hilbert_slice_dim
from detvar.matrix import pfaffians4
from detvar.polynomial import random_form
from detvar.resolution import betti_generators, betti_ideal, minimal_betti
from detvar.verify import _congruence_43, _congruences_44, run_check, verify_prop42

GOLDEN = Path(__file__).parent / "golden"


def tokens(text):
    return [line.split() for line in text.strip().splitlines()]


def golden(name):
    return tokens((GOLDEN / name).read_text())


def value(rep, name):
    return rep.witnesses[name]["value"]


def test_criterion_1():
    t0 = time.perf_counter()
    ctx = build(1, F1009, "random", 42)
    reps = {c: run_check(c, ctx) for c in ("3.1", "4.1", "4.2", "4.3")}
    assert all(r.status == "pass" for r in reps.values())
    assert value(reps["4.1"], "X1_single_generator") == [[2, 2]]
    assert value(reps["4.2"], "branch_degree") == 4
    w = reps["4.2"].witnesses
    assert w["nodes_finite"]["ok"] and w["singular_scheme"]["ok"]
    assert value(reps["4.2"], "singular_scheme") == [8, 8]
    assert value(reps["4.3"], "tangency") == [12, 6]
    assert value(reps["3.1"], "codim_IX") == 2
    assert value(reps["4.1"], "I_generators") == [[1, 1, 1]] * 4
    assert time.perf_counter() - t0 < 120


def test_criterion_2(ctx1, twisted_cubic):
    t0 = time.perf_counter()
    bt = minimal_betti(ctx1.m)
    assert bt.totals() == (2, 4, 2) and tokens(bt.render()) == golden("coker_m.txt")
    IX = annihilator(ctx1.m)
    gens, res = betti_generators(IX), betti_ideal(IX)
    assert gens.totals() == (1, 4) and tokens(gens.render()) == golden("IX_generators.txt")
    assert res.totals() == (1, 4, 3) and tokens(res.render()) == golden("IX_resolution.txt")
    E = betti_ideal(ctx1.E)
    assert E.totals() == (1, 6, 8, 3) and tokens(E.render()) == golden("E_P2xP3.txt")
    C = betti_ideal(twisted_cubic)
    assert C.totals() == (1, 3, 2) and tokens(C.render()) == golden("C.txt")
    C2 = betti_ideal(pfaffians4(ctx1.pfaffian_matrix))
    assert C2.totals() == (1, 5, 5, 1) and tokens(C2.render()) == golden("C2.txt")
    assert time.perf_counter() - t0 < 120


@pytest.mark.parametrize("b", [1, 2, 3])
def test_criterion_3(b):
    t0 = time.perf_counter()
    rep = verify_prop42(build(b))
    assert rep.status == "pass"
    assert value(rep, "nodes_length") == (b + 1) ** 3
    assert time.perf_counter() - t0 < 300


@pytest.mark.parametrize("b", [1, 2, 3])
def test_criterion_4(b):
    ctx = build(b, QQ, "generic", check=False)
    assert _congruence_43(ctx).is_zero()
    r0, r2 = _congruences_44(ctx)
    assert r0.is_zero() and r2.is_zero()


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    assert time.perf_counter() - t0 < 1
    return out


def test_criterion_5():
    assert _timed(lambda: euler_char_X(3, (0, 0))) == 0
    assert _timed(lambda: euler_char_X(3, (0, 4))) == 36
    v = _timed(lambda: hypersurface_cohomology(3, (-1, 4)))
    assert v.determined[0] and v.dims[0] == 2
    v = _timed(lambda: hypersurface_cohomology(3, (0, 1)))
    assert v.determined[0] and v.dims[0] == 4


def test_criterion_6():
    for b in (1, 2, 3, 4):
        assert set(cones.eff_cone(b).generators) == {(1, 0), (-1, b + 1)}
        T = cones.involution(b)
        assert cones.matmul(T, T) == [[1, 0], [0, 1]]
    assert [cones.kodaira_dimension(b) for b in (1, 2, 3, 4)] == [float("-inf"), float("-inf"), 0, 3]


# -- criterion 7: property suites, run here on fixed seeds ----------------------------------

def _random_ideal(rng, R):
    gens = []
    for _ in range(rng.randint(1, 3)):
        f = R.zero()
        for _ in range(rng.randint(1, 3)):
            e = tuple(rng.randint(0, 2) for _ in range(R.nvars))
            f = f + R.const(rng.randint(-5, 5)) * R.from_dict({e: 1})
        gens.append(f)
    return [g for g in gens if not g.is_zero()] or [R.var(R.variables[0])]


def _flip(b, a, c):
    return (-a, a * (b + 1) + c)


def test_criterion_7():
    rng = random.Random(7)
    R = P(2, "v", QQ)
    for _ in range(50):
        gens = _random_ideal(rng, R)
        gb = buchberger(gens, ring=R)
        assert gb.spair_check()
        f = _random_ideal(rng, R)[0]
        nf = normal_form(f, gb)
        assert normal_form(nf, gb) == nf
    for k in range(20):
        S = P(rng.randint(2, 3), field=F1009)
        I = Ideal(S, [random_form(S, (rng.randint(1, 3),), f"a7:{k}:{j}") for j in range(rng.randint(1, 3))])
        d = rng.randint(0, 4)
        assert hilbert_slice_dim(I, (d,)) == hilbert_function(I, (d,))
    for n in (1, 2, 3):
        for d in range(-12, 13):
            v, w = bott(n, d), bott(n, -n - 1 - d)
            assert all(v[i] == w[n - i] for i in range(n + 1))
    for b in (1, 2, 3, 4):
        for a in range(-4, 5):
            for c in range(-7, 8):
                v = hypersurface_cohomology(b, (a, c))
                amb = kunneth([(1, a), (3, c)]).chi - kunneth([(1, a - 2), (3, c - b - 1)]).chi
                assert chi_X1(b, (a, c)) == amb
                if v.fully_determined:
                    assert v.chi == amb
    # chi is flop invariant on |alpha| <= 1; beyond that the defect law holds exactly
    for b in (1, 2, 3, 4):
        for a in range(-3, 4):
            for c in range(-7, 8):
                defect = chi_X1(b, (a, c)) - chi_X1(b, _flip(b, a, c))
                assert defect == (b + 1) ** 3 * (a + 1) * a * (a - 1) // 6
                if abs(a) <= 1:
                    assert defect == 0


@pytest.mark.xfail(strict=True, reason="chi differs across the flop by (b+1)^3 binom(a+1, 3) once |alpha| >= 2")
def test_criterion_7_literal_flop_symmetry_alpha_3():
    # each of the (b+1)^3 flopped lines has O(a, c)-degree a, so Riemann-Roch on the
    # two sides differs by a cubic in a that vanishes only at a = -1, 0, 1
    for b in (1, 2, 3, 4):
        for a in range(-3, 4):
            for c in range(-7, 8):
                assert chi_X1(b, (a, c)) == chi_X1(b, _flip(b, a, c))


def test_criterion_8():
    cmd = [sys.executable, "-m", "detvar", "verify", "--prop", "all", "--b", "1", "--seed", "42", "--format", "json"]
    runs = []
    for _ in range(2):
        out = subprocess.run(cmd, capture_output=True, text=True)
        assert out.returncode == 0
        data = json.loads(out.stdout)
        for r in data:
            r["wall_ms"] = 0
        runs.append(json.dumps(data, indent=2))
    assert runs[0] == runs[1]
