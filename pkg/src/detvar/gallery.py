"""Parameterised construction of the determinantal 3-folds X_b and their companions.

Coordinates: z0, z1 on P^1, x0..x2 on P^2, y0..y3 on P^3.  The six forms
b_ij of degree b live either as indeterminates (``generic`` mode, degree
(0, b)) or as seeded random forms in y (``random`` mode).
"""

from __future__ import annotations

from functools import cached_property

from .errors import BadCharacteristic, DegenerateParameters, RetrySeed
from .field import FieldSpec
from .ideal import Ideal
from .matrix import PolyMatrix, koszul_matrix, minors
from .polynomial import random_form
from .ring import MultigradedRing

X = ["x0", "x1", "x2"]
Y = ["y0", "y1", "y2", "y3"]
Z = ["z0", "z1"]
BNAMES = [f"b_{i}{j}" for i in range(2) for j in range(3)]


class ConstructionContext:
    """All rings, matrices and ideals attached to one member of the family.

    Objects are built lazily and cached; the context is read-only after
    construction.
    """

    def __init__(self, b: int, field: FieldSpec, mode: str = "random", seed: int = 42, B=None):
        if b < 1:
            raise ValueError("b must be at least 1")
        if field.p == 2:
            raise BadCharacteristic("characteristic 2 is not supported")
        if mode not in ("random", "generic"):
            raise ValueError(f"unknown coefficient mode {mode!r}")
        self.b = b
        self.field = field
        self.mode = mode
        self.seed = seed
        self._B_override = B

    def __repr__(self):
        return f"ConstructionContext(b={self.b}, field={self.field}, mode={self.mode}, seed={self.seed})"

    # -- rings ------------------------------------------------------------------------------
    def _extra(self, k, pos):
        """b_ij indeterminates of degree b placed in grading slot ``pos``."""
        if self.mode != "generic":
            return [], []
        deg = tuple(self.b if i == pos else 0 for i in range(k))
        return BNAMES, [deg] * 6

    @cached_property
    def P3(self) -> MultigradedRing:
        names, degs = self._extra(1, 0)
        return MultigradedRing(Y + names, [(1,)] * 4 + degs, self.field)

    @cached_property
    def P2xP3(self) -> MultigradedRing:
        names, degs = self._extra(2, 1)
        return MultigradedRing(X + Y + names, [(1, 0)] * 3 + [(0, 1)] * 4 + degs, self.field)

    @cached_property
    def P1xP2xP3(self) -> MultigradedRing:
        names, degs = self._extra(3, 2)
        return MultigradedRing(Z + X + Y + names, [(1, 0, 0)] * 2 + [(0, 1, 0)] * 3 + [(0, 0, 1)] * 4 + degs,
                               self.field)

    @cached_property
    def P1xP3(self) -> MultigradedRing:
        names, degs = self._extra(2, 1)
        return MultigradedRing(Z + Y + names, [(1, 0)] * 2 + [(0, 1)] * 4 + degs, self.field)

    @cached_property
    def Rw(self) -> MultigradedRing:
        """P^1 x P(1,1,1,1,b+1) with the extra coordinate w of degree (0, b+1)."""
        names, degs = self._extra(2, 1)
        return MultigradedRing(Z + Y + names + ["w"], [(1, 0)] * 2 + [(0, 1)] * 4 + degs + [(0, self.b + 1)],
                               self.field)

    @cached_property
    def Pw(self) -> MultigradedRing:
        """P(1,1,1,1,b+1)."""
        names, degs = self._extra(1, 0)
        return MultigradedRing(Y + names + ["w"], [(1,)] * 4 + degs + [(self.b + 1,)], self.field)

    # -- matrices ---------------------------------------------------------------------------
    @cached_property
    def B(self) -> PolyMatrix:
        """The 2x3 matrix of degree-b forms, entries in P3."""
        R = self.P3
        if self._B_override is not None:
            rows = [[e.map_to(R) if hasattr(e, "ring") else R.parse(e) for e in row] for row in self._B_override]
            return PolyMatrix(R, rows)
        if self.mode == "generic":
            return PolyMatrix(R, [[R.var(f"b_{i}{j}") for j in range(3)] for i in range(2)])
        return PolyMatrix(R, [[random_form(R, (self.b,), f"{self.seed}:b_{i}{j}") for j in range(3)]
                              for i in range(2)])

    def b_entry(self, i, j, ring):
        return self.B[i, j].map_to(ring)

    def psi(self, ring) -> PolyMatrix:
        y = [ring.var(v) for v in Y]
        return PolyMatrix(ring, [[y[0], y[1], y[2]], [y[1], y[2], y[3]]])

    @cached_property
    def K2(self) -> PolyMatrix:
        R = self.P2xP3
        return koszul_matrix([R.var(v) for v in X])

    @cached_property
    def m(self) -> PolyMatrix:
        """[psi K2 | B x^t]: the transpose of the generic homomorphism, in P2xP3."""
        R = self.P2xP3
        x = [R.var(v) for v in X]
        left = self.psi(R) * self.K2
        Bx = [sum((self.b_entry(i, j, R) * x[j] for j in range(3)), R.zero()) for i in range(2)]
        rows = [left.rows[i] + [Bx[i]] for i in range(2)]
        tw = (-1, -1)
        return PolyMatrix(R, rows, row_twists=[tw, tw])

    @cached_property
    def I(self) -> Ideal:
        """Entries of (z0, z1) m: X_b inside P1 x P2 x P3."""
        R = self.P1xP2xP3
        z = [R.var(v) for v in Z]
        mm = self.m.to_ring(R)
        gens = [z[0] * mm[0, j] + z[1] * mm[1, j] for j in range(4)]
        return Ideal(R, gens)

    @cached_property
    def N(self) -> PolyMatrix:
        """3x4 matrix of x-coefficients: (x0, x1, x2) N = generators of I."""
        R = self.P1xP2xP3
        return PolyMatrix(R, [[g.diff(v) for g in self.I.gens] for v in X])

    def a(self, ring=None):
        """(a0, a1, a2), the entries of M."""
        R = ring or self.P3
        y = [R.var(v) for v in Y]
        bb = [[self.b_entry(i, j, R) for j in range(3)] for i in range(2)]
        a0 = 2 * sum((y[i] * bb[0][i] for i in range(3)), R.zero())
        a1 = sum((y[i] * bb[1][i] for i in range(3)), R.zero()) + sum((y[i + 1] * bb[0][i] for i in range(3)), R.zero())
        a2 = 2 * sum((y[i + 1] * bb[1][i] for i in range(3)), R.zero())
        return a0, a1, a2

    def M(self, ring=None) -> PolyMatrix:
        R = ring or self.P3
        a0, a1, a2 = self.a(R)
        return PolyMatrix(R, [[a0, a1], [a1, a2]])

    @cached_property
    def detM(self):
        return self.M().det()

    @cached_property
    def f(self):
        """(z0, z1) M (z0, z1)^t in P1xP3, bidegree (2, b+1)."""
        R = self.P1xP3
        a0, a1, a2 = self.a(R)
        z0, z1 = R.var("z0"), R.var("z1")
        return z0 * z0 * a0 + 2 * z0 * z1 * a1 + z1 * z1 * a2

    def I_C(self, ring=None) -> Ideal:
        R = ring or self.P3
        return minors(2, self.psi(R))

    @cached_property
    def C1_curve(self) -> Ideal:
        """C^1 in P1xP3: minors of [[y0,y1,y2,-z1],[y1,y2,y3,z0]]."""
        R = self.P1xP3
        y = [R.var(v) for v in Y]
        z0, z1 = R.var("z0"), R.var("z1")
        return minors(2, PolyMatrix(R, [[y[0], y[1], y[2], -z1], [y[1], y[2], y[3], z0]]))

    @cached_property
    def C_1(self) -> Ideal:
        """The curve component C_1 in P2xP3."""
        R = self.P2xP3
        y = [R.var(v) for v in Y]
        x = [R.var(v) for v in X]
        return minors(2, PolyMatrix(R, [[y[0], y[1], y[2], x[0], x[1]], [y[1], y[2], y[3], x[1], x[2]]]))

    @cached_property
    def E_matrix(self) -> PolyMatrix:
        """x B^t J psi with J the 2x2 symplectic matrix (a 1x3 row)."""
        R = self.P2xP3
        x = PolyMatrix(R, [[R.var(v) for v in X]])
        Bt = PolyMatrix(R, [[self.b_entry(i, j, R) for i in range(2)] for j in range(3)])
        J = PolyMatrix(R, [[R.zero(), R.one()], [-R.one(), R.zero()]])
        return x * Bt * J * self.psi(R)

    @cached_property
    def E(self) -> Ideal:
        """The surface component E in P2xP3."""
        return self.I_C(self.P2xP3) + Ideal(self.P2xP3, self.E_matrix.entries())

    @cached_property
    def pfaffian_matrix(self) -> PolyMatrix:
        """The 5x5 alternating matrix whose 4x4 Pfaffians cut out C^2."""
        R = self.P1xP3
        y = [R.var(v) for v in Y]
        z0, z1 = R.var("z0"), R.var("z1")
        c = [z0 * self.b_entry(0, j, R) + z1 * self.b_entry(1, j, R) for j in range(3)]
        zero = R.zero()
        lower = [
            [],
            [zero],
            [-y[0], -y[1]],
            [-y[1], -y[2], -c[2]],
            [-y[2], -y[3], c[1], -c[0]],
        ]
        rows = [[zero] * 5 for _ in range(5)]
        for i in range(5):
            for j in range(i):
                rows[i][j] = lower[i][j]
                rows[j][i] = -lower[i][j]
        return PolyMatrix(R, rows)

    @cached_property
    def L(self) -> PolyMatrix:
        """[[a0, a1 - w, z1], [a1 + w, a2, -z0]] in Rw."""
        R = self.Rw
        a0, a1, a2 = self.a(R)
        w = R.var("w")
        z0, z1 = R.var("z0"), R.var("z1")
        return PolyMatrix(R, [[a0, a1 - w, z1], [a1 + w, a2, -z0]])

    # -- genericity --------------------------------------------------------------------------
    def guard_B_rank_on_C(self) -> bool:
        """True when {rank B <= 1} misses the twisted cubic."""
        R = self.P3
        J = self.I_C(R) + minors(2, self.B)
        return J.dimension_degree().krull_dim <= 0

    def check_guards(self):
        if self.mode == "random" and not self.guard_B_rank_on_C():
            raise RetrySeed(f"seed {self.seed}: rank B drops on the twisted cubic")


def build(b, field=None, mode="random", seed=42, check=True) -> ConstructionContext:
    """Construct the context; in random mode the genericity guard is enforced."""
    ctx = ConstructionContext(b, field or FieldSpec.prime(1009), mode, seed)
    if check:
        ctx.check_guards()
    return ctx


def special_forms(ring, b, lam, mu):
    """(b~01, b~11) with prod(y0 - l_i y1) = y0^(b+1) + y1 b~01 and the mirrored relation."""
    y0, y1, y2, y3 = (ring.var(v) for v in Y)
    p = ring.one()
    for l in lam:
        p = p * (y0 - y1 * l)
    q = ring.one()
    for u in mu:
        q = q * (y3 - y2 * u)
    from .groebner import divide_exact

    return divide_exact(p - y0 ** (b + 1), y1), divide_exact(q - y3 ** (b + 1), y2)


def build_special_Bcircle(b, lam, mu, field=None) -> ConstructionContext:
    """Context with B = [[y0^b, b~01, 0], [0, b~11, y3^b]] for distinct parameters."""
    field = field or FieldSpec.rationals()
    lam = [field(v) for v in lam]
    mu = [field(v) for v in mu]
    if len(lam) != b + 1 or len(mu) != b + 1:
        raise DegenerateParameters("need b+1 values of each parameter family")
    if len(set(lam)) != len(lam) or len(set(mu)) != len(mu):
        raise DegenerateParameters("parameters must be pairwise distinct")
    ctx = ConstructionContext(b, field, "random", seed=0)
    R = ctx.P3
    bt01, bt11 = special_forms(R, b, lam, mu)
    y0, y3 = R.var("y0"), R.var("y3")
    zero = R.zero()
    ctx._B_override = [[y0 ** b, bt01, zero], [zero, bt11, y3 ** b]]
    ctx.special = (lam, mu, bt01, bt11)
    return ctx
