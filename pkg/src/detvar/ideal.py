"""Ideals: arithmetic, colon, saturation, elimination and numerical invariants."""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from fractions import Fraction

from . import hilbert as hb
from .errors import (
    InhomogeneousInput,
    PositiveDimensional,
    RingMismatch,
    SaturationDiverged,
    UnknownVariable,
    ZeroIdealDivisor,
)
from .groebner import DEFAULT_DEGREE_CAP, Engine, GroebnerBasis, buchberger, minimal_generators
from .linalg import first_dependency, is_squarefree, rank, squarefree_part
from .orders import MonomialOrder

SATURATION_ROUNDS = 50


@dataclass(frozen=True)
class HilbertData:
    krull_dim: int
    dimension: int
    degree: int | Fraction
    hilbert_polynomial: tuple | None
    genus: int | Fraction | None

    def as_tuple(self):
        return (self.dimension, self.degree, self.genus)


class Ideal:
    """An ideal of a multigraded ring, with Groebner bases cached per order."""

    def __init__(self, ring, gens=()):
        gens = tuple(g for g in gens if not g.is_zero())
        for g in gens:
            if g.ring != ring:
                raise RingMismatch("generator lives in a different ring")
        self.ring = ring
        self.gens = gens
        self._gb: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def parse(cls, ring, texts):
        return cls(ring, [ring.parse(t) for t in texts])

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens) or '0'})"

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    # -- Groebner bases -------------------------------------------------------------
    def gb(self, order: MonomialOrder | None = None, degree_cap=DEFAULT_DEGREE_CAP) -> GroebnerBasis:
        order = order or MonomialOrder.grevlex()
        with self._lock:
            hit = self._gb.get(order)
        if hit is not None:
            return hit
        g = buchberger(self.gens, order, degree_cap, ring=self.ring)
        with self._lock:
            return self._gb.setdefault(order, g)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.gb().is_unit()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def contains(self, f) -> bool:
        if f.ring != self.ring:
            raise RingMismatch("polynomial lives in a different ring")
        if f.is_zero():
            return True
        return self.gb().contains(f)

    __contains__ = contains

    def is_subset(self, other: "Ideal") -> bool:
        _same(self, other)
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other):
        return self.is_subset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        _same(self, other)
        return self.gb().key() == other.gb().key()

    def __hash__(self):
        return hash((self.ring, self.gb().key()))

    def normal_form(self, f):
        return self.gb().reduce(f)

    # -- arithmetic -----------------------------------------------------------------
    def __add__(self, other):
        _same(self, other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        _same(self, other)
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def map_to(self, ring, drop="error") -> "Ideal":
        return Ideal(ring, [g.map_to(ring, drop) for g in self.gens])

    def subs(self, mapping, ring=None) -> "Ideal":
        ring = ring or self.ring
        return Ideal(ring, [g.subs(mapping, ring) for g in self.gens])

    def trim(self) -> "Ideal":
        """Minimal generators when homogeneous, otherwise the reduced basis."""
        if not self.gens:
            return self
        if self.is_homogeneous():
            out = Ideal(self.ring, minimal_generators(self.gens))
        else:
            out = Ideal(self.ring, self.gb().elements)
        out._gb.update(self._gb)
        return out

    def intersect(self, other, method="module") -> "Ideal":
        return ideal_intersection(self, other, method)

    def quotient(self, other) -> "Ideal":
        return ideal_quotient(self, other)

    def saturate(self, other=None) -> "Ideal":
        return saturate(self, other)

    def eliminate(self, names) -> "Ideal":
        return eliminate(self, names)

    def dimension_degree(self) -> HilbertData:
        return dimension_degree(self)


def _same(*ideals):
    if len({i.ring for i in ideals}) > 1:
        raise RingMismatch("ideals live in different rings")


def unit_ideal(ring) -> Ideal:
    return Ideal(ring, [ring.one()])


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return I + J


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    return I * J


# -- intersection ---------------------------------------------------------------------

def _module_engine(ring, rank, twists, degree_cap=DEFAULT_DEGREE_CAP):
    enc = ring.encoding_for(MonomialOrder.grevlex(), rank=rank, twists=twists)
    return enc, Engine(enc, ring.field, degree_cap)


def _gens_in_position(ring, enc, eng, pos):
    """Basis elements whose leading position is ``pos``, as polynomials of that component."""
    from .modules import engine_to_vector

    out = []
    one = ring.field.one()
    for lm, tail in eng.reduced_basis():
        if enc.pos(lm) == pos:
            d = dict(tail)
            d[lm] = one
            out.append(engine_to_vector(ring, enc, d, enc.rank)[pos])
    return out


def ideal_intersection(I: Ideal, J: Ideal, method="module") -> Ideal:
    """I cap J.

    ``module``: basis of the submodule of R^2 spanned by (f, f) and (g, 0)
    whose elements vanish in the first component.  ``elimination``: the
    auxiliary variable construction eliminate(t I + (1 - t) J, t).
    """
    _same(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    if I == J:
        return I
    if I.is_subset(J):
        return I
    if J.is_subset(I):
        return J
    if method == "elimination":
        name = _fresh(ring, "t")
        R2 = ring.extend([name], [ring.degrees[0]])
        t = R2.var(name)
        gens = [t * f.map_to(R2) for f in I.gens] + [(1 - t) * g.map_to(R2) for g in J.gens]
        return eliminate(Ideal(R2, gens), [name]).map_to(ring)
    if method != "module":
        raise ValueError(f"unknown intersection method {method!r}")
    from .modules import vector_to_engine

    enc, eng = _module_engine(ring, 2, [0, 0])
    zero = ring.zero()
    for f in I.gens:
        eng.add_input(vector_to_engine([f, f], enc))
    for g in J.gens:
        eng.add_input(vector_to_engine([g, zero], enc))
    eng.complete()
    return Ideal(ring, _gens_in_position(ring, enc, eng, 1))


def _fresh(ring, stem):
    name = stem
    k = 0
    while name in ring._index:
        k += 1
        name = f"{stem}{k}"
    return name


# -- colon and saturation ------------------------------------------------------------------

def _as_variable(f):
    """Index of the variable when f is a nonzero scalar times one variable."""
    if len(f._t) != 1:
        return None
    (m,) = f._t
    e = f.ring.encoding.exps(m)
    if sum(e) == 1:
        return e.index(1)
    return None


def _bayer_order(ring, i):
    rest = [k for k in range(ring.nvars) if k != i]
    return MonomialOrder.grevlex(rest + [i])


def _colon_variable(I: Ideal, i, infinite: bool) -> Ideal:
    """I : x_i (or I : x_i^inf) for homogeneous I, by a basis with x_i last in grevlex."""
    ring = I.ring
    G = I.gb(_bayer_order(ring, i))
    enc = ring.encoding
    out = []
    step = enc.var(i)
    for g in G.elements:
        k = min(enc.exps(m)[i] for m in g._t)
        if not infinite:
            k = min(k, 1)
        if k:
            from .polynomial import Polynomial

            g = Polynomial(ring, {m - k * step: c for m, c in g._t.items()})
        out.append(g)
    return Ideal(ring, out)


def _colon_principal_general(I: Ideal, J: Ideal) -> Ideal:
    """I : J via the module (g_1..g_k, 1) + (f e_j): elements vanishing in the first k slots."""
    from .modules import vector_to_engine

    ring = I.ring
    k = len(J.gens)
    homog = I.is_homogeneous() and J.is_homogeneous()
    if homog:
        dg = [ring.coarse(g.multidegree()) for g in J.gens]
        # (g_1..g_k, 1) must be homogeneous: slot j has twist -deg g_j, last slot twist 0
        twists = [-d for d in dg] + [0]
    else:
        twists = [0] * (k + 1)
    enc, eng = _module_engine(ring, k + 1, twists)
    zero = ring.zero()
    eng.add_input(vector_to_engine(list(J.gens) + [ring.one()], enc))
    for j in range(k):
        for f in I.gens:
            vec = [zero] * (k + 1)
            vec[j] = f
            eng.add_input(vector_to_engine(vec, enc))
    eng.complete()
    return Ideal(ring, _gens_in_position(ring, enc, eng, k))


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """The colon ideal I : J = {f : f J in I}."""
    _same(I, J)
    ring = I.ring
    if J.is_zero() or J.is_subset(I):
        return unit_ideal(ring)
    if J.is_unit():
        return I
    if I.is_zero():
        return Ideal(ring, [])
    Jt = J.trim() if J.is_homogeneous() else J
    if I.is_homogeneous():
        idx = [_as_variable(g) for g in Jt.gens]
        if all(i is not None for i in idx):
            parts = [_colon_variable(I, i, False) for i in idx]
            return _intersect_all(parts)
    return _colon_principal_general(I, Jt)


def _intersect_all(parts):
    out = parts[0]
    for q in parts[1:]:
        out = ideal_intersection(out, q)
    return out


def saturate(I: Ideal, J: Ideal | None = None) -> Ideal:
    """I : J^inf.  With J omitted, saturate by the ideal of all variables."""
    ring = I.ring
    if J is None:
        J = Ideal(ring, ring.gens)
    _same(I, J)
    if J.is_zero():
        raise ZeroIdealDivisor("saturation by the zero ideal")
    if I.is_zero():
        return I
    if J.is_unit():
        return I
    Jt = J.trim() if J.is_homogeneous() else J
    if I.is_homogeneous():
        idx = [_as_variable(g) for g in Jt.gens]
        if all(i is not None for i in idx):
            parts = []
            for i in idx:
                q = _colon_variable(I, i, True)
                if not any(q == p for p in parts):
                    parts.append(q)
            return _intersect_all(parts)
    cur = I
    for _ in range(SATURATION_ROUNDS):
        nxt = ideal_quotient(cur, Jt)
        if nxt == cur:
            return cur
        cur = nxt
    raise SaturationDiverged(f"no stable colon after {SATURATION_ROUNDS} rounds")


def eliminate(I: Ideal, names) -> Ideal:
    """I cap k[remaining variables], returned in the subring."""
    ring = I.ring
    names = list(names)
    for v in names:
        if v not in ring._index:
            raise UnknownVariable(v)
    if not names:
        return I
    idx = [ring.index(v) for v in names]
    order = MonomialOrder.elimination(ring.nvars, idx)
    G = I.gb(order)
    sub = ring.drop(names)
    keep = []
    for g in G.elements:
        if not (g.variables_used() & set(idx)):
            keep.append(g.map_to(sub))
    return Ideal(sub, keep)


# -- radical membership -----------------------------------------------------------------------

def radical_membership(f, I: Ideal) -> bool:
    """f in rad(I), decided by 1 in I + <1 - t f> (Rabinowitsch)."""
    if f.ring != I.ring:
        raise RingMismatch("polynomial and ideal live in different rings")
    if f.is_zero():
        return True
    if I.contains(f):
        return True
    ring = I.ring
    name = _fresh(ring, "t")
    R2 = ring.extend([name], [ring.degrees[0]])
    t = R2.var(name)
    gens = [g.map_to(R2) for g in I.gens] + [1 - t * f.map_to(R2)]
    return buchberger(gens, ring=R2).is_unit()


# -- Hilbert data -----------------------------------------------------------------------------

def _check_coarse_homogeneous(I: Ideal):
    ring = I.ring
    enc = ring.encoding
    for g in I.gens:
        if len({enc.degree(m) for m in g._t}) > 1:
            raise InhomogeneousInput("ideal is not homogeneous for the coarse grading")


def series_data(I: Ideal) -> hb.SeriesData:
    _check_coarse_homogeneous(I)
    G = I.gb()
    return hb.SeriesData(hb.numerator(G.leading_exponents(), I.ring.weights), I.ring.weights)


def dimension_degree(I: Ideal) -> HilbertData:
    """Krull and projective dimension, degree and (for curves) arithmetic genus."""
    sd = series_data(I)
    ring = I.ring
    krull = sd.krull_dim
    dim = krull - ring.grading_rank if krull >= ring.grading_rank else -1
    deg = sd.degree
    if isinstance(deg, Fraction) and deg.denominator == 1:
        deg = int(deg)
    hp = None
    genus = None
    if sd.standard:
        hp = tuple(sd.hilbert_polynomial())
        if dim == 1 and krull == 2:
            c0 = hp[0] if hp else 0
            g = 1 - c0
            genus = int(g) if Fraction(g).denominator == 1 else g
    return HilbertData(krull, dim, deg, hp, genus)


def hilbert_function(I: Ideal, multidegree) -> int:
    """dim (R/I)_d from the standard monomials of a Groebner basis."""
    G = I.gb()
    return hb.count_standard(G.leading_exponents(), I.ring.monomials_of_degree(multidegree))


def hilbert_slice_dim(I: Ideal, multidegree) -> int:
    """dim (R/I)_d by linear algebra on the monomial slice (no Groebner basis)."""
    ring = I.ring
    d = tuple(multidegree)
    mons = ring.monomials_of_degree(d)
    if not mons:
        return 0
    col = {m: k for k, m in enumerate(mons)}
    rows = []
    for g in I.gens:
        if not g.is_homogeneous():
            raise InhomogeneousInput("slice dimension needs homogeneous generators")
        e = g.multidegree()
        rest = tuple(a - b for a, b in zip(d, e))
        for m in ring.monomials_of_degree(rest):
            mon = ring.from_dict({m: 1})
            prod = mon * g
            rows.append({col[ex]: c for c, ex in prod.terms()})
    return len(mons) - rank(rows, ring.field.p)


# -- zero-dimensional schemes ---------------------------------------------------------------------

def _standard_graded(ring):
    return ring.grading_rank == 1 and all(d == (1,) for d in ring.degrees)


def _affine_chart(I: Ideal, seed, attempt):
    """Random linear change of coordinates, then set the first variable to 1."""
    ring = I.ring
    n = ring.nvars
    rng = random.Random(f"chart:{seed}:{attempt}")
    p = ring.field.p
    while True:
        A = [[(rng.randrange(p) if p else rng.randint(-5, 5)) for _ in range(n)] for _ in range(n)]
        if rank([{j: v for j, v in enumerate(row) if v} for row in A], p) == n:
            break
    sub = ring.drop([ring.variables[0]])
    images = []
    for i in range(n):
        acc = sub.const(A[i][0])
        for j in range(1, n):
            if A[i][j]:
                acc = acc + sub.gens[j - 1] * A[i][j]
        images.append(acc)
    mapping = dict(zip(ring.variables, images))
    return Ideal(sub, [g.subs(mapping, sub) for g in I.gens])


def _quotient_basis(J: Ideal, limit):
    G = J.gb()
    std = hb.standard_monomials(G.leading_exponents(), J.ring.nvars, limit)
    return G, std


def _min_poly(J: Ideal, G, std, i):
    """Minimal polynomial of the i-th variable in the finite algebra k[y]/J."""
    ring = J.ring
    col = {e: k for k, e in enumerate(std)}
    x = ring.gens[i]
    cur = ring.one()
    vecs = []
    for _ in range(len(std) + 1):
        vecs.append({col[e]: c for c, e in cur.terms()})
        cur = G.reduce(cur * x)
    k, coeffs = first_dependency(vecs, ring.field.p)
    p = ring.field.p
    # x^k - sum c_i x^i
    poly = [(-c % p) if p else -c for c in coeffs] + [1]
    return poly


def _univariate_to_poly(coeffs, var):
    ring = var.ring
    acc = ring.zero()
    for k, c in enumerate(coeffs):
        if c:
            acc = acc + var ** k * c
    return acc


def _reducedness(J: Ideal, length, max_length):
    """(reduced, support) of a finite affine scheme of the given length, or None."""
    p = J.ring.field.p
    G, std = _quotient_basis(J, max_length)
    if len(std) != length:
        return None
    polys = [_min_poly(J, G, std, i) for i in range(J.ring.nvars)]
    if all(is_squarefree(q, p) for q in polys):
        return True, length
    extra = [_univariate_to_poly(squarefree_part(q, p), J.ring.gens[i]) for i, q in enumerate(polys)]
    Jr = Ideal(J.ring, list(J.gens) + extra)
    return False, len(_quotient_basis(Jr, max_length)[1])


def zero_dim_certificate(I: Ideal, seed=0, check_reduced=True, max_length=100000) -> dict:
    """Finiteness, length and reducedness of a scheme cut out in a standard graded ring.

    A projective scheme of dimension 0 is moved by a seeded random change of
    coordinates into the chart where the first variable is 1 (retrying until
    no point lies at infinity).  An ideal primary to the irrelevant ideal is
    treated as the affine scheme at the cone point.  In either case the
    scheme is reduced iff every coordinate has a squarefree minimal
    polynomial, and the support is the length after adjoining the
    squarefree parts.
    """
    ring = I.ring
    if not _standard_graded(ring):
        raise ValueError("zero_dim_certificate needs a standard graded ring")
    hd = dimension_degree(I)
    if hd.krull_dim < 0:
        return {"finite": True, "length": 0, "reduced": True, "support": 0}
    if hd.krull_dim > 1:
        if check_reduced:
            raise PositiveDimensional(f"scheme has dimension {hd.dimension}")
        return {"finite": False, "length": int(hd.degree), "reduced": None, "support": None}
    length = int(hd.degree)
    if not check_reduced:
        return {"finite": True, "length": length, "reduced": None, "support": None}
    if hd.krull_dim == 0:
        reduced, support = _reducedness(I, length, max_length)
        return {"finite": True, "length": length, "reduced": reduced, "support": support}
    for attempt in range(8):
        res = _reducedness(_affine_chart(I, seed, attempt), length, max_length)
        if res is not None:
            return {"finite": True, "length": length, "reduced": res[0], "support": res[1]}
    from .errors import RetrySeed

    raise RetrySeed("no affine chart without points at infinity was found")


# -- annihilator -----------------------------------------------------------------------------------

def annihilator(m) -> Ideal:
    """ann(coker m) for a graded presentation matrix m (r x s).

    A relation (u_1..u_r, h) of the block matrix [diag(m,..,m) | (e_1;..;e_r)]
    means h e_k in im(m) for every k, so the last coordinates generate the
    annihilator.
    """
    from .matrix import PolyMatrix
    from .modules import syzygies

    ring = m.ring
    r, s = m.nrows, m.ncols
    zero = ring.zero()
    rows = []
    row_tw = []
    col_tw = []
    for k in range(r):
        shift = m.row_twists[k]
        for i in range(r):
            row = [zero] * (r * s + 1)
            for j in range(s):
                row[k * s + j] = m.rows[i][j]
            if i == k:
                row[-1] = ring.one()
            rows.append(row)
            row_tw.append(tuple(a - b for a, b in zip(m.row_twists[i], shift)))
        col_tw.extend(tuple(a - b for a, b in zip(t, shift)) for t in m.col_twists)
    col_tw.append((0,) * ring.grading_rank)
    A = PolyMatrix(ring, rows, row_tw, col_tw)
    S = syzygies(A)
    return Ideal(ring, [g for g in S.rows[-1] if not g.is_zero()]).trim()
