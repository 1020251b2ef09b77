"""Submodules of graded free modules: Groebner bases, syzygies, minimal generators."""

from __future__ import annotations

from .errors import InhomogeneousInput, RingMismatch
from .groebner import DEFAULT_DEGREE_CAP, Engine, select_minimal
from .matrix import PolyMatrix
from .orders import MonomialOrder


def vector_to_engine(vec, enc, offset=0) -> dict:
    out = {}
    for i, f in enumerate(vec):
        src = f.ring.encoding
        for m, c in f._t.items():
            out[enc.encode(src.exps(m), i + offset)] = c
    return out


def engine_to_vector(ring, enc, d: dict, rank, offset=0) -> list:
    from .polynomial import Polynomial

    dst = ring.encoding
    parts = [dict() for _ in range(rank)]
    for m, c in d.items():
        k = enc.pos(m) - offset
        if 0 <= k < rank:
            parts[k][dst.encode(enc.exps(m))] = c
    return [Polynomial(ring, t) for t in parts]


def vector_degree(vec, twists):
    """Multidegree of a homogeneous vector, or None for the zero vector."""
    for f, t in zip(vec, twists):
        if not f.is_zero():
            d = f.multidegree()
            return tuple(a + b for a, b in zip(d, t))
    return None


class ModuleGB:
    """Reduced Groebner basis of a submodule of a free module (position over term)."""

    def __init__(self, ring, rank, twists, order, enc, basis):
        self.ring = ring
        self.rank = rank
        self.twists = twists
        self.order = order
        self.enc = enc
        self._basis = basis
        from .groebner import _Reducer

        self._red = _Reducer(enc, ring.field.p)
        for lm, tail in basis:
            self._red.add(lm, tail)

    def __len__(self):
        return len(self._basis)

    @property
    def elements(self) -> list:
        one = self.ring.field.one()
        return [engine_to_vector(self.ring, self.enc, dict([(lm, one)] + tail), self.rank)
                for lm, tail in self._basis]

    def reduce(self, vec) -> list:
        r = self._red.reduce(vector_to_engine(vec, self.enc))
        return engine_to_vector(self.ring, self.enc, r, self.rank)

    def contains(self, vec) -> bool:
        return not self._red.reduce(vector_to_engine(vec, self.enc))

    def leading_positions(self) -> list:
        return [self.enc.pos(lm) for lm, _ in self._basis]


def _coarse_twists(ring, twists):
    return [ring.coarse(t) for t in twists]


def module_gb(m: PolyMatrix, order=None, degree_cap=DEFAULT_DEGREE_CAP) -> ModuleGB:
    """Groebner basis of the column span of m."""
    ring = m.ring
    order = order or MonomialOrder.grevlex()
    enc = ring.encoding_for(order, rank=m.nrows, twists=_coarse_twists(ring, m.row_twists))
    eng = Engine(enc, ring.field, degree_cap)
    for col in m.columns():
        eng.add_input(vector_to_engine(col, enc))
    eng.complete()
    return ModuleGB(ring, m.nrows, m.row_twists, order, enc, eng.reduced_basis())


def trim_columns(m: PolyMatrix, order=None, degree_cap=DEFAULT_DEGREE_CAP) -> PolyMatrix:
    """Minimal generators of the column span of a graded matrix."""
    ring = m.ring
    if not m.is_graded():
        raise InhomogeneousInput("minimal generators need a graded matrix")
    order = order or MonomialOrder.grevlex()
    enc = ring.encoding_for(order, rank=m.nrows, twists=_coarse_twists(ring, m.row_twists))
    cols = m.columns()
    items = [(ring.coarse(m.col_twists[j]), vector_to_engine(c, enc)) for j, c in enumerate(cols)]
    keep = select_minimal(enc, ring.field, items, degree_cap)
    return PolyMatrix.from_columns(ring, [cols[j] for j in keep], m.row_twists,
                                   [m.col_twists[j] for j in keep], nrows=m.nrows)


def syzygies(m: PolyMatrix, order=None, minimal=True, degree_cap=DEFAULT_DEGREE_CAP) -> PolyMatrix:
    """Matrix whose columns generate the module of relations among the columns of m.

    Uses the augmented module of vectors (column_j, e_j) under a position
    over term order that ranks the value components first; basis elements
    with vanishing value part are the syzygies.
    """
    ring = m.ring
    graded = m.is_graded()
    if not graded and minimal:
        raise InhomogeneousInput("columns are not homogeneous for the given twists")
    r, s = m.nrows, m.ncols
    order = order or MonomialOrder.grevlex()
    twists = _coarse_twists(ring, m.row_twists) + _coarse_twists(ring, m.col_twists)
    enc = ring.encoding_for(order, rank=r + s, twists=twists)
    eng = Engine(enc, ring.field, degree_cap)
    one = ring.one()
    for j, col in enumerate(m.columns()):
        vec = col + [one if k == j else ring.zero() for k in range(s)]
        eng.add_input(vector_to_engine(vec, enc))
    eng.complete()
    syz = []
    for lm, tail in eng.reduced_basis():
        if enc.pos(lm) >= r:
            d = dict(tail)
            d[lm] = ring.field.one()
            syz.append(engine_to_vector(ring, enc, d, s, offset=r))
    if graded:
        col_tw = [vector_degree(v, m.col_twists) for v in syz]
        out = PolyMatrix.from_columns(ring, syz, m.col_twists, col_tw, nrows=s)
        if minimal and syz:
            out = trim_columns(out, order, degree_cap)
        return out
    return PolyMatrix.from_columns(ring, syz, m.col_twists, [(0,) * ring.grading_rank] * len(syz), nrows=s)


def check_same_ring(*objs):
    rings = {o.ring for o in objs}
    if len(rings) > 1:
        raise RingMismatch("objects live in different rings")
