"""Buchberger's algorithm for ideals and submodules of free modules.

Everything inside the engine works on packed monomials (see
:mod:`detvar.orders`) and plain dicts ``{mono: coeff}``.  Reducer
elements are kept monic, so one reduction step is ``f -= c * shift * g``.

Pairs are selected by sugar degree (the normal strategy for homogeneous
input) and pruned with the Gebauer-Moller criteria.  The engine is
incremental: generators can be fed in and the basis completed up to a
degree, which is what minimal generators and minimal resolutions need.
"""

from __future__ import annotations

import heapq

from .errors import DegreeBoundExceeded, InhomogeneousInput, RingMismatch
from .orders import MonomialOrder

DEFAULT_DEGREE_CAP = 40


class _Reducer:
    """Monic reducers with a cached divisor search."""

    def __init__(self, enc, p):
        self.enc = enc
        self.p = p
        self.lms: list = []
        self._masked: list = []
        self.tails: list = []
        self._cache: dict = {}
        self._mask = enc.divmask
        self._guard = enc.guard

    def __len__(self):
        return len(self.lms)

    def add(self, lm, tail):
        self.lms.append(lm)
        self._masked.append(lm & self._mask)
        self.tails.append(tail)

    def find(self, m):
        hit = self._cache.get(m)
        start = 0
        if hit is not None:
            idx, upto = hit
            if idx >= 0:
                return idx
            start = upto
        G = self._guard
        mb = (m & self._mask) | G
        masked = self._masked
        for k in range(start, len(masked)):
            if (mb - masked[k]) & G == G:
                self._cache[m] = (k, 0)
                return k
        self._cache[m] = (-1, len(masked))
        return -1

    def reduce(self, f: dict, full=True) -> dict:
        """Remainder of ``f`` (consumed) on division by the reducers."""
        if not f or not self.lms:
            return f
        p = self.p
        heap = [-m for m in f]
        heapq.heapify(heap)
        pop, push = heapq.heappop, heapq.heappush
        out: dict = {}
        find = self.find
        lms, tails = self.lms, self.tails
        while heap:
            m = -pop(heap)
            c = f.pop(m, None)
            if c is None:
                continue
            k = find(m)
            if k < 0:
                out[m] = c
                if not full:
                    for mm, cc in f.items():
                        out[mm] = cc
                    return out
                continue
            shift = m - lms[k]
            if p:
                for mt, ct in tails[k]:
                    mm = mt + shift
                    v = f.get(mm)
                    if v is None:
                        f[mm] = (-c * ct) % p
                        push(heap, -mm)
                    else:
                        v = (v - c * ct) % p
                        if v:
                            f[mm] = v
                        else:
                            del f[mm]
            else:
                for mt, ct in tails[k]:
                    mm = mt + shift
                    v = f.get(mm)
                    if v is None:
                        f[mm] = -c * ct
                        push(heap, -mm)
                    else:
                        v = v - c * ct
                        if v:
                            f[mm] = v
                        else:
                            del f[mm]
        return out


def _monic(f: dict, p):
    lm = max(f)
    c = f[lm]
    if p:
        if c != 1:
            inv = pow(c, -1, p)
            f = {m: v * inv % p for m, v in f.items()}
    elif c != 1:
        f = {m: v / c for m, v in f.items()}
    return lm, f


def _split(f: dict):
    """Monic dict -> (lm, tail sorted descending)."""
    lm = max(f)
    tail = sorted(((m, c) for m, c in f.items() if m != lm), reverse=True)
    return lm, tail


class Engine:
    """Incremental Buchberger completion over one packed encoding."""

    def __init__(self, enc, field, degree_cap=DEFAULT_DEGREE_CAP, module=False):
        self.enc = enc
        self.p = field.p
        self.field = field
        self.degree_cap = degree_cap
        self.module = module or bool(enc.rank)
        self.red = _Reducer(enc, self.p)
        self.sugar: list = []
        self.active: list = []   # indices of elements still in the minimal basis
        self._exps: list = []
        self.pairs: list = []    # heap of (sugar, lcm, i, j); j == -1 marks an input generator
        self._inputs: list = []
        self._serial = 0
        self.done_degree = -1

    # -- input ----------------------------------------------------------------
    def add_input(self, f: dict, sugar=None):
        if not f:
            return
        if sugar is None:
            sugar = max(self.enc.degree(m) for m in f)
        self._inputs.append(f)
        heapq.heappush(self.pairs, (sugar, 0, len(self._inputs) - 1, -1, self._next()))

    def _next(self):
        self._serial += 1
        return self._serial

    # -- completion -----------------------------------------------------------
    def complete(self, max_degree=None):
        """Process every pending pair of sugar <= max_degree (all if None)."""
        pairs = self.pairs
        while pairs and (max_degree is None or pairs[0][0] <= max_degree):
            s, lcm, i, j, _ = heapq.heappop(pairs)
            if s > self.degree_cap:
                heapq.heappush(pairs, (s, lcm, i, j, 0))
                raise DegreeBoundExceeded(f"pair degree {s} exceeds cap {self.degree_cap}")
            if j == -1:
                h = dict(self._inputs[i])
                self._inputs[i] = None
            else:
                h = self._spoly(i, j, lcm)
            h = self.red.reduce(h)
            if h:
                self._insert(h, s)
        if max_degree is not None:
            self.done_degree = max(self.done_degree, max_degree)
        elif not pairs:
            self.done_degree = float("inf")

    def _spoly(self, i, j, lcm):
        red = self.red
        p = self.p
        si = lcm - red.lms[i]
        sj = lcm - red.lms[j]
        f = {m + si: c for m, c in red.tails[i]}
        if p:
            for m, c in red.tails[j]:
                mm = m + sj
                v = (f.get(mm, 0) - c) % p
                if v:
                    f[mm] = v
                else:
                    f.pop(mm, None)
        else:
            for m, c in red.tails[j]:
                mm = m + sj
                v = f.get(mm, 0) - c
                if v:
                    f[mm] = v
                else:
                    f.pop(mm, None)
        return f

    def _insert(self, h: dict, sugar):
        _, h = _monic(h, self.p)
        lm, tail = _split(h)
        enc = self.enc
        idx = len(self.red)
        self.red.add(lm, tail)
        self.sugar.append(sugar)
        e_h = enc.exps(lm)
        self._exps.append(e_h)
        self._update(idx, lm, e_h, sugar)

    def _lcm(self, a, b, ea, eb):
        enc = self.enc
        return enc.encode([x if x > y else y for x, y in zip(ea, eb)], enc.pos(a))

    def _update(self, h, lm_h, e_h, sugar_h):
        """Gebauer-Moller update with the new element ``h``."""
        enc = self.enc
        red = self.red
        divides = enc.divides
        pos_h = enc.pos(lm_h)
        module = self.module
        deg = enc.degree
        # candidate pairs (h, g)
        cands = []
        for g in self.active:
            lm_g = red.lms[g]
            if module and enc.pos(lm_g) != pos_h:
                continue
            e_g = self._exps[g]
            lcm = self._lcm(lm_h, lm_g, e_h, e_g)
            disjoint = (not module) and all(not (x and y) for x, y in zip(e_h, e_g))
            s = max(sugar_h + deg(lcm) - deg(lm_h), self.sugar[g] + deg(lcm) - deg(lm_g))
            cands.append((lcm, g, disjoint, s))
        # chain criterion among new pairs: drop (h,g) if some other lcm properly divides it
        keep = []
        n = len(cands)
        for a in range(n):
            lcm_a, g_a, dis_a, s_a = cands[a]
            if dis_a:
                keep.append(cands[a])
                continue
            redundant = False
            for b in range(n):
                if b == a:
                    continue
                lcm_b = cands[b][0]
                if divides(lcm_b, lcm_a) and (lcm_b != lcm_a or b < a):
                    redundant = True
                    break
            if not redundant:
                keep.append(cands[a])
        # a disjoint (coprime) pair whose lcm is shared by a kept pair also discards the latter
        new_pairs = []
        disjoint_lcms = {c[0] for c in cands if c[2]}
        for lcm, g, dis, s in keep:
            if dis:
                continue
            if lcm in disjoint_lcms:
                continue
            new_pairs.append((s, lcm, h, g))
        # prune old pairs (B-criterion)
        if self.pairs:
            old = []
            changed = False
            for item in self.pairs:
                s, lcm, i, j, ser = item
                if j != -1 and (not module or enc.pos(lcm) == pos_h) and divides(lm_h, lcm):
                    l_i = self._lcm(lm_h, lcm, e_h, self._exps[i])
                    l_j = self._lcm(lm_h, lcm, e_h, self._exps[j])
                    if l_i != lcm and l_j != lcm:
                        changed = True
                        continue
                old.append(item)
            if changed:
                heapq.heapify(old)
                self.pairs[:] = old
        for s, lcm, i, j in new_pairs:
            heapq.heappush(self.pairs, (s, lcm, i, j, self._next()))
        # drop basis elements whose leading monomial h divides
        self.active = [g for g in self.active if not divides(lm_h, red.lms[g])]
        self.active.append(h)

    # -- output -----------------------------------------------------------------
    def minimal_indices(self):
        return sorted(self.active, key=lambda g: self.red.lms[g])

    def reduced_basis(self) -> list:
        """Reduced monic basis as ``(lm, tail)`` pairs, ascending by lm."""
        idx = self.minimal_indices()
        red = _Reducer(self.enc, self.p)
        for g in idx:
            red.add(self.red.lms[g], self.red.tails[g])
        out = []
        for g in idx:
            tail = red.reduce(dict(self.red.tails[g]))
            out.append((self.red.lms[g], sorted(tail.items(), reverse=True)))
        return out

    def reduce(self, f: dict, full=True) -> dict:
        return self.red.reduce(dict(f), full)


# ---------------------------------------------------------------------------
# polynomial-level interface

def _to_engine(poly, enc, pos=0):
    src = poly.ring.encoding
    out = {}
    for m, c in poly._t.items():
        out[enc.encode(src.exps(m), pos)] = c
    return out


def _from_engine(ring, enc, f: dict, pos=None):
    from .polynomial import Polynomial

    dst = ring.encoding
    out = {}
    for m, c in f.items():
        if pos is not None and enc.pos(m) != pos:
            continue
        out[dst.encode(enc.exps(m))] = c
    return Polynomial(ring, out)


class GroebnerBasis:
    """Reduced Groebner basis of an ideal for one monomial order."""

    def __init__(self, ring, order, enc, basis, ideal_ref):
        self.ring = ring
        self.order = order
        self.enc = enc
        self._basis = basis
        self.ideal_ref = tuple(ideal_ref)
        self._red = _Reducer(enc, ring.field.p)
        for lm, tail in basis:
            self._red.add(lm, tail)

    @property
    def elements(self) -> list:
        from .polynomial import Polynomial

        ring = self.ring
        dst = ring.encoding
        enc = self.enc
        out = []
        for lm, tail in self._basis:
            t = {dst.encode(enc.exps(lm)): ring.field.one()}
            for m, c in tail:
                t[dst.encode(enc.exps(m))] = c
            out.append(Polynomial(ring, t))
        return out

    def __len__(self):
        return len(self._basis)

    def leading_exponents(self) -> list:
        return [self.enc.exps(lm) for lm, _ in self._basis]

    def is_unit(self) -> bool:
        return any(lm == 0 for lm, _ in self._basis)

    def reduce(self, f):
        if f.ring != self.ring:
            raise RingMismatch("polynomial and basis live in different rings")
        r = self._red.reduce(_to_engine(f, self.enc))
        return _from_engine(self.ring, self.enc, r)

    def contains(self, f) -> bool:
        if f.ring != self.ring:
            raise RingMismatch("polynomial and basis live in different rings")
        return not self._red.reduce(_to_engine(f, self.enc))

    def key(self):
        """Hashable canonical form; equal keys iff equal ideals (same order)."""
        return tuple((lm, tuple(tail)) for lm, tail in self._basis)

    def spair_check(self) -> bool:
        """Recheck Buchberger's criterion: every S-polynomial reduces to zero."""
        enc = self.enc
        basis = self._basis
        p = self.ring.field.p
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                a, b = basis[i][0], basis[j][0]
                if enc.rank and enc.pos(a) != enc.pos(b):
                    continue
                lcm = enc.lcm(a, b)
                f = {m + lcm - a: c for m, c in basis[i][1]}
                for m, c in basis[j][1]:
                    mm = m + lcm - b
                    v = f.get(mm, 0) - c
                    if p:
                        v %= p
                    if v:
                        f[mm] = v
                    else:
                        f.pop(mm, None)
                if self._red.reduce(f):
                    return False
        return True

    def __repr__(self):
        return f"GroebnerBasis({len(self)} elements, {self.order})"


def buchberger(gens, order=None, degree_cap=DEFAULT_DEGREE_CAP, ring=None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatch("generators live in different rings")
    order = order or MonomialOrder.grevlex()
    enc = ring.encoding_for(order)
    eng = Engine(enc, ring.field, degree_cap)
    for g in gens:
        eng.add_input(_to_engine(g, enc))
    eng.complete()
    return GroebnerBasis(ring, order, enc, eng.reduced_basis(), gens)


def normal_form(f, gb: GroebnerBasis):
    return gb.reduce(f)


def divide_exact(f, g):
    """Quotient f / g, raising ValueError when g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ring = f.ring
    enc = ring.encoding
    field = ring.field
    p = field.p
    lm_g = max(g._t)
    inv = field.inv(g._t[lm_g])
    rest = dict(f._t)
    q = {}
    gt = list(g._t.items())
    while rest:
        m = max(rest)
        if not enc.divides(lm_g, m):
            raise ValueError("not an exact division")
        c = rest[m] * inv
        if p:
            c %= p
        shift = m - lm_g
        q[shift] = c
        for mg, cg in gt:
            mm = mg + shift
            v = rest.get(mm, 0) - c * cg
            if p:
                v %= p
            if v:
                rest[mm] = v
            else:
                rest.pop(mm, None)
    from .polynomial import Polynomial

    return Polynomial(ring, q)


# ---------------------------------------------------------------------------
# minimal generators

def select_minimal(enc, field, items, degree_cap=DEFAULT_DEGREE_CAP) -> list:
    """Indices of a minimal generating subset of homogeneous engine dicts.

    ``items`` is a list of ``(coarse degree, dict)``.  Generators are taken in
    degree order and kept when they do not reduce to zero modulo the basis
    of the ones kept so far, completed through that degree.
    """
    eng = Engine(enc, field, degree_cap)
    order = sorted(range(len(items)), key=lambda k: (items[k][0], k))
    chosen = []
    for k in order:
        d, f = items[k]
        if not f:
            continue
        eng.complete(d)
        r = eng.reduce(f)
        if r:
            chosen.append(k)
            eng.add_input(r, d)
            eng.complete(d)
    return sorted(chosen, key=lambda k: (items[k][0], k))


def minimal_generators(gens, order=None, degree_cap=DEFAULT_DEGREE_CAP):
    """A minimal homogeneous generating subset, in coarse degree order."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    for g in gens:
        if not g.is_homogeneous():
            raise InhomogeneousInput("minimal generators need homogeneous input")
    enc = ring.encoding_for(order or MonomialOrder.grevlex())
    items = [(enc.degree(max(d)), d) for d in (_to_engine(g, enc) for g in gens)]
    return [gens[k] for k in select_minimal(enc, ring.field, items, degree_cap)]
