"""Multigraded polynomial rings."""

from __future__ import annotations

import math
import re
import threading
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import EmptyDegree, NonPositiveGrading, UnknownVariable
from .field import FieldSpec
from .orders import Encoding, MonomialOrder

VAR_NAME = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


def _positive_functional(degrees: Sequence[tuple]) -> tuple | None:
    """Integer vector w with <w, d> > 0 for every degree d, or None."""
    if not degrees:
        return (1,)
    k = len(degrees[0])
    ones = (1,) * k
    if all(sum(d) > 0 for d in degrees):
        return ones
    from scipy.optimize import linprog

    # maximise the margin t subject to <w, d> >= t, |w_i| <= 1
    c = [0.0] * k + [-1.0]
    A = [[-x for x in d] + [1.0] for d in degrees]
    res = linprog(c, A_ub=A, b_ub=[0.0] * len(degrees), bounds=[(-1, 1)] * k + [(None, 1)])
    if not res.success or res.x[-1] <= 1e-9:
        return None
    for den in (1, 2, 3, 4, 6, 8, 12, 16, 24, 60, 120, 1000):
        w = [Fraction(x).limit_denominator(den) for x in res.x[:-1]]
        lcm = 1
        for f in w:
            lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
        wi = tuple(int(f * lcm) for f in w)
        if all(sum(a * b for a, b in zip(wi, d)) > 0 for d in degrees):
            return wi
    return None


class MultigradedRing:
    """k[v_1..v_n] graded by Z^k.

    Every variable degree must be nonzero and some integer functional (the
    *heft*) must be positive on all of them; the heft gives the coarse
    Z-grading used for Hilbert functions and pair selection.
    """

    def __init__(self, variables: Sequence[str], degrees: Sequence[Sequence[int]] | None, field: FieldSpec):
        variables = tuple(variables)
        for v in variables:
            if not VAR_NAME.match(v):
                raise ValueError(f"bad variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        if degrees is None:
            degrees = [(1,)] * len(variables)
        degrees = tuple(tuple(int(x) for x in d) for d in degrees)
        if len(degrees) != len(variables):
            raise ValueError("one degree vector per variable required")
        if degrees and len({len(d) for d in degrees}) != 1:
            raise ValueError("degree vectors must share one length")
        for d in degrees:
            if not any(d):
                raise NonPositiveGrading("variable degrees must be nonzero")
        heft = _positive_functional(degrees)
        if heft is None:
            raise NonPositiveGrading("no positive linear functional on the variable degrees")
        self.variables = variables
        self.degrees = degrees
        self.field = field
        self.heft = heft
        self.grading_rank = len(degrees[0]) if degrees else 1
        self.weights = tuple(sum(a * b for a, b in zip(heft, d)) for d in degrees)
        self._index = {v: i for i, v in enumerate(variables)}
        self._enc_cache: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def create(cls, vars, degrees=None, field=None) -> "MultigradedRing":
        return cls(vars, degrees, field or FieldSpec.rationals())

    # -- identity ---------------------------------------------------------------
    def _key(self):
        return (self.variables, self.degrees, self.field)

    def __eq__(self, other):
        return isinstance(other, MultigradedRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"MultigradedRing({list(self.variables)}, field={self.field})"

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(name) from None

    # -- encodings ---------------------------------------------------------------
    @cached_property
    def encoding(self) -> Encoding:
        """Default storage encoding: weighted grevlex in ring variable order."""
        return self.encoding_for(MonomialOrder.grevlex())

    def encoding_for(self, order: MonomialOrder, rank=0, twists=None, module_order="pot") -> Encoding:
        key = (order, rank, tuple(twists) if twists is not None else None, module_order)
        with self._lock:
            enc = self._enc_cache.get(key)
            if enc is None:
                enc = Encoding(self.nvars, order, [max(w, 1) for w in self.weights],
                               sugar=self.weights, rank=rank, twists=twists,
                               module_order=module_order)
                self._enc_cache[key] = enc
        return enc

    # -- elements ---------------------------------------------------------------
    @cached_property
    def gens(self):
        from .polynomial import Polynomial

        enc = self.encoding
        one = self.field.one()
        return tuple(Polynomial(self, {enc.var(i): one}) for i in range(self.nvars))

    def var(self, name: str):
        return self.gens[self.index(name)]

    def __getitem__(self, name: str):
        return self.var(name)

    def one(self):
        return self.const(1)

    def zero(self):
        return self.const(0)

    def const(self, c):
        from .polynomial import Polynomial

        c = self.field(c)
        return Polynomial(self, {0: c} if c else {})

    def from_dict(self, terms: dict):
        """Build from ``{exponent tuple: coefficient}``."""
        from .polynomial import Polynomial

        enc = self.encoding
        out = {}
        for e, c in terms.items():
            if len(e) != self.nvars:
                raise ValueError("exponent length does not match the ring")
            c = self.field(c)
            if c:
                m = enc.encode(e)
                c = self.field(out.get(m, 0) + c)
                if c:
                    out[m] = c
                else:
                    out.pop(m, None)
        return Polynomial(self, out)

    def parse(self, text: str):
        from .polynomial import parse_polynomial

        return parse_polynomial(self, text)

    __call__ = parse

    # -- grading ---------------------------------------------------------------
    def multidegree(self, exps) -> tuple:
        k = self.grading_rank
        out = [0] * k
        for e, d in zip(exps, self.degrees):
            if e:
                for j in range(k):
                    out[j] += e * d[j]
        return tuple(out)

    def coarse(self, multidegree) -> int:
        return sum(a * b for a, b in zip(self.heft, multidegree))

    def monomials_of_degree(self, multidegree) -> list:
        """All exponent vectors of the given multidegree, in descending grevlex order."""
        multidegree = tuple(multidegree)
        if len(multidegree) != self.grading_rank:
            raise ValueError("multidegree has the wrong length")
        target = self.coarse(multidegree)
        n = self.nvars
        if target < 0:
            return []
        res = []
        w = self.weights
        degs = self.degrees
        k = self.grading_rank
        prune = all(x >= 0 for d in degs for x in d)
        cur = [0] * n
        part = [0] * k

        def rec(i, remaining):
            if i == n:
                if remaining == 0 and tuple(part) == multidegree:
                    res.append(tuple(cur))
                return
            d = degs[i]
            for e in range(remaining // w[i] + 1):
                if prune and any(part[j] + e * d[j] > multidegree[j] for j in range(k)):
                    break
                cur[i] = e
                for j in range(k):
                    part[j] += e * d[j]
                rec(i + 1, remaining - e * w[i])
                for j in range(k):
                    part[j] -= e * d[j]
            cur[i] = 0

        rec(0, target)
        enc = self.encoding
        res.sort(key=enc.encode, reverse=True)
        return res

    def basis(self, multidegree):
        """Monomials of a multidegree as polynomials; EmptyDegree if none."""
        mons = self.monomials_of_degree(multidegree)
        if not mons:
            raise EmptyDegree(f"no monomials of degree {tuple(multidegree)}")
        one = self.field.one()
        return [self.from_dict({e: one}) for e in mons]

    # -- derived rings ---------------------------------------------------------
    def extend(self, names, degrees) -> "MultigradedRing":
        return MultigradedRing(self.variables + tuple(names), self.degrees + tuple(map(tuple, degrees)), self.field)

    def drop(self, names) -> "MultigradedRing":
        names = set(names)
        for v in names:
            self.index(v)
        keep = [i for i, v in enumerate(self.variables) if v not in names]
        return MultigradedRing([self.variables[i] for i in keep], [self.degrees[i] for i in keep], self.field)

    def with_field(self, field: FieldSpec) -> "MultigradedRing":
        return MultigradedRing(self.variables, self.degrees, field)


def ring_create(vars, degrees=None, field=None) -> MultigradedRing:
    """Build a multigraded ring; ``degrees`` may be a list of vectors or ints."""
    if degrees is not None:
        degrees = [(d,) if isinstance(d, int) else tuple(d) for d in degrees]
    return MultigradedRing(vars, degrees, field or FieldSpec.rationals())
