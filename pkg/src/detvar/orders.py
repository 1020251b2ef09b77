"""Monomial orders and the packed-integer monomial encoding.

A monomial (optionally tagged with a free-module position) is stored as one
Python int::

    mono = (order_key << W) | divpart

``order_key`` is a linear function of the exponent vector whose integer
ordering is the monomial order; ``divpart`` packs the exponents into
``FIELD``-bit fields with a spare guard bit each.  Both parts are linear, so
multiplying monomials is integer addition, comparing them is integer
comparison, and divisibility is a single guarded subtraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ExponentOverflow

FIELD = 12
BASE = 1 << FIELD
EXP_LIMIT = 1 << (FIELD - 1)
_FMASK = BASE - 1


@dataclass(frozen=True)
class MonomialOrder:
    """A term order described as a sequence of blocks.

    Each block is ``(variable indices, kind)`` with kind ``grevlex`` or
    ``lex``; earlier blocks dominate.  Inside a ``grevlex`` block ties on the
    weighted degree are broken by the *last* listed variable being smallest.
    ``blocks=None`` means a single block over all variables in ring order.
    """

    kind: str = "grevlex"
    blocks: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    @classmethod
    def grevlex(cls, var_order: Sequence[int] | None = None) -> "MonomialOrder":
        if var_order is None:
            return cls("grevlex")
        return cls("grevlex", ((tuple(var_order), "grevlex"),))

    @classmethod
    def lex(cls, var_order: Sequence[int] | None = None) -> "MonomialOrder":
        if var_order is None:
            return cls("lex")
        return cls("lex", ((tuple(var_order), "lex"),))

    @classmethod
    def block(cls, groups) -> "MonomialOrder":
        """``groups``: iterable of (variable indices, inner kind)."""
        return cls("block", tuple((tuple(v), k) for v, k in groups))

    @classmethod
    def elimination(cls, nvars: int, eliminate: Sequence[int]) -> "MonomialOrder":
        """block(grevlex, grevlex) with the eliminated variables first."""
        first = [i for i in range(nvars) if i in set(eliminate)]
        rest = [i for i in range(nvars) if i not in set(eliminate)]
        return cls.block([(first, "grevlex"), (rest, "grevlex")])

    def resolve(self, nvars: int):
        if self.blocks is None:
            return (((tuple(range(nvars))), "lex" if self.kind == "lex" else "grevlex"),)
        seen = sorted(i for blk, _ in self.blocks for i in blk)
        if seen != list(range(nvars)):
            raise ValueError("order blocks must partition the ring variables")
        return self.blocks

    def eliminates(self, nvars: int) -> tuple:
        """Variables of the leading block (empty unless a block order)."""
        if self.kind != "block":
            return ()
        return tuple(self.resolve(nvars)[0][0])


class Encoding:
    """Packs exponent vectors (and module positions) for one order.

    ``weights`` are the positive per-variable weights used inside grevlex
    blocks; ``sugar`` are the degrees used for pair selection; ``twists`` the
    degrees of free-module basis vectors.  Module orders are
    position-over-term (``pot``, position 0 most significant) or
    term-over-position (``top``).
    """

    def __init__(self, nvars, order, weights, sugar=None, rank=0, twists=None, module_order="pot"):
        self.nvars = n = nvars
        self.order = order
        self.weights = tuple(weights)
        self.sugar_weights = tuple(sugar if sugar is not None else weights)
        self.rank = rank
        self.twists = tuple(twists) if twists is not None else (0,) * max(rank, 1)
        self.module_order = module_order
        self.blocks = order.resolve(n)
        nfields = n + (2 if rank else 0)
        self.W = FIELD * nfields
        self.divmask = (1 << self.W) - 1
        self.guard = sum(1 << (FIELD * i + FIELD - 1) for i in range(nfields))
        self._shifts = [FIELD * i for i in range(n)]
        # order key = sum over variables of coefficient * exponent
        coeff = [0] * n
        offset = 0
        for vars_, kind in reversed(self.blocks):
            L = len(vars_)
            if kind == "grevlex":
                for j, v in enumerate(vars_):
                    coeff[v] += -(BASE ** (offset + j)) + self.weights[v] * BASE ** (offset + L)
                offset += L + 1
            elif kind == "lex":
                for j, v in enumerate(vars_):
                    coeff[v] += BASE ** (offset + L - 1 - j)
                offset += L
            else:
                raise ValueError(f"unknown block kind {kind!r}")
        self.order_width = offset
        self._coeff = coeff
        # per-variable packed increments for fast encoding
        self._var_mono = [(coeff[i] << self.W) | (1 << (FIELD * i)) for i in range(n)]
        if rank:
            self._pos_field = FIELD * n
            self._rpos_field = FIELD * (n + 1)
            top = BASE ** offset
            self._pos_mono = []
            for pos in range(rank):
                if module_order == "pot":
                    key = (rank - 1 - pos) * top
                elif module_order == "top":
                    key = 0
                else:
                    raise ValueError(f"unknown module order {module_order!r}")
                div = (pos << self._pos_field) | ((rank - pos) << self._rpos_field)
                self._pos_mono.append((key << self.W) | div)
            if module_order == "top":
                # order key = term_key * BASE + (rank - 1 - pos)
                self._coeff = [c * BASE for c in coeff]
                self._var_mono = [(c << self.W) | (1 << (FIELD * i)) for i, c in enumerate(self._coeff)]
                self._pos_mono = [
                    ((rank - 1 - pos) << self.W) | (pos << self._pos_field) | ((rank - pos) << self._rpos_field)
                    for pos in range(rank)
                ]
        self._exps_cache: dict = {}

    # -- encoding -----------------------------------------------------------
    def encode(self, exps, pos=0) -> int:
        m = 0
        vm = self._var_mono
        for i, e in enumerate(exps):
            if e:
                if e >= EXP_LIMIT:
                    raise ExponentOverflow(f"exponent {e} exceeds {EXP_LIMIT - 1}")
                m += e * vm[i]
        if self.rank:
            m += self._pos_mono[pos]
        return m

    def exps(self, mono) -> tuple:
        r = self._exps_cache.get(mono)
        if r is None:
            d = mono & self.divmask
            r = tuple((d >> s) & _FMASK for s in self._shifts)
            self._exps_cache[mono] = r
        return r

    def pos(self, mono) -> int:
        if not self.rank:
            return 0
        return (mono >> self._pos_field) & _FMASK

    def ring_part(self, mono) -> int:
        """Strip the position tag, leaving a ring monomial in this encoding."""
        if not self.rank:
            return mono
        return mono - self._pos_mono[self.pos(mono)]

    def with_pos(self, ring_mono, pos) -> int:
        return ring_mono + self._pos_mono[pos]

    def divides(self, a, b) -> bool:
        g = self.guard
        return ((b & self.divmask) | g) - (a & self.divmask) & g == g

    def lcm(self, a, b) -> int:
        ea, eb = self.exps(a), self.exps(b)
        return self.encode([x if x > y else y for x, y in zip(ea, eb)], self.pos(a))

    def degree(self, mono) -> int:
        """Sugar degree of a term: weighted exponent sum plus position twist."""
        e = self.exps(mono)
        d = sum(w * x for w, x in zip(self.sugar_weights, e))
        if self.rank:
            d += self.twists[self.pos(mono)]
        return d

    def one(self, pos=0) -> int:
        return self._pos_mono[pos] if self.rank else 0

    def var(self, i) -> int:
        return self._var_mono[i]

    def check_degree(self, mono):
        if max(self.exps(mono), default=0) >= EXP_LIMIT - 1:
            raise ExponentOverflow("exponent field overflow")
