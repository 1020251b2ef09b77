"""Minimal graded free resolutions and Betti tables."""

from __future__ import annotations

from collections import Counter

from .errors import BadSize, InhomogeneousInput, LengthExceeded
from .matrix import PolyMatrix
from .modules import syzygies, trim_columns


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def prune(m: PolyMatrix) -> PolyMatrix:
    """Remove unit entries of a graded matrix by row and column operations.

    The cokernel is unchanged; afterwards no entry is a nonzero constant.
    """
    while True:
        hit = None
        for i, row in enumerate(m.rows):
            for j, e in enumerate(row):
                if e and e.is_constant():
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            return m
        i, j = hit
        field = m.ring.field
        inv = field.inv(m.rows[i][j].constant_term())
        piv_row = [e.scale(inv) for e in m.rows[i]]
        rows = []
        for k, row in enumerate(m.rows):
            if k == i:
                continue
            c = row[j]
            if c:
                row = [a - c * p for a, p in zip(row, piv_row)]
            rows.append([e for l, e in enumerate(row) if l != j])
        row_tw = [t for k, t in enumerate(m.row_twists) if k != i]
        col_tw = [t for l, t in enumerate(m.col_twists) if l != j]
        m = PolyMatrix(m.ring, rows, row_tw, col_tw, ncols=m.ncols - 1)


def free_resolution(presentation: PolyMatrix, max_length=None) -> list:
    """Differentials d_1, d_2, ... of a minimal free resolution of coker(presentation).

    The target of d_1 keeps the row twists of the (pruned) presentation.
    """
    if not presentation.is_graded():
        raise InhomogeneousInput("presentation is not graded for its twists")
    ring = presentation.ring
    limit = ring.nvars + 1 if max_length is None else max_length
    d = prune(presentation)
    if d.ncols:
        d = trim_columns(d)
    out = []
    while d.ncols:
        if len(out) >= limit:
            raise LengthExceeded(f"resolution longer than {limit}")
        out.append(d)
        d = syzygies(d)
    if not out:
        # free module: record the target so the table still has a zeroth column
        out.append(d)
    return out


class BettiTable:
    """Graded Betti numbers beta_{i, d} keyed by homological index and multidegree."""

    def __init__(self, ring, entries: dict):
        self.ring = ring
        self.entries = {k: v for k, v in entries.items() if v}

    @classmethod
    def from_resolution(cls, ring, diffs) -> "BettiTable":
        ent = Counter()
        if diffs:
            for t in diffs[0].row_twists:
                ent[(0, tuple(t))] += 1
        for i, d in enumerate(diffs, start=1):
            for t in d.col_twists:
                ent[(i, tuple(t))] += 1
        return cls(ring, dict(ent))

    @property
    def length(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    def totals(self) -> tuple:
        tot = [0] * (self.length + 1)
        for (i, _), v in self.entries.items():
            tot[i] += v
        return tuple(tot)

    def coarse(self) -> dict:
        """{(i, row): count} with row = coarse degree - i, the usual display convention."""
        out = Counter()
        for (i, md), v in self.entries.items():
            out[(i, self.ring.coarse(md) - i)] += v
        return dict(out)

    def regularity(self) -> int:
        return max(r for _, r in self.coarse())

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __repr__(self):
        return f"BettiTable(totals={self.totals()})"

    def render(self) -> str:
        c = self.coarse()
        n = self.length + 1
        if not c:
            return "total:"
        rows = range(min(r for _, r in c), max(r for _, r in c) + 1)
        cells = [[str(c[(i, r)]) if c.get((i, r)) else "." for i in range(n)] for r in rows]
        tot = [str(t) for t in self.totals()]
        head = [str(i) for i in range(n)]
        width = [max(len(head[i]), len(tot[i]), *(len(row[i]) for row in cells)) for i in range(n)]
        labels = ["total:"] + [f"{r}:" for r in rows]
        lw = max(len(s) for s in labels)

        def line(label, items):
            return (label.rjust(lw) + " " + " ".join(s.rjust(w) for s, w in zip(items, width))).rstrip()

        out = [" " * lw + " " + " ".join(s.rjust(w) for s, w in zip(head, width)), line("total:", tot)]
        out += [line(f"{r}:", row) for r, row in zip(rows, cells)]
        return "\n".join(out)

    __str__ = render


def minimal_betti(presentation: PolyMatrix, max_length=None) -> BettiTable:
    return BettiTable.from_resolution(presentation.ring, free_resolution(presentation, max_length))


def ideal_presentation(I) -> PolyMatrix:
    """1 x n matrix of generators, presenting ring / I."""
    ring = I.ring
    gens = list(I.gens)
    if not gens:
        return PolyMatrix(ring, [[]], ncols=0)
    return PolyMatrix(ring, [gens])


def betti_ideal(I) -> BettiTable:
    """Betti table of ring / I."""
    return minimal_betti(ideal_presentation(I))


def betti_generators(I) -> BettiTable:
    """Only the zeroth and first columns: the ring and the minimal generators of I."""
    tr = I.trim()
    ent = Counter({(0, (0,) * I.ring.grading_rank): 1})
    for g in tr.gens:
        ent[(1, g.multidegree())] += 1
    return BettiTable(I.ring, dict(ent))


def structural_resolution(b: int) -> list:
    """Twists of the three-term line-bundle complex resolving the rank-one sheaf on X_b.

    Index 0 is the target O^2, index 2 the leftmost term.
    """
    if b < 1:
        raise BadSize("b must be at least 1")
    return [
        [(0, 0), (0, 0)],
        [(-1, -1)] * 3 + [(-1, -b)],
        [(-2, -1), (-2, -2 - b)],
    ]


def dual_twisted(terms: list, shift) -> list:
    """Dual complex (terms reversed, twists negated) twisted by ``shift``."""
    return [[_sub(shift, t) for t in reversed(terms[k])] for k in range(len(terms) - 1, -1, -1)]
