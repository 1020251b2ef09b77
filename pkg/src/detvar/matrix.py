"""Matrices over multigraded rings and the determinantal constructions."""

from __future__ import annotations

from itertools import combinations

from .errors import BadCharacteristic, BadSize, InhomogeneousInput, NotAlternating, NotQuadratic, RingMismatch


class PolyMatrix:
    """Rectangular matrix of polynomials, read as a map from column to row space.

    ``row_twists[i]`` is the multidegree of the i-th target basis vector and
    ``col_twists[j]`` that of the j-th source basis vector, so a graded
    entry (i, j) has degree ``col_twists[j] - row_twists[i]``.
    """

    def __init__(self, ring, rows, row_twists=None, col_twists=None, ncols=None):
        self.ring = ring
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        if ncols is not None and self.rows and ncols != self.ncols:
            raise BadSize("column count mismatch")
        for r in self.rows:
            if len(r) != self.ncols:
                raise BadSize("ragged matrix")
            for e in r:
                if e.ring != ring:
                    raise RingMismatch("matrix entries live in different rings")
        zero = (0,) * ring.grading_rank
        self.row_twists = [tuple(t) for t in row_twists] if row_twists is not None else [zero] * self.nrows
        if col_twists is None:
            col_twists = [self._infer_col_twist(j) for j in range(self.ncols)]
        self.col_twists = [tuple(t) for t in col_twists]

    @classmethod
    def from_columns(cls, ring, columns, row_twists=None, col_twists=None, nrows=None):
        columns = [list(c) for c in columns]
        n = len(columns[0]) if columns else (nrows if nrows is not None else len(row_twists or []))
        rows = [[c[i] for c in columns] for i in range(n)]
        m = cls(ring, rows, row_twists, col_twists, ncols=len(columns))
        return m

    @classmethod
    def parse(cls, ring, rows):
        return cls(ring, [[ring.parse(s) if isinstance(s, str) else s for s in r] for r in rows])

    def _infer_col_twist(self, j):
        for i in range(self.nrows):
            e = self.rows[i][j]
            if not e.is_zero() and e.is_homogeneous():
                d = e.multidegree()
                return tuple(a + b for a, b in zip(d, self.row_twists[i]))
        return (0,) * self.ring.grading_rank

    # -- access -----------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    def entries(self) -> list:
        return [e for r in self.rows for e in r]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.ring == other.ring and self.rows == other.rows

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in r) for r in self.rows)
        return f"PolyMatrix[{body}]"

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries())

    # -- algebra -----------------------------------------------------------------
    def transpose(self) -> "PolyMatrix":
        neg = lambda t: tuple(-x for x in t)
        return PolyMatrix(self.ring, [self.column(j) for j in range(self.ncols)],
                          row_twists=[neg(t) for t in self.col_twists],
                          col_twists=[neg(t) for t in self.row_twists], ncols=self.nrows)

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            if other.ring != self.ring:
                raise RingMismatch("matrices live in different rings")
            if self.ncols != other.nrows:
                raise BadSize("inner dimensions differ")
            zero = self.ring.zero()
            rows = []
            for i in range(self.nrows):
                row = []
                for j in range(other.ncols):
                    acc = zero
                    for k in range(self.ncols):
                        a, b = self.rows[i][k], other.rows[k][j]
                        if a and b:
                            acc = acc + a * b
                    row.append(acc)
                rows.append(row)
            return PolyMatrix(self.ring, rows, self.row_twists, other.col_twists, ncols=other.ncols)
        return PolyMatrix(self.ring, [[e * other for e in r] for r in self.rows],
                          self.row_twists, self.col_twists, ncols=self.ncols)

    __rmul__ = __mul__

    def __add__(self, other):
        if self.shape != other.shape:
            raise BadSize("shapes differ")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                          self.row_twists, self.col_twists, ncols=self.ncols)

    def __neg__(self):
        return PolyMatrix(self.ring, [[-a for a in r] for r in self.rows], self.row_twists, self.col_twists,
                          ncols=self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def hstack(self, other) -> "PolyMatrix":
        if self.nrows != other.nrows:
            raise BadSize("row counts differ")
        return PolyMatrix(self.ring, [a + b for a, b in zip(self.rows, other.rows)], self.row_twists,
                          self.col_twists + other.col_twists)

    def submatrix(self, rows=None, cols=None) -> "PolyMatrix":
        rows = list(range(self.nrows)) if rows is None else list(rows)
        cols = list(range(self.ncols)) if cols is None else list(cols)
        return PolyMatrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows],
                          [self.row_twists[i] for i in rows], [self.col_twists[j] for j in cols], ncols=len(cols))

    def map_entries(self, fn, ring=None) -> "PolyMatrix":
        ring = ring or self.ring
        return PolyMatrix(ring, [[fn(e) for e in r] for r in self.rows], self.row_twists, self.col_twists,
                          ncols=self.ncols)

    def to_ring(self, ring) -> "PolyMatrix":
        return self.map_entries(lambda e: e.map_to(ring), ring)

    def is_graded(self) -> bool:
        for i, r in enumerate(self.rows):
            for j, e in enumerate(r):
                if e.is_zero():
                    continue
                if not e.is_homogeneous():
                    return False
                want = tuple(a - b for a, b in zip(self.col_twists[j], self.row_twists[i]))
                if e.multidegree() != want:
                    return False
        return True

    def check_graded(self):
        if not self.is_graded():
            raise InhomogeneousInput("matrix is not a graded homomorphism for its twists")

    # -- determinants -----------------------------------------------------------------
    def det(self):
        if self.nrows != self.ncols:
            raise BadSize("determinant of a non-square matrix")
        return _Minors(self).det(tuple(range(self.nrows)), tuple(range(self.ncols)))

    def minors_list(self, k) -> list:
        if not (1 <= k <= min(self.nrows, self.ncols)):
            raise BadSize(f"no {k}x{k} minors in a {self.nrows}x{self.ncols} matrix")
        mm = _Minors(self)
        return [mm.det(r, c) for r in combinations(range(self.nrows), k) for c in combinations(range(self.ncols), k)]

    def is_alternating(self) -> bool:
        if self.nrows != self.ncols:
            return False
        for i in range(self.nrows):
            if not self.rows[i][i].is_zero():
                return False
            for j in range(i + 1, self.ncols):
                if self.rows[i][j] != -self.rows[j][i]:
                    return False
        return True


class _Minors:
    """Laplace expansion along the first chosen row, memoised on (rows, cols)."""

    def __init__(self, m):
        self.m = m
        self.memo: dict = {}

    def det(self, rows, cols):
        key = (rows, cols)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        m = self.m
        if len(rows) == 1:
            val = m.rows[rows[0]][cols[0]]
        else:
            val = m.ring.zero()
            r0, rest = rows[0], rows[1:]
            for k, c in enumerate(cols):
                e = m.rows[r0][c]
                if e.is_zero():
                    continue
                sub = self.det(rest, cols[:k] + cols[k + 1:])
                if sub.is_zero():
                    continue
                term = e * sub
                val = val - term if k % 2 else val + term
        self.memo[key] = val
        return val


def matrix(ring, rows, row_twists=None, col_twists=None) -> PolyMatrix:
    """Build a PolyMatrix from polynomials or strings in the text grammar."""
    return PolyMatrix(ring, [[ring.parse(s) if isinstance(s, str) else (s if hasattr(s, "ring") else ring.const(s))
                              for s in r] for r in rows], row_twists, col_twists)


def koszul_matrix(linear_forms) -> PolyMatrix:
    """The alternating 3x3 matrix K with K * (l0, l1, l2)^t = 0."""
    if len(linear_forms) != 3:
        raise BadSize("the Koszul matrix takes three forms")
    l0, l1, l2 = linear_forms
    ring = l0.ring
    z = ring.zero()
    return PolyMatrix(ring, [[z, -l2, l1], [l2, z, -l0], [-l1, l0, z]])


def minors(k, m: PolyMatrix):
    """Ideal of all k x k minors."""
    from .ideal import Ideal

    return Ideal(m.ring, [f for f in m.minors_list(k) if not f.is_zero()])


def pfaffian4(m: PolyMatrix, idx):
    """Pfaffian of the principal 4x4 submatrix on indices ``idx``."""
    a, b, c, d = idx
    M = m.rows
    return M[a][b] * M[c][d] - M[a][c] * M[b][d] + M[a][d] * M[b][c]


def pfaffians4_list(m: PolyMatrix) -> list:
    """Signed principal 4x4 Pfaffians of a 5x5 alternating matrix.

    Entry i is (-1)^i times the Pfaffian with row and column i deleted, which
    puts the vector in the kernel of m.
    """
    if m.shape != (5, 5):
        raise BadSize("pfaffians4 needs a 5x5 matrix")
    if not m.is_alternating():
        raise NotAlternating("matrix is not alternating")
    out = []
    for i in range(5):
        idx = [k for k in range(5) if k != i]
        pf = pfaffian4(m, idx)
        out.append(-pf if i % 2 else pf)
    return out


def pfaffians4(m: PolyMatrix):
    from .ideal import Ideal

    return Ideal(m.ring, [f for f in pfaffians4_list(m) if not f.is_zero()])


def hessian_z(f, zvars) -> PolyMatrix:
    """Matrix of second partials in ``zvars`` of a form quadratic in them."""
    ring = f.ring
    if ring.field.p == 2:
        raise BadCharacteristic("second partials degenerate in characteristic 2")
    idx = [ring.index(v) for v in zvars]
    if f.is_zero():
        raise NotQuadratic("zero polynomial")
    for _, e in f.terms():
        if sum(e[i] for i in idx) != 2:
            raise NotQuadratic("form is not quadratic in the given variables")
    first = [f.diff(i) for i in idx]
    return PolyMatrix(ring, [[g.diff(j) for j in idx] for g in first])


def jacobian_ideal(f, with_f=False):
    """Ideal of the first partials, optionally together with f."""
    from .ideal import Ideal

    ring = f.ring
    gens = [f.diff(i) for i in range(ring.nvars)]
    if with_f:
        gens.append(f)
    return Ideal(ring, [g for g in gens if not g.is_zero()])


def fitting_support(m: PolyMatrix):
    """Ideal of maximal minors: the locus where m drops rank."""
    return minors(min(m.nrows, m.ncols), m)
