"""Line bundle cohomology on products of projective spaces and on X_b, X_b^1.

Ambient values come from Bott's formula and Kuenneth.  For the hypersurface
X^1 of bidegree (2, b+1) in P^1 x P^3 the long exact sequence of

    0 -> O(a-2, c-b-1) -> O(a, c) -> O_X1(a, c) -> 0

pins down most entries; whatever it leaves open is flagged, never guessed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb


@dataclass(frozen=True)
class CohomologyVector:
    dims: tuple
    determined: tuple

    @property
    def chi(self) -> int:
        return sum((-1) ** i * d for i, d in enumerate(self.dims))

    @property
    def fully_determined(self) -> bool:
        return all(self.determined)

    def __getitem__(self, i):
        return self.dims[i] if i < len(self.dims) else 0

    def polynomial(self) -> str:
        """Render as a polynomial in h, h^i carrying h^i; undetermined entries show as '?'."""
        parts = []
        for i in range(len(self.dims) - 1, -1, -1):
            d = self.dims[i]
            if not self.determined[i]:
                parts.append(f"?h^{i}" if i > 1 else ("?h" if i == 1 else "?"))
                continue
            if not d:
                continue
            mon = "" if i == 0 else ("h" if i == 1 else f"h^{i}")
            if not mon:
                parts.append(str(d))
            else:
                parts.append(mon if d == 1 else f"{d}{mon}")
        return "+".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {"dims": list(self.dims), "determined": list(self.determined), "chi": self.chi}


def bott(n: int, d: int) -> CohomologyVector:
    """Cohomology of O(d) on P^n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    dims = [0] * (n + 1)
    if d >= 0:
        dims[0] = comb(n + d, n)
    elif d <= -n - 1 and n >= 1:
        dims[n] = comb(-d - 1, n)
    return CohomologyVector(tuple(dims), (True,) * (n + 1))


def kunneth(factors) -> CohomologyVector:
    """Cohomology of O(d_1, ..., d_k) on P^{n_1} x ... x P^{n_k}."""
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor")
    dims = [1]
    for n, d in factors:
        v = bott(n, d).dims
        out = [0] * (len(dims) + n)
        for i, a in enumerate(dims):
            if a:
                for j, c in enumerate(v):
                    out[i + j] += a * c
        dims = out
    return CohomologyVector(tuple(dims), (True,) * len(dims))


def chi_line(n: int, d: int) -> int:
    """Euler characteristic of O(d) on P^n, the polynomial C(n+d, n)."""
    num = 1
    for k in range(1, n + 1):
        num *= d + k
    den = 1
    for k in range(1, n + 1):
        den *= k
    return num // den


def chi_product(dims, degrees) -> int:
    out = 1
    for n, d in zip(dims, degrees):
        out *= chi_line(n, d)
    return out


# -- X_b in P^2 x P^3 ---------------------------------------------------------------------

def euler_char_X(b: int, twist) -> int:
    """chi(O_X_b(a, c)) from the three-term line bundle resolution.

    O_X(a, c) is resolved by O(a, c) + O(a, c-b-1)  <-  O(a-1, c-b-1)^3 + O(a-1, c-2)
    <-  O(a-2, c-b-2)^2.
    """
    if b < 1:
        raise ValueError("b must be at least 1")
    a, c = twist
    from .resolution import dual_twisted, structural_resolution

    terms = dual_twisted(structural_resolution(b), (-2, -b - 2))
    total = 0
    for k, group in enumerate(terms):
        s = sum(chi_product((2, 3), (a + t[0], c + t[1])) for t in group)
        total += (-1) ** k * s
    return total


# -- X^1 in P^1 x P^3 -------------------------------------------------------------------

def _ambient(twist):
    return kunneth([(1, twist[0]), (3, twist[1])])


def _les(A: CohomologyVector, B: CohomologyVector, n: int):
    """h^i of the cokernel sheaf from 0 -> A -> B -> Q -> 0 on an n-dimensional ambient."""
    ranks = []
    for i in range(n + 1):
        a, b = A[i], B[i]
        if a == 0 or b == 0:
            ranks.append(0)
        elif i == 0:
            ranks.append(a)  # multiplication by a nonzero form is injective on sections
        elif i == n:
            ranks.append(b)  # H^n(Q) = 0 since Q has dimension n - 1
        else:
            ranks.append(None)
    dims, det = [], []
    for i in range(n):
        r0, r1 = ranks[i], ranks[i + 1]
        ok = r0 is not None and r1 is not None
        det.append(ok)
        dims.append((B[i] - r0) + (A[i + 1] - r1) if ok else 0)
    return dims, det


def hypersurface_cohomology(b: int, twist, ambient=(1, 3), divisor_degree=None, use_duality=True
                            ) -> CohomologyVector:
    """Cohomology of O_X1(a, c) for X^1 of bidegree (2, b+1) in P^1 x P^3.

    With ``use_duality`` an entry left open by the exact sequence is filled
    from the Serre dual entry when that one is determined (omega = O_X1(0, b-3)).
    """
    if tuple(ambient) != (1, 3):
        raise ValueError("only P^1 x P^3 is supported")
    dd = tuple(divisor_degree) if divisor_degree is not None else (2, b + 1)
    a, c = twist
    A = _ambient((a - dd[0], c - dd[1]))
    B = _ambient((a, c))
    dims, det = _les(A, B, 4)
    if use_duality and not all(det):
        w = (dd[0] - 2, dd[1] - 4)
        dA = _ambient((w[0] - a - dd[0], w[1] - c - dd[1]))
        dB = _ambient((w[0] - a, w[1] - c))
        ddims, ddet = _les(dA, dB, 4)
        for i in range(4):
            if not det[i] and ddet[3 - i]:
                dims[i], det[i] = ddims[3 - i], True
    chi = B.chi - A.chi
    # an open entry is pinned by chi when it is the only one left
    if det.count(False) == 1:
        k = det.index(False)
        rest = sum((-1) ** i * d for i, d in enumerate(dims) if i != k)
        dims[k] = (-1) ** k * (chi - rest)
        det[k] = True
    return CohomologyVector(tuple(dims), tuple(det))


def chi_X1(b: int, twist) -> int:
    a, c = twist
    return chi_product((1, 3), (a, c)) - chi_product((1, 3), (a - 2, c - b - 1))


def flop_chi_defect(b: int, alpha: int) -> int:
    """chi(O_X1(a, c)) - chi(O_X1(-a, a(b+1) + c)).

    Each of the (b+1)^3 flopped curves meets O(a, c) in degree a and shifts
    chi by binomial(a+1, 3).
    """
    return (b + 1) ** 3 * (alpha + 1) * alpha * (alpha - 1) // 6


def h0_flop_pairs(b: int, twists) -> list:
    """(h0(a, c), h0(-a, a(b+1) + c)) wherever both sides are determined."""
    out = []
    for a, c in twists:
        u = hypersurface_cohomology(b, (a, c))
        v = hypersurface_cohomology(b, (-a, a * (b + 1) + c))
        if u.determined[0] and v.determined[0]:
            out.append((u.dims[0], v.dims[0]))
    return out


# -- tables ---------------------------------------------------------------------------------

def _range(lo_hi):
    lo, hi = lo_hi
    if lo > hi:
        raise ValueError("empty range")
    return list(range(lo, hi + 1))


def chi_table(b: int, alpha=(-3, 3), beta=(-7, 7)) -> list:
    """Rows indexed by beta descending, columns by alpha ascending."""
    return [[euler_char_X(b, (a, c)) for a in _range(alpha)] for c in reversed(_range(beta))]


def cohomology_table_X1(b: int, alpha=(-3, 3), beta=(-7, 7)) -> list:
    return [[hypersurface_cohomology(b, (a, c)) for a in _range(alpha)] for c in reversed(_range(beta))]


def render_table(cells, alpha, beta) -> str:
    """Aligned text grid with beta labels on the left and alpha labels on top."""
    al = _range(alpha)
    bl = list(reversed(_range(beta)))
    strs = [[c.polynomial() if isinstance(c, CohomologyVector) else str(c) for c in row] for row in cells]
    width = max([len(s) for row in strs for s in row] + [len(str(a)) for a in al])
    lw = max(len(str(x)) for x in bl) + 1
    head = " " * (lw + 3) + " ".join(str(a).rjust(width) for a in al)
    lines = [head]
    for c, row in zip(bl, strs):
        lines.append(f"{str(c).rjust(lw)} | " + " ".join(s.rjust(width) for s in row))
    return "\n".join(lines)


def table_json(which: str, b: int, cells, alpha, beta) -> str:
    data = {
        "which": which,
        "b": b,
        "alpha": _range(alpha),
        "beta": list(reversed(_range(beta))),
        "cells": [[c.as_dict() if isinstance(c, CohomologyVector) else c for c in row] for row in cells],
    }
    return json.dumps(data, indent=2)


# -- truncated power series ------------------------------------------------------------------

def series_mul(a, b, prec):
    out = [Fraction(0)] * prec
    for i, x in enumerate(a[:prec]):
        if x:
            for j, y in enumerate(b[: prec - i]):
                out[i + j] += x * y
    return out


def series_inv(a, prec):
    if not a or a[0] == 0:
        raise ZeroDivisionError("series is not a unit")
    inv0 = Fraction(1) / a[0]
    out = [Fraction(0)] * prec
    out[0] = inv0
    for k in range(1, prec):
        s = sum((a[j] if j < len(a) else 0) * out[k - j] for j in range(1, k + 1))
        out[k] = -s * inv0
    return out


def series_div(num, den, prec):
    return series_mul(num, series_inv(den, prec), prec)


def binomial_series(k, prec, c=1):
    """(1 + c t)^k truncated."""
    return [Fraction(comb(k, i) * c**i) for i in range(min(k, prec - 1) + 1)] + [Fraction(0)] * max(0, prec - k - 1)


def chern_quotient(num_power=4, den_coeff=2, prec=3) -> list:
    """(1+t)^num_power / (1 + den_coeff t) modulo t^prec, as integer coefficients when integral."""
    q = series_div(binomial_series(num_power, prec), [Fraction(1), Fraction(den_coeff)], prec)
    return [int(x) if x.denominator == 1 else x for x in q[:prec]]


def chern_quotient_check() -> tuple:
    """(passed, c2): the quotient is 1 + 2t + 2t^2 and its t^2 coefficient is 2."""
    q = chern_quotient()
    return q == [1, 2, 2], q[2]
