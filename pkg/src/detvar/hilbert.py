"""Hilbert series of monomial ideals and the numerical data derived from them.

Series numerators are dicts ``{exponent: int}`` in one variable t; the
ring S = k[x_1..x_n] carries positive integer weights, so

    HS(S/I) = N(t) / prod(1 - t^w_i).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import LengthExceeded


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def minimalize(mons) -> list:
    mons = sorted(set(mons), key=sum)
    out = []
    for m in mons:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def _padd(a, b, sign=1, shift=0):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e + shift, 0) + sign * c
        if v:
            out[e + shift] = v
        else:
            out.pop(e + shift, None)
    return out


def _deg(m, w):
    return sum(a * b for a, b in zip(m, w))


def numerator(gens, weights) -> dict:
    """Numerator N(t) of the Hilbert series of S / <gens> (exponent tuples)."""
    return _num(minimalize(gens), tuple(weights))


def _num(gens, w):
    if not gens:
        return {0: 1}
    if any(not any(g) for g in gens):
        return {}
    if len(gens) == 1:
        return _padd({0: 1}, {_deg(gens[0], w): 1}, -1)
    # pairwise coprime generators: product of (1 - t^deg)
    used = [0] * len(w)
    coprime = True
    for g in gens:
        for i, e in enumerate(g):
            if e:
                if used[i]:
                    coprime = False
                    break
                used[i] = 1
        if not coprime:
            break
    if coprime:
        out = {0: 1}
        for g in gens:
            d = _deg(g, w)
            out = _padd(out, {e + d: c for e, c in out.items()}, -1)
        return out
    # pivot on the variable occurring in most generators
    counts = [0] * len(w)
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    i = max(range(len(w)), key=lambda k: counts[k])
    exps = sorted(g[i] for g in gens if g[i])
    e = exps[len(exps) // 2]
    # the pivot must stay outside the ideal
    pure = [g[i] for g in gens if g[i] and sum(g) == g[i]]
    if pure:
        e = min(e, min(pure) - 1)
    e = max(e, 1)
    pivot = tuple(e if k == i else 0 for k in range(len(w)))
    # HS(S/I) = HS(S/(I + p)) + t^deg(p) HS(S/(I : p))
    plus = minimalize(gens + [pivot])
    colon = minimalize([tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens])
    return _padd(_num(plus, w), _num(colon, w), 1, _deg(pivot, w))


def _div_one_minus_t(num: dict):
    """Exact division by (1 - t), or None if t=1 is not a root."""
    if not num:
        return None
    if sum(num.values()) != 0:
        return None
    top = max(num)
    coeffs = [num.get(k, 0) for k in range(top + 1)]
    # N = (1 - t) Q  =>  Q_k = sum_{j<=k} N_j
    q = {}
    acc = 0
    for k in range(top):
        acc += coeffs[k]
        if acc:
            q[k] = acc
    return q


class SeriesData:
    """Pole order and normalised numerator of N(t)/prod(1 - t^w)."""

    def __init__(self, num: dict, weights):
        self.num = num
        self.weights = tuple(weights)
        n = len(weights)
        # prod(1 - t^w) = (1-t)^n prod(1 + t + ... + t^(w-1))
        q = num
        k = 0
        while q:
            nxt = _div_one_minus_t(q)
            if nxt is None:
                break
            q, k = nxt, k + 1
        self.krull_dim = n - k if q else -1
        self.q = q
        wprod = 1
        for x in weights:
            wprod *= x
        self.degree = Fraction(sum(q.values()), wprod) if q else Fraction(0)
        self.standard = all(x == 1 for x in weights)

    def hilbert_function(self, s: int) -> int:
        """Coefficient of t^s in the series (exact, any s >= 0)."""
        if not self.num:
            return 0
        if self.standard:
            n = len(self.weights)
            return sum(c * comb(s - e + n - 1, n - 1) for e, c in self.num.items() if s - e >= 0) if n else \
                self.num.get(s, 0)
        # generic weights: expand 1/prod(1 - t^w) up to s
        series = [0] * (s + 1)
        series[0] = 1
        for w in self.weights:
            for k in range(w, s + 1):
                series[k] += series[k - w]
        return sum(c * series[s - e] for e, c in self.num.items() if 0 <= s - e <= s)

    def hilbert_polynomial(self) -> list:
        """Rational coefficients (constant first) for standard weights."""
        if not self.standard:
            raise ValueError("Hilbert polynomial needs standard weights")
        d = self.krull_dim
        if d <= 0:
            return []
        # HP(s) = sum_j q_j C(s - j + d - 1, d - 1), a polynomial of degree d - 1
        start = max(self.q) + 1 if self.q else 0
        xs = list(range(start, start + d))
        ys = [sum(c * comb(x - j + d - 1, d - 1) for j, c in self.q.items()) for x in xs]
        return _interpolate(xs, ys)

    def regularity_bound(self) -> int:
        return max(self.num) if self.num else 0


def _interpolate(xs, ys) -> list:
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        # Lagrange basis polynomial for xs[i]
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def eval_poly(coeffs, x):
    return sum(c * x**k for k, c in enumerate(coeffs))


def format_poly(coeffs, var="t") -> str:
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mon:
            body = mon if a == 1 else f"{a}*{mon}"
        else:
            body = str(a)
        parts.append((sign, body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def count_standard(lead_exps, monomials) -> int:
    """Number of monomials (exponent tuples) not divisible by any leading exponent."""
    lead = minimalize(lead_exps)
    return sum(1 for m in monomials if not any(_divides(g, m) for g in lead))


def standard_monomials(lead_exps, nvars, limit=100000) -> list:
    """All standard monomials of a zero-dimensional leading-term ideal."""
    lead = minimalize(lead_exps)
    start = (0,) * nvars
    if any(_divides(g, start) for g in lead):
        return []
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(nvars):
                u = m[:i] + (m[i] + 1,) + m[i + 1:]
                if u in seen or any(_divides(g, u) for g in lead):
                    continue
                seen.add(u)
                if len(seen) > limit:
                    raise LengthExceeded("quotient is too large or not finite")
                nxt.append(u)
        frontier = nxt
    return sorted(seen, key=lambda e: (sum(e), e))
