"""Exact linear algebra over F_p and Q, plus dense univariate polynomials.

Rows are sparse dicts ``{column: value}``; values are ints mod p or
Fractions.  Univariate polynomials are coefficient lists, lowest degree
first, without trailing zeros.
"""

from __future__ import annotations

from fractions import Fraction


def _norm(v, p):
    return v % p if p else v


def _eliminate(r, pivots, p):
    """Clear every pivot column from r; pivot rows are kept fully reduced."""
    for c in [c for c in r if c in pivots]:
        coef = r.get(c)
        if not coef:
            continue
        for cc, vv in pivots[c].items():
            nv = _norm(r.get(cc, 0) - coef * vv, p)
            if nv:
                r[cc] = nv
            else:
                r.pop(cc, None)
    return r


def _add_pivot(r, c0, pivots, p):
    inv = pow(r[c0], -1, p) if p else 1 / r[c0]
    r = {c: _norm(v * inv, p) for c, v in r.items()}
    for prow in pivots.values():
        coef = prow.get(c0)
        if coef:
            for cc, vv in r.items():
                nv = _norm(prow.get(cc, 0) - coef * vv, p)
                if nv:
                    prow[cc] = nv
                else:
                    prow.pop(cc, None)
    pivots[c0] = r


def echelon(rows, p):
    """Reduced row echelon form of sparse rows. Returns {pivot column: row}."""
    pivots: dict = {}
    for row in rows:
        r = {c: _norm(v, p) for c, v in row.items() if _norm(v, p)}
        r = _eliminate(r, pivots, p)
        if r:
            _add_pivot(r, min(r), pivots, p)
    return pivots


def rank(rows, p) -> int:
    return len(echelon(rows, p))


def first_dependency(vectors, p):
    """Smallest k with vectors[k] in span(vectors[:k]); returns (k, coefficients).

    coefficients c_0..c_{k-1} satisfy vectors[k] = sum c_i vectors[i].
    """
    pivots: dict = {}
    one = 1 if p else Fraction(1)
    # each row carries its combination in tagged columns (1, i); values sit in (0, c)
    for k, vec in enumerate(vectors):
        r = {(0, c): _norm(v, p) for c, v in vec.items() if _norm(v, p)}
        r[(1, k)] = one
        r = _eliminate(r, pivots, p)
        vpart = [c for c in r if c[0] == 0]
        if not vpart:
            coeffs = [0] * k
            for (tag, i), v in r.items():
                if i < k:
                    coeffs[i] = _norm(-v, p)
            return k, coeffs
        _add_pivot(r, min(vpart), pivots, p)
    return None, None


# -- univariate polynomials -----------------------------------------------------

def upoly_trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def upoly_deriv(a, p):
    return upoly_trim([_norm(i * a[i], p) for i in range(1, len(a))])


def upoly_divmod(a, b, p):
    a = upoly_trim(a)
    b = upoly_trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    inv = pow(b[-1], -1, p) if p else 1 / Fraction(b[-1])
    q = [0] * max(len(a) - len(b) + 1, 0)
    a = list(a)
    while len(a) >= len(b) and a:
        c = _norm(a[-1] * inv, p)
        s = len(a) - len(b)
        q[s] = c
        for i, v in enumerate(b):
            a[s + i] = _norm(a[s + i] - c * v, p)
        a = upoly_trim(a)
    return upoly_trim(q), a


def upoly_monic(a, p):
    a = upoly_trim(a)
    if not a:
        return a
    inv = pow(a[-1], -1, p) if p else 1 / Fraction(a[-1])
    return [_norm(v * inv, p) for v in a]


def upoly_gcd(a, b, p):
    a, b = upoly_trim(a), upoly_trim(b)
    while b:
        _, r = upoly_divmod(a, b, p)
        a, b = b, r
    return upoly_monic(a, p)


def is_squarefree(a, p) -> bool:
    a = upoly_trim(a)
    if len(a) <= 2:
        return True
    d = upoly_deriv(a, p)
    if not d:
        return False
    return len(upoly_gcd(a, d, p)) == 1


def squarefree_part(a, p):
    a = upoly_trim(a)
    if len(a) <= 2:
        return upoly_monic(a, p)
    d = upoly_deriv(a, p)
    if not d:
        raise ValueError("derivative vanishes; p-th power not supported")
    g = upoly_gcd(a, d, p)
    q, _ = upoly_divmod(a, g, p)
    return upoly_monic(q, p)
