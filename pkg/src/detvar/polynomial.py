"""Sparse polynomials over a multigraded ring, plus the text grammar.

Terms live in a dict keyed by packed monomials of the ring's default
encoding (see :mod:`detvar.orders`).  Polynomials are immutable values.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cached_property

from .errors import EmptyDegree, ExponentOverflow, ParseError, RingMismatch
from .orders import EXP_LIMIT


class Polynomial:
    __slots__ = ("ring", "_t", "__dict__")

    def __init__(self, ring, terms: dict):
        self.ring = ring
        self._t = terms

    # -- inspection ---------------------------------------------------------
    @property
    def field(self):
        return self.ring.field

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __len__(self):
        return len(self._t)

    def terms(self) -> list:
        """``(coefficient, exponents)`` pairs, leading term first."""
        enc = self.ring.encoding
        return [(self._t[m], enc.exps(m)) for m in sorted(self._t, reverse=True)]

    def monomials(self) -> list:
        return [e for _, e in self.terms()]

    def as_dict(self) -> dict:
        enc = self.ring.encoding
        return {enc.exps(m): c for m, c in self._t.items()}

    def leading_monomial(self) -> tuple:
        return self.ring.encoding.exps(max(self._t))

    def leading_coefficient(self):
        return self._t[max(self._t)]

    def coefficient(self, exps):
        return self._t.get(self.ring.encoding.encode(exps), self.field.zero())

    def constant_term(self):
        return self._t.get(0, self.field.zero())

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    @cached_property
    def _maxexp(self) -> tuple:
        enc = self.ring.encoding
        out = [0] * self.ring.nvars
        for m in self._t:
            for i, e in enumerate(enc.exps(m)):
                if e > out[i]:
                    out[i] = e
        return tuple(out)

    def multidegrees(self) -> set:
        enc = self.ring.encoding
        return {self.ring.multidegree(enc.exps(m)) for m in self._t}

    def is_homogeneous(self) -> bool:
        return len(self.multidegrees()) <= 1

    def multidegree(self) -> tuple:
        """Multidegree of a nonzero homogeneous polynomial."""
        degs = self.multidegrees()
        if len(degs) != 1:
            from .errors import InhomogeneousInput

            raise InhomogeneousInput("polynomial is zero or not homogeneous")
        return next(iter(degs))

    def degree(self) -> int:
        """Largest coarse degree of a term (-1 for zero)."""
        enc = self.ring.encoding
        return max((enc.degree(m) for m in self._t), default=-1)

    def variables_used(self) -> set:
        return {i for i, e in enumerate(self._maxexp) if e}

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        out = dict(self._t)
        for m, c in other._t.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = (v + c) % p if p else v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return Polynomial(self.ring, {m: (p - c if p else -c) for m, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        c = self.field(c)
        if not c:
            return self.ring.zero()
        p = self.field.p
        if p:
            return Polynomial(self.ring, {m: v * c % p for m, v in self._t.items()})
        return Polynomial(self.ring, {m: v * c for m, v in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._t or not other._t:
            return self.ring.zero()
        if any(a + b >= EXP_LIMIT for a, b in zip(self._maxexp, other._maxexp)):
            raise ExponentOverflow("product exponent exceeds the packed field width")
        p = self.field.p
        a, b = (self._t, other._t) if len(self._t) <= len(other._t) else (other._t, self._t)
        out: dict = {}
        get = out.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = m1 + m2
                out[m] = get(m, 0) + c1 * c2
        if p:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: c for m, c in out.items() if c}
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def monic(self):
        if not self._t:
            return self
        return self.scale(self.field.inv(self.leading_coefficient()))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    # -- calculus and substitution ---------------------------------------------
    def diff(self, var) -> "Polynomial":
        i = var if isinstance(var, int) else self.ring.index(var)
        enc = self.ring.encoding
        step = enc.var(i)
        p = self.field.p
        out = {}
        for m, c in self._t.items():
            e = enc.exps(m)[i]
            if e:
                v = c * e
                if p:
                    v %= p
                if v:
                    out[m - step] = v
        return Polynomial(self.ring, out)

    def subs(self, mapping: dict, ring=None) -> "Polynomial":
        """Substitute polynomials (or scalars) for variables.

        ``mapping`` is keyed by variable name; with ``ring`` given, unmapped
        variables are sent to the same-named variable of ``ring``.
        """
        target = ring or self.ring
        images = []
        for i, v in enumerate(self.ring.variables):
            if v in mapping:
                img = mapping[v]
                if not isinstance(img, Polynomial):
                    img = target.const(img)
                images.append(img)
            elif target is self.ring:
                images.append(self.ring.gens[i])
            else:
                images.append(target.var(v))
        return self._compose(images, target)

    def _compose(self, images, target):
        enc = self.ring.encoding
        out = target.zero()
        powcache: dict = {}
        for m, c in self._t.items():
            term = target.const(c)
            for i, e in enumerate(enc.exps(m)):
                if e:
                    key = (i, e)
                    pw = powcache.get(key)
                    if pw is None:
                        pw = images[i] ** e
                        powcache[key] = pw
                    term = term * pw
            out = out + term
        return out

    def map_to(self, ring, drop="error") -> "Polynomial":
        """Re-express in ``ring`` by matching variable names.

        Terms involving variables missing from ``ring`` raise unless
        ``drop == 'zero'``, in which case those variables are set to 0.
        """
        src = self.ring.encoding
        dst = ring.encoding
        idx = [ring._index.get(v) for v in self.ring.variables]
        out = {}
        for m, c in self._t.items():
            e = src.exps(m)
            ne = [0] * ring.nvars
            dead = False
            for i, x in enumerate(e):
                if x:
                    j = idx[i]
                    if j is None:
                        if drop == "zero":
                            dead = True
                            break
                        raise RingMismatch(f"variable {self.ring.variables[i]} not in target ring")
                    ne[j] = x
            if not dead:
                out[dst.encode(ne)] = ring.field(c)
        return Polynomial(ring, {m: c for m, c in out.items() if c})

    def evaluate(self, point: dict):
        """Evaluate at a point given as ``{name: scalar}`` covering all variables."""
        f = self.field
        enc = self.ring.encoding
        vals = [f(point[v]) for v in self.ring.variables]
        p = f.p
        total = f.zero()
        for m, c in self._t.items():
            t = c
            for x, e in zip(vals, enc.exps(m)):
                if e:
                    t = t * (pow(x, e, p) if p else x**e)
            total = total + t
        return f(total)

    def coefficients_in(self, var_names) -> dict:
        """Split as sum of (monomial in ``var_names``) * coefficient polynomial."""
        idx = [self.ring.index(v) for v in var_names]
        enc = self.ring.encoding
        groups: dict = {}
        for m, c in self._t.items():
            e = enc.exps(m)
            key = tuple(e[i] for i in idx)
            rest = list(e)
            for i in idx:
                rest[i] = 0
            groups.setdefault(key, {})[enc.encode(rest)] = c
        return {k: Polynomial(self.ring, v) for k, v in groups.items()}

    # -- text -----------------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if f.ring != g.ring:
        raise RingMismatch("polynomials live in different rings")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def random_form(ring, multidegree, rng_seed) -> Polynomial:
    """Dense random form of a multidegree, a pure function of its inputs."""
    mons = ring.monomials_of_degree(multidegree)
    if not mons:
        raise EmptyDegree(f"no monomials of degree {tuple(multidegree)}")
    rng = random.Random(f"random_form:{rng_seed}:{tuple(multidegree)}")
    p = ring.field.p
    if p:
        coeffs = [rng.randrange(p) for _ in mons]
    else:
        coeffs = [rng.randint(-9, 9) for _ in mons]
    return ring.from_dict(dict(zip(mons, coeffs)))


# -- formatting ---------------------------------------------------------------

def _fmt_coeff(field, c) -> str:
    c = field.symmetric(c)
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    return str(c)


def format_monomial(ring, exps) -> str:
    parts = []
    for v, e in zip(ring.variables, exps):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if not f._t:
        return "0"
    out = []
    for c, e in f.terms():
        s = _fmt_coeff(f.field, c)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        mon = format_monomial(f.ring, e)
        if mon:
            body = mon if s == "1" else f"{s}*{mon}"
        else:
            body = s
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# -- parsing ------------------------------------------------------------------

class _Scanner:
    def __init__(self, text, line):
        self.text = text
        self.i = 0
        self.line = line

    def skip(self):
        while self.i < len(self.text) and self.text[self.i] in " \t":
            self.i += 1

    def peek(self):
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def error(self, msg):
        raise ParseError(msg, self.line, self.i + 1)

    def integer(self):
        self.skip()
        j = self.i
        while j < len(self.text) and self.text[j].isdigit():
            j += 1
        if j == self.i:
            self.error("expected an integer")
        val = int(self.text[self.i:j])
        self.i = j
        return val

    def name(self):
        self.skip()
        j = self.i
        if j >= len(self.text) or not self.text[j].isalpha() or not self.text[j].isascii():
            self.error("expected a variable name")
        j += 1
        while j < len(self.text) and (self.text[j].isalnum() or self.text[j] == "_") and self.text[j].isascii():
            j += 1
        start = self.i
        self.i = j
        return self.text[start:j], start


def parse_polynomial(ring, text: str, line: int = 1) -> Polynomial:
    """Parse ``[coeff "*"] var ["^" int] ("*" var ["^" int])*`` terms joined by +/-."""
    sc = _Scanner(text, line)
    total: dict = {}
    sign = 1
    first = True
    enc = ring.encoding
    field = ring.field
    while True:
        ch = sc.peek()
        if ch and ch in "+-":
            sign = -1 if ch == "-" else 1
            sc.i += 1
        elif not first:
            if ch == "":
                break
            sc.error(f"expected '+' or '-', found {ch!r}")
        else:
            sign = 1
        if sc.peek() == "":
            sc.error("unexpected end of input")
        coeff = Fraction(1)
        exps = [0] * ring.nvars
        have_factor = False
        if sc.peek().isdigit():
            coeff = Fraction(sc.integer())
            if sc.peek() == "/":
                sc.i += 1
                sc.skip()
                dpos = sc.i
                den = sc.integer()
                if den == 0:
                    sc.i = dpos
                    sc.error("zero denominator")
                coeff /= den
            have_factor = True
            if sc.peek() == "*":
                sc.i += 1
            else:
                _add_term(total, enc, field, exps, sign * coeff)
                first = False
                continue
        while True:
            name, pos = sc.name()
            if name not in ring._index:
                sc.i = pos
                sc.error(f"unknown variable {name!r}")
            e = 1
            if sc.peek() == "^":
                sc.i += 1
                e = sc.integer()
            if e >= EXP_LIMIT:
                sc.error("exponent too large")
            exps[ring._index[name]] += e
            have_factor = True
            if sc.peek() == "*":
                sc.i += 1
                continue
            break
        if not have_factor:
            sc.error("empty term")
        _add_term(total, enc, field, exps, sign * coeff)
        first = False
    return Polynomial(ring, {m: c for m, c in total.items() if c})


def _add_term(total, enc, field, exps, coeff):
    m = enc.encode(exps)
    total[m] = field(total.get(m, 0) + field(coeff))
