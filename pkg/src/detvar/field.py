"""Exact coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadField

_MR_BASES = (2, 3, 5, 7, 11, 13, 17)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n below 3.4e14."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field. ``characteristic == 0`` means the rationals."""

    kind: str
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise BadField("the rationals have characteristic 0")
        elif self.kind == "prime-field":
            p = self.characteristic
            if not (2 <= p < 2**31) or not is_prime(p):
                raise BadField(f"characteristic {p} is not a prime below 2^31")
        else:
            raise BadField(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals", 0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime-field", int(p))

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``q`` or ``fp:<prime>``."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls.rationals()
        if t.startswith("fp:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise BadField(f"bad prime in field spec {text!r}") from None
            return cls.prime(p)
        raise BadField(f"unrecognised field spec {text!r}")

    def __str__(self):
        return "q" if self.characteristic == 0 else f"fp:{self.characteristic}"

    @property
    def p(self) -> int:
        return self.characteristic

    def __call__(self, x):
        """Coerce an int or Fraction into canonical form."""
        p = self.characteristic
        if p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, p) % p
            return int(x) % p
        return Fraction(x)

    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic:
            return pow(a, -1, self.characteristic)
        return 1 / a

    def neg(self, a):
        return (-a) % self.characteristic if self.characteristic else -a

    def symmetric(self, a) -> int | Fraction:
        """Representative in (-p/2, p/2] for display; identity over Q."""
        p = self.characteristic
        if p and a > p // 2:
            return a - p
        return a
