"""Rational polyhedral cones in the plane and the Kodaira classifier for Y_b."""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _primitive(v):
    a, b = int(v[0]), int(v[1])
    g = gcd(a, b)
    if g == 0:
        raise ValueError("zero vector does not span a ray")
    return (a // g, b // g)


class RationalCone2:
    """Cone in Z^2 spanned by two non-parallel primitive vectors."""

    def __init__(self, u, v):
        u, v = _primitive(u), _primitive(v)
        if u[0] * v[1] - u[1] * v[0] == 0:
            raise ValueError("generators are parallel")
        self.generators = (u, v)

    def __repr__(self):
        return f"RationalCone2({self.generators[0]}, {self.generators[1]})"

    def __eq__(self, other):
        return isinstance(other, RationalCone2) and set(self.generators) == set(other.generators)

    def __hash__(self):
        return hash(frozenset(self.generators))

    def coordinates(self, w) -> tuple:
        """(s, t) with w = s u + t v."""
        (a, b), (c, d) = self.generators
        det = a * d - b * c
        s = Fraction(w[0] * d - w[1] * c, det)
        t = Fraction(a * w[1] - b * w[0], det)
        return s, t

    def contains(self, w) -> bool:
        s, t = self.coordinates(w)
        return s >= 0 and t >= 0

    __contains__ = contains

    def interior_contains(self, w) -> bool:
        s, t = self.coordinates(w)
        return s > 0 and t > 0

    def image(self, mat) -> "RationalCone2":
        return RationalCone2(*(apply(mat, g) for g in self.generators))


def apply(mat, v):
    return (mat[0][0] * v[0] + mat[0][1] * v[1], mat[1][0] * v[0] + mat[1][1] * v[1])


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def nef_cone(b) -> RationalCone2:
    return RationalCone2((1, 0), (0, 1))


def eff_cone(b) -> RationalCone2:
    return RationalCone2((1, 0), (-1, b + 1))


def mov_cone(b) -> RationalCone2:
    return eff_cone(b)


def second_chamber(b) -> RationalCone2:
    return RationalCone2((0, 1), (-1, b + 1))


def involution(b):
    """(a, c) -> (-a, a (b+1) + c) as an integer matrix acting on columns."""
    return [[-1, 0], [b + 1, 1]]


def canonical_degree(b) -> int:
    """Degree of K on Y_b in P(1,1,1,1,b+1): (2b+2) - (4 + b + 1)."""
    return (2 * b + 2) - (4 + b + 1)


def kodaira_dimension(b) -> float | int:
    k = canonical_degree(b)
    if k < 0:
        return float("-inf")
    return 0 if k == 0 else 3
