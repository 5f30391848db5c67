"""Dimension vectors and Euler forms for the Kronecker and Beilinson quivers."""

from __future__ import annotations

from math import gcd
from typing import NamedTuple


class DimVec2(NamedTuple):
    """Kronecker dimension vector; ``x`` sits at the source vertex."""

    x: int
    y: int

    def scaled(self, k: int) -> "DimVec2":
        return DimVec2(k * self.x, k * self.y)

    def __str__(self):
        return f"{self.x},{self.y}"


class DimVec3(NamedTuple):
    """Beilinson dimension vector (dim R(0), dim R(1), dim R(2))."""

    a: int
    b: int
    c: int

    def scaled(self, k: int) -> "DimVec3":
        return DimVec3(k * self.a, k * self.b, k * self.c)

    def plus(self, other: "DimVec3") -> "DimVec3":
        return DimVec3(self.a + other.a, self.b + other.b, self.c + other.c)

    def divided(self, h: int) -> "DimVec3":
        return DimVec3(self.a // h, self.b // h, self.c // h)

    def __str__(self):
        return f"{self.a},{self.b},{self.c}"


# Dimension vectors of the indecomposable projectives P(0), P(1), P(2),
# i.e. of O, O(-1), O(-2).
PROJECTIVE_DIMS = (DimVec3(1, 3, 6), DimVec3(0, 1, 3), DimVec3(0, 0, 1))
# Simples at vertices 2, 1, 0 (the reduction triple S0, S1, S2).
S0_DIM, S1_DIM, S2_DIM = DimVec3(0, 0, 1), DimVec3(0, 1, 0), DimVec3(1, 0, 0)


def gcd_all(*values: int) -> int:
    """gcd with gcd(0, 0) = 0 and gcd(0, n) = n."""
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def _check_nonneg(vec, name):
    if any(v < 0 for v in vec):
        raise ValueError(f"{name} must be componentwise non-negative, got {tuple(vec)}")


def dimvec2(x, y=None) -> DimVec2:
    if y is None:
        x, y = x
    vec = DimVec2(int(x), int(y))
    _check_nonneg(vec, "dimension vector")
    return vec


def dimvec3(a, b=None, c=None) -> DimVec3:
    if b is None:
        a, b, c = a
    vec = DimVec3(int(a), int(b), int(c))
    _check_nonneg(vec, "dimension vector")
    return vec


def parse_dimvec(text: str, length: int):
    """Parse the comma-separated CLI/JSON form, e.g. ``"0,2,5"``."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != length:
        raise ValueError(f"expected {length} comma-separated integers, got {text!r}")
    vals = [int(p) for p in parts]
    return dimvec2(*vals) if length == 2 else dimvec3(*vals)


def euler_kronecker(u: int, alpha, beta) -> int:
    """Euler form hom - ext of the u-arrow Kronecker quiver."""
    return alpha[0] * beta[0] + alpha[1] * beta[1] - u * alpha[0] * beta[1]


def tits_form(u: int, d) -> int:
    return euler_kronecker(u, d, d)


def euler_beilinson(alpha, beta) -> int:
    """Euler form hom - ext1 + ext2 of the Beilinson quiver with relations.

    Three arrows 0 -> 1, three arrows 1 -> 2 and three relations 0 -> 2.
    """
    a0, a1, a2 = alpha
    b0, b1, b2 = beta
    return a0 * b0 + a1 * b1 + a2 * b2 - 3 * (a0 * b1 + a1 * b2) + 3 * a0 * b2
