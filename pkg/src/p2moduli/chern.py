"""Sheaf numerics on P^2: Riemann-Roch, twist normalisation and depth."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import NoValidTwist
from .quivercore import DimVec3, dimvec3, gcd_all

TWIST_BOUND = 10**6


@dataclass(frozen=True)
class ChernData:
    r: int
    c1: int
    c2: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"rank must be positive, got {self.r}")

    def twisted(self, j: int) -> "ChernData":
        """Chern data of E(j)."""
        r, c1, c2 = self.r, self.c1, self.c2
        return ChernData(r, c1 + j * r, c2 + (r - 1) * j * c1 + r * (r - 1) // 2 * j * j)

    def to_dict(self) -> dict:
        return {"r": self.r, "c1": self.c1, "c2": self.c2}


@dataclass(frozen=True)
class TwistNorm:
    t: int
    alpha: DimVec3

    def to_dict(self) -> dict:
        return {"t": self.t, "alpha": list(self.alpha)}


def _chi_coeffs(ch: ChernData):
    """2*chi(E(j)) = A j^2 + B j + C."""
    r, c1, c2 = ch.r, ch.c1, ch.c2
    return r, 3 * r + 2 * c1, 2 * r + 3 * c1 + c1 * c1 - 2 * c2


def chi_twist(ch: ChernData, j: int) -> int:
    """Euler characteristic of E(j) by Riemann-Roch."""
    A, B, C = _chi_coeffs(ch)
    twice = A * j * j + B * j + C
    assert twice % 2 == 0
    return twice // 2


def normalize_twist(ch: ChernData) -> TwistNorm:
    """The twist t with chi(E(t-1)) < 0 <= chi(E(t)) at the upper crossing.

    Raises NoValidTwist when chi(E(j)) >= 0 for every integer j.
    """
    A, B, C = _chi_coeffs(ch)
    disc = B * B - 4 * A * C
    if disc <= 0:
        raise NoValidTwist(f"chi(E(j)) >= 0 for all j for {ch}")
    # Integer estimate of the upper root (-B + sqrt(disc)) / 2A, then walk
    # down to the largest j with chi < 0, stopping a step below the vertex.
    j = (-B + isqrt(disc)) // (2 * A) + 2
    while chi_twist(ch, j) >= 0 and 2 * A * j >= -B - 2 * A:
        j -= 1
    if chi_twist(ch, j) >= 0:
        raise NoValidTwist(f"chi(E(j)) >= 0 for all j for {ch}")
    t = j + 1
    if abs(t) > TWIST_BOUND:
        raise NoValidTwist(f"normalising twist {t} outside |t| <= {TWIST_BOUND}")
    alpha = DimVec3(chi_twist(ch, t), chi_twist(ch, t + 1), chi_twist(ch, t + 2))
    assert alpha.a >= 0 and alpha.b > 0 and alpha.c > 0
    return TwistNorm(t, alpha)


def natural_cohomology(ch: ChernData, j: int):
    """(h0, h1, h2) of E(j) assuming natural cohomology."""
    t = normalize_twist(ch).t
    chi = chi_twist(ch, j)
    if chi < 0:
        return (0, -chi, 0)
    if j >= t:
        return (chi, 0, 0)
    return (0, 0, chi)


def depth_alpha(alpha) -> int:
    return gcd_all(*alpha)


def depth_chern(ch: ChernData) -> int:
    """Largest h dividing the class of E in K_0(P^2) = Z^3 (rank, c1, chi)."""
    return gcd_all(ch.r, ch.c1, chi_twist(ch, 0))


def _chern_from_chi(r: int, chi0: int, chi1: int) -> ChernData:
    # chi(1) - chi(0) = c1 + 2r ; chi(0) = r + 3c1/2 + (c1^2 - 2c2)/2
    c1 = chi1 - chi0 - 2 * r
    c2 = r + (3 * c1 + c1 * c1) // 2 - chi0
    return ChernData(r, c1, c2)


def alpha_to_chern(alpha, t: int = 0) -> ChernData:
    """Chern data of E given alpha = (chi(E(t)), chi(E(t+1)), chi(E(t+2)))."""
    a, b, c = dimvec3(alpha)
    r = a - 2 * b + c
    if r < 1:
        raise ValueError(f"alpha {tuple(alpha)} gives rank {r} < 1")
    twisted = _chern_from_chi(r, a, b)  # this is E(t)
    # chi_E(j) = chi_{E(t)}(j - t)
    return _chern_from_chi(r, chi_twist(twisted, -t), chi_twist(twisted, 1 - t))
