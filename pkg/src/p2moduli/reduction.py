"""Two-step Kronecker reduction on dimension vectors, and the classifier.

The engine tracks a Kronecker reduction pair (socle type, top type) of
Beilinson dimension vectors together with an "outer" rigid object that is
either a socle (below the pair) or a top (above it).  Each round
decomposes the inner Kronecker dimension vector; a rigid outcome is
re-paired with the outer object and the leftover summand becomes the new
outer object, flipping sides.  Everything is integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .chern import ChernData, TwistNorm, depth_alpha, depth_chern, normalize_twist
from .errors import IterationCap, NegativeCount, NonDivisible, NonPositiveEuler
from .kronecker import KronDecomp, kron_decompose
from .quivercore import DimVec2, DimVec3, S0_DIM, S1_DIM, S2_DIM, dimvec3, euler_beilinson, gcd_all

HYPOTHESIS_WARNING = (
    "assumed: a left general representation of this dimension vector has trivial endomorphism ring"
)
EULER_WARNING = "pair ext counts taken from the Euler form (hom = ext2 = 0 assumed, not sampled)"


class OuterSide(str, Enum):
    SOCLE = "SocleOuter"
    TOP = "TopOuter"


class Rationality(str, Enum):
    RATIONAL = "Rational"
    STABLY_RATIONAL = "StablyRational"
    RETRACT_RATIONAL = "RetractRational"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ReductionState:
    outer_type: DimVec3
    outer_mult: int
    socle_type: DimVec3
    top_type: DimVec3
    inner: DimVec2  # (top multiplicity, socle multiplicity)
    t: int
    side: OuterSide

    @property
    def gcd(self) -> int:
        return gcd_all(self.inner.x, self.inner.y, self.outer_mult)

    @property
    def size(self) -> int:
        return self.inner.x + self.inner.y + self.outer_mult

    def inflate(self, rho) -> DimVec3:
        """Beilinson dimension vector of a Kronecker dimension vector of the pair."""
        return self.socle_type.scaled(rho[1]).plus(self.top_type.scaled(rho[0]))

    def to_dict(self) -> dict:
        return {
            "outer_type": list(self.outer_type),
            "outer_mult": self.outer_mult,
            "socle_type": list(self.socle_type),
            "top_type": list(self.top_type),
            "inner": list(self.inner),
            "t": self.t,
            "side": self.side.value,
        }


@dataclass(frozen=True)
class ReductionStep:
    before: ReductionState
    decomp: KronDecomp
    after: Optional[ReductionState]  # None when terminal
    terminal_type: Optional[int] = None

    @property
    def terminal(self) -> bool:
        return self.after is None

    def to_dict(self) -> dict:
        d = self.before.to_dict()
        d["verdict"] = self.decomp.verdict.value
        d["mults"] = [self.decomp.mult_low, self.decomp.mult_high]
        d["decomposition"] = self.decomp.to_dict()
        if self.terminal:
            d["mnf_type"] = self.terminal_type
        return d


@dataclass
class ReductionReport:
    alpha: DimVec3
    h: int
    steps: list
    matrix_count: Optional[int]
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "matrix_size": self.h,
            "matrix_count": self.matrix_count,
            "steps": [s.to_dict() for s in self.steps],
            "warnings": list(self.warnings),
        }


def initial_state(alpha: DimVec3) -> ReductionState:
    """S0 = (0,0,1) as socle; pair (S1, S2) = ((0,1,0), (1,0,0)) over Q(3)."""
    a, b, c = alpha
    return ReductionState(
        outer_type=S0_DIM,
        outer_mult=c,
        socle_type=S1_DIM,
        top_type=S2_DIM,
        inner=DimVec2(a, b),
        t=-euler_beilinson(S2_DIM, S1_DIM),
        side=OuterSide.SOCLE,
    )


def next_state(state: ReductionState, dec: KronDecomp) -> ReductionState:
    """Re-pair the outer object with the adjacent Kronecker summand.

    With the outer object as socle, its partner is the summand forming the
    unique subrepresentation and the other summand becomes a top.  With the
    outer object as top, everything is mirrored.
    """
    (sub_dim, sub_mult), (quot_dim, quot_mult) = dec.sub_summand(), dec.quot_summand()
    sub_type, quot_type = state.inflate(sub_dim), state.inflate(quot_dim)
    outer = state.outer_type
    if state.side == OuterSide.SOCLE:
        socle, top = outer, sub_type
        inner = DimVec2(sub_mult, state.outer_mult)
        new_outer, new_mult, new_side = quot_type, quot_mult, OuterSide.TOP
    else:
        socle, top = quot_type, outer
        inner = DimVec2(state.outer_mult, quot_mult)
        new_outer, new_mult, new_side = sub_type, sub_mult, OuterSide.SOCLE
    t = -euler_beilinson(top, socle)
    if t < 0:
        raise NonPositiveEuler(
            f"pair socle={tuple(socle)} top={tuple(top)} has Euler form {-t} > 0"
        )
    return ReductionState(new_outer, new_mult, socle, top, inner, t, new_side)


def iteration_cap(alpha) -> int:
    return 2 * sum(alpha) + 4


def reduce(alpha, certified: bool = False) -> ReductionReport:
    """Run the reduction to matrix normal form for a dimension vector.

    ``certified`` records that the oracle has sampled representations of
    alpha (trivial End) and of every reduction pair (orthogonality); without
    it, warnings say both were assumed.
    """
    alpha = dimvec3(alpha)
    h_expected = depth_alpha(alpha)
    if h_expected == 0:
        raise ValueError("the zero dimension vector has no matrix normal form")
    state = initial_state(alpha)
    steps = []
    for _ in range(iteration_cap(alpha)):
        dec = kron_decompose(state.t, state.inner)
        if dec.is_mnf:
            h = state.gcd
            steps.append(ReductionStep(state, dec, None, h))
            break
        nxt = next_state(state, dec)
        if nxt.gcd != state.gcd:
            raise AssertionError(f"gcd not conserved: {state} -> {nxt}")
        steps.append(ReductionStep(state, dec, nxt))
        state = nxt
    else:
        raise IterationCap(f"no matrix normal form for {tuple(alpha)} within {iteration_cap(alpha)} steps")

    if h != h_expected:
        raise AssertionError(f"engine type {h} differs from gcd {h_expected}")
    warnings = []
    if not certified:
        warnings.append(HYPOTHESIS_WARNING)
    if len(steps) > 1 and not certified:
        warnings.append(EULER_WARNING)
    try:
        s = matrix_count(alpha, h)
    except NegativeCount as err:
        s = None
        warnings.append(str(err))
    return ReductionReport(alpha, h, steps, s, warnings)


def matrix_count(alpha, h: int) -> int:
    """Number s of h x h matrices: s*h^2 - (h^2 - 1) = 1 - <alpha, alpha>."""
    alpha = dimvec3(alpha)
    if h < 1 or any(v % h for v in alpha):
        raise NonDivisible(f"{h} does not divide every component of {tuple(alpha)}")
    beta = alpha.divided(h)
    s = 1 - euler_beilinson(beta, beta)
    if s < 0:
        raise NegativeCount(f"moduli dimension formula gives s = {s} for {tuple(alpha)}")
    return s


def _squarefree(n: int) -> bool:
    q = 2
    while q * q <= n:
        if n % (q * q) == 0:
            return False
        q += 1
    return True


def rationality_class(h: int) -> Rationality:
    if h < 1:
        raise ValueError("h must be positive")
    if h <= 4:
        return Rationality.RATIONAL
    if 420 % h == 0:
        return Rationality.STABLY_RATIONAL
    if _squarefree(h):
        return Rationality.RETRACT_RATIONAL
    return Rationality.UNKNOWN


@dataclass
class ClassificationReport:
    chern: ChernData
    twist: TwistNorm
    depth: int
    reduction: ReductionReport
    rationality: Rationality
    verification: Optional[dict] = None

    @property
    def matrix_size(self) -> int:
        return self.reduction.h

    @property
    def matrix_count(self) -> Optional[int]:
        return self.reduction.matrix_count

    def to_dict(self) -> dict:
        out = {
            "chern": self.chern.to_dict(),
            "twist": self.twist.to_dict(),
            "depth": self.depth,
            "steps": [s.to_dict() for s in self.reduction.steps],
            "matrix_size": self.matrix_size,
            "matrix_count": self.matrix_count,
            "rationality": self.rationality.value,
            "warnings": list(self.reduction.warnings),
        }
        if self.verification is not None:
            out["verification"] = self.verification
        return out


def classify(ch: ChernData, certified: bool = False) -> ClassificationReport:
    twist = normalize_twist(ch)
    rep = reduce(twist.alpha, certified=certified)
    depth = depth_chern(ch)
    if not depth == rep.h == depth_alpha(twist.alpha):
        raise AssertionError(f"depth {depth} vs matrix size {rep.h}")
    return ClassificationReport(ch, twist, depth, rep, rationality_class(rep.h))
