"""Representations of the multiplication sigma: k^3 (x) k^3 -> S^2(k^3).

A representation has spaces R(0), R(1), R(2) of dimensions (a, b, c) and
matrices ``A01[i]`` (b x a), ``A12[j]`` (c x b), ``A02[m]`` (c x a) subject to

    A12[j] @ A01[i] == A02[mu(i, j)]     for all i, j in 0..2

where ``mu(i, j)`` indexes the monomial x_i x_j in the basis
(x^2, xy, xz, y^2, yz, z^2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np

from .errors import DimensionInfeasible, FieldMismatch, GenericityFailure, RelationViolated, ShapeMismatch
from .exactlin import ExactMat, FieldSpec, kron, matmul, nullspace_of, rank_of
from .kronecker import KroneckerRep
from .quivercore import DimVec3, PROJECTIVE_DIMS, dimvec3

MONOMIALS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))
MU = tuple(tuple(MONOMIALS.index(tuple(sorted((i, j)))) for j in range(3)) for i in range(3))
# Basis e_i (x) e_j - e_j (x) e_i of ker(sigma), i < j; also the relation index.
KERNEL_PAIRS = tuple(combinations(range(3), 2))
MAX_RESAMPLES = 8


@dataclass(frozen=True)
class BeilinsonRep:
    field: FieldSpec
    dim: DimVec3
    A01: tuple
    A12: tuple
    A02: tuple

    def relation_failure(self):
        """First (i, j) at which the relation fails, or None."""
        for i in range(3):
            for j in range(3):
                if self.A12[j] @ self.A01[i] != self.A02[MU[i][j]]:
                    return (i, j)
        return None

    def arrows(self):
        """(source, target, matrix) for all twelve structure maps."""
        out = [(0, 1, m) for m in self.A01]
        out += [(1, 2, m) for m in self.A12]
        out += [(0, 2, m) for m in self.A02]
        return out

    def to_json(self) -> dict:
        field = {"kind": self.field.kind, "modulus": self.field.modulus}
        return {
            "field": field,
            "dim": list(self.dim),
            "a01": [m.to_text() for m in self.A01],
            "a12": [m.to_text() for m in self.A12],
            "a02": [m.to_text() for m in self.A02],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BeilinsonRep":
        f = data["field"]
        field = FieldSpec(f["kind"], f.get("modulus"))
        a, b, c = dimvec3(data["dim"])
        A01 = [ExactMat.from_text(field, m, (b, a)) for m in data["a01"]]
        A12 = [ExactMat.from_text(field, m, (c, b)) for m in data["a12"]]
        A02 = [ExactMat.from_text(field, m, (c, a)) for m in data["a02"]]
        return make_rep(field, (a, b, c), A01, A12, A02)


def _mats(field, shape, mats, count, name):
    mats = tuple(m if isinstance(m, ExactMat) else ExactMat(field, m, shape) for m in mats)
    if len(mats) != count:
        raise ShapeMismatch(f"{name}: expected {count} matrices, got {len(mats)}")
    for m in mats:
        if m.field != field:
            raise FieldMismatch(f"{name}: {m.field} vs {field}")
        if m.shape != shape:
            raise ShapeMismatch(f"{name}: matrix of shape {m.shape}, expected {shape}")
    return mats


def make_rep(field: FieldSpec, dim, A01, A12, A02) -> BeilinsonRep:
    """Build a representation, checking shapes and the relation exactly."""
    a, b, c = dim = dimvec3(dim)
    rep = BeilinsonRep(
        field,
        dim,
        _mats(field, (b, a), A01, 3, "A01"),
        _mats(field, (c, b), A12, 3, "A12"),
        _mats(field, (c, a), A02, 6, "A02"),
    )
    bad = rep.relation_failure()
    if bad is not None:
        raise RelationViolated(*bad)
    return rep


def zero_rep(field: FieldSpec, dim) -> BeilinsonRep:
    a, b, c = dim = dimvec3(dim)
    z = ExactMat.zeros
    return BeilinsonRep(field, dim, (z(field, b, a),) * 3, (z(field, c, b),) * 3, (z(field, c, a),) * 6)


def simple_rep(vertex: int, field: FieldSpec) -> BeilinsonRep:
    dim = [0, 0, 0]
    dim[vertex] = 1
    return zero_rep(field, dim)


def _unit_columns(field, n, picks):
    """Matrix with n rows whose k-th column is e_{picks[k]}."""
    arr = field.zeros((n, len(picks)))
    for k, row in enumerate(picks):
        arr[row, k] = 1
    return ExactMat(field, arr)


def projective_rep(i: int, field: FieldSpec) -> BeilinsonRep:
    """P(0) = O = (k, k^3, S^2 k^3), P(1) = O(-1) = (0, k, k^3), P(2) = O(-2) = (0, 0, k)."""
    dim = PROJECTIVE_DIMS[i]
    if i == 2:
        return zero_rep(field, dim)
    if i == 1:
        A12 = [_unit_columns(field, 3, [j]) for j in range(3)]
        return make_rep(field, dim, [ExactMat.zeros(field, 1, 0)] * 3, A12, [ExactMat.zeros(field, 3, 0)] * 6)
    A01 = [_unit_columns(field, 3, [k]) for k in range(3)]
    A12 = [_unit_columns(field, 6, [MU[k][j] for k in range(3)]) for j in range(3)]
    A02 = [_unit_columns(field, 6, [m]) for m in range(6)]
    return make_rep(field, dim, A01, A12, A02)


def direct_sum(R: BeilinsonRep, S: BeilinsonRep) -> BeilinsonRep:
    if R.field != S.field:
        raise FieldMismatch(f"{R.field} vs {S.field}")
    F = R.field

    def block(m, n):
        out = F.zeros((m.rows + n.rows, m.cols + n.cols))
        out[: m.rows, : m.cols] = m.array()
        out[m.rows:, m.cols:] = n.array()
        return ExactMat(F, out)

    return BeilinsonRep(
        F,
        R.dim.plus(S.dim),
        tuple(block(m, n) for m, n in zip(R.A01, S.A01)),
        tuple(block(m, n) for m, n in zip(R.A12, S.A12)),
        tuple(block(m, n) for m, n in zip(R.A02, S.A02)),
    )


def kronecker_inflate(K: KroneckerRep) -> BeilinsonRep:
    """Q(3) representation of dimension (n m) as the representation (n, m, 0).

    This is the embedding of Kronecker representations into the extension
    closure of the simples (0,1,0) and (1,0,0).
    """
    if K.u != 3:
        raise ValueError(f"inflation needs a 3-arrow Kronecker representation, got u={K.u}")
    n, m = K.dim
    F = K.field
    z = ExactMat.zeros
    return BeilinsonRep(F, DimVec3(n, m, 0), tuple(K.mats), (z(F, 0, m),) * 3, (z(F, 0, n),) * 6)


# -- sampling -----------------------------------------------------------------


def _presentation_matrix(F: FieldSpec, A01: np.ndarray, a: int, b: int) -> np.ndarray:
    """I (x) sigma  (+)  -(phi01 (x) I):  k^a(x)U(x)V -> k^a(x)W (+) k^b(x)V."""
    M = F.zeros((6 * a + 3 * b, 9 * a))
    for v in range(a):
        for i in range(3):
            for j in range(3):
                col = (v * 3 + i) * 3 + j
                M[v * 6 + MU[i][j], col] = 1
                M[6 * a + np.arange(b) * 3 + j, col] = F.reduce(-A01[i][:, v])
    return M


def _sample(alpha, field: FieldSpec, seed: int, left_general: bool) -> BeilinsonRep:
    if not field.is_prime:
        raise FieldMismatch("sampling is only defined over prime fields")
    a, b, c = alpha = dimvec3(alpha)
    if left_general and a > b:
        raise DimensionInfeasible(f"9a <= 6a + 3b fails for alpha={tuple(alpha)}")
    rng = np.random.default_rng(seed & (2**64 - 1))
    F = field
    for _ in range(MAX_RESAMPLES):
        A01 = F.random(rng, (3, b, a))
        M = _presentation_matrix(F, A01, a, b)
        if left_general and rank_of(F, M) < 9 * a:
            continue
        # maps out of the cokernel: rows of Q^T annihilate the image of M
        Q = nullspace_of(F, M.T)
        H = F.random(rng, (c, Q.shape[1]))
        g = matmul(F, H, Q.T)
        A02 = [g[:, [v * 6 + m for v in range(a)]] for m in range(6)]
        A12 = [g[:, [6 * a + w * 3 + j for w in range(b)]] for j in range(3)]
        return make_rep(F, alpha, [A01[i] for i in range(3)], A12, A02)
    raise GenericityFailure(f"no maximal-rank draw for alpha={tuple(alpha)} in {MAX_RESAMPLES} tries")


def sample_rep(alpha, field: FieldSpec, seed: int) -> BeilinsonRep:
    """Random representation: uniform A01, then a uniform map out of the cokernel.

    Works for every dimension vector; when a <= b the result is a general
    point of the left general component.
    """
    return _sample(alpha, field, seed, left_general=False)


def sample_left_general(alpha, field: FieldSpec, seed: int) -> BeilinsonRep:
    return _sample(alpha, field, seed, left_general=True)


def left_general_matrix(R: BeilinsonRep) -> np.ndarray:
    """R(0) (x) K -> R(1) (x) V, a 3b x 3a matrix."""
    F = R.field
    a, b, _ = R.dim
    out = F.zeros((3 * b, 3 * a))
    for k, (i, j) in enumerate(KERNEL_PAIRS):
        cols = slice(k * a, (k + 1) * a)
        # v -> A01[i] v (x) e_j - A01[j] v (x) e_i
        out[j * b:(j + 1) * b, cols] = R.A01[i].array()
        out[i * b:(i + 1) * b, cols] = F.reduce(-R.A01[j].array())
    return out


def is_left_general(R: BeilinsonRep) -> bool:
    if R.dim.a == 0:
        return True
    return rank_of(R.field, left_general_matrix(R)) == 3 * R.dim.a


# -- Hom and Ext ----------------------------------------------------------------


def _offsets(dR, dS):
    sizes = [dS[v] * dR[v] for v in range(3)]
    return [0, sizes[0], sizes[0] + sizes[1]], sum(sizes)


def _commutation_rows(F, R, S, arrows, offsets, ncols):
    """Rows of f_t R(arrow) - S(arrow) f_s for each (s, t, Rmat, Smat)."""
    blocks = []
    for s, t, Rm, Sm in arrows:
        rows = Sm.rows * Rm.cols
        blk = F.zeros((rows, ncols))
        # vec(S f_s) = (S (x) I_{R(s)}) vec(f_s);  vec(f_t R) = (I_{S(t)} (x) R^T) vec(f_t)
        left = kron(F, Sm._a, F.eye(R.dim[s]))
        right = kron(F, F.eye(S.dim[t]), Rm._a.T)
        blk[:, offsets[s]:offsets[s] + left.shape[1]] = F.reduce(-left)
        blk[:, offsets[t]:offsets[t] + right.shape[1]] = right
        blocks.append(blk)
    return np.concatenate(blocks, axis=0) if blocks else F.zeros((0, ncols))


def _check_fields(R, S):
    if R.field != S.field:
        raise FieldMismatch(f"{R.field} vs {S.field}")
    return R.field


def hom_dim(R: BeilinsonRep, S: BeilinsonRep) -> int:
    """dim Hom(R, S): triples (f0, f1, f2) commuting with all twelve maps."""
    F = _check_fields(R, S)
    offsets, n = _offsets(R.dim, S.dim)
    arrows = [(s, t, Rm, Sm) for (s, t, Rm), (_, _, Sm) in zip(R.arrows(), S.arrows())]
    system = _commutation_rows(F, R, S, arrows, offsets, n)
    return n - rank_of(F, system)


def ext_complex(R: BeilinsonRep, S: BeilinsonRep):
    """Differentials d0: C0 -> C1 and d1: C1 -> C2 of Hom(resolution of R, S).

    C0 = (+)_v Hom(R(v), S(v)); C1 = Hom(R(0), S(1))^3 (+) Hom(R(1), S(2))^3;
    C2 = Hom(R(0), S(2))^3, one copy per relation.
    """
    F = _check_fields(R, S)
    (a, b, c), (sa, sb, sc) = R.dim, S.dim
    offsets, n0 = _offsets(R.dim, S.dim)
    arrows = [(0, 1, R.A01[i], S.A01[i]) for i in range(3)]
    arrows += [(1, 2, R.A12[j], S.A12[j]) for j in range(3)]
    d0 = _commutation_rows(F, R, S, arrows, offsets, n0)

    g_size, h_size = sb * a, sc * b
    n1 = 3 * g_size + 3 * h_size
    blocks = []
    for i, j in KERNEL_PAIRS:
        blk = F.zeros((sc * a, n1))
        # relation x_i y_j - x_j y_i applied to the derivation (g, h)
        for first, second, sign in ((i, j, 1), (j, i, -1)):
            g_part = kron(F, S.A12[second]._a, F.eye(a))
            h_part = kron(F, F.eye(sc), R.A01[first]._a.T)
            gs = slice(first * g_size, (first + 1) * g_size)
            hs = slice(3 * g_size + second * h_size, 3 * g_size + (second + 1) * h_size)
            blk[:, gs] = F.reduce(blk[:, gs] + sign * g_part)
            blk[:, hs] = F.reduce(blk[:, hs] + sign * h_part)
        blocks.append(blk)
    d1 = np.concatenate(blocks, axis=0)
    return d0, d1


def ext_dims(R: BeilinsonRep, S: BeilinsonRep):
    """(dim Ext^1(R, S), dim Ext^2(R, S))."""
    F = _check_fields(R, S)
    d0, d1 = ext_complex(R, S)
    r0, r1 = rank_of(F, d0), rank_of(F, d1)
    ext1 = (d1.shape[1] - r1) - r0
    ext2 = d1.shape[0] - r1
    return ext1, ext2


def end_dim(R: BeilinsonRep) -> int:
    return hom_dim(R, R)


# -- sheaf test -----------------------------------------------------------------


def sheaf_complex_at(R: BeilinsonRep, point):
    """Fibre of the complex A -> B -> C at a point of P^2.

    A = R(0) (x) L^2 k^3, B = R(0) (x) k^3 (+) R(1) (x) k^3, C = R(0) (+) R(1) (+) R(2).
    Returns (first, second) as arrays of shapes (3a+3b, 3a) and (a+b+c, 3a+3b).
    """
    F = R.field
    a, b, c = R.dim
    p = [F.scalar(x) for x in point]
    A01 = [m.array() for m in R.A01]
    first = F.zeros((3 * a + 3 * b, 3 * a))
    for k, (i, j) in enumerate(KERNEL_PAIRS):
        cols = slice(k * a, (k + 1) * a)
        first[i * a:(i + 1) * a, cols] = F.reduce(p[j] * F.eye(a))
        first[j * a:(j + 1) * a, cols] = F.reduce(-p[i] * F.eye(a))
        first[3 * a + j * b:3 * a + (j + 1) * b, cols] = A01[i]
        first[3 * a + i * b:3 * a + (i + 1) * b, cols] = F.reduce(-A01[j])
    second = F.zeros((a + b + c, 3 * a + 3 * b))
    for k in range(3):
        cols = slice(k * a, (k + 1) * a)
        second[:a, cols] = F.reduce(p[k] * F.eye(a))
        second[a:a + b, cols] = F.reduce(-A01[k])
    for l in range(3):
        cols = slice(3 * a + l * b, 3 * a + (l + 1) * b)
        second[a:a + b, cols] = F.reduce(p[l] * F.eye(b))
        second[a + b:, cols] = F.reduce(-R.A12[l].array())
    return first, second


@dataclass(frozen=True)
class SheafTest:
    is_sheaf: bool
    fiber_rank: int
    points: int

    def __bool__(self):
        return self.is_sheaf


def _random_point(F, rng):
    while True:
        p = F.random(rng, (3,))
        if np.any(p != 0):
            return [int(x) for x in p]


def rep_is_sheaf(R: BeilinsonRep, trials: int = 20, seed: int = 0) -> SheafTest:
    """Probabilistic test that R is a sheaf, by fibre ranks at random points.

    One-sided: a failure locus missed by every sampled point goes unnoticed.
    """
    if not R.field.is_prime:
        raise FieldMismatch("point sampling needs a prime field")
    if trials < 1:
        raise ValueError("trials must be positive")
    a, b, c = R.dim
    rng = np.random.default_rng(seed & (2**64 - 1))
    ok = True
    for _ in range(trials):
        first, second = sheaf_complex_at(R, _random_point(R.field, rng))
        if rank_of(R.field, first) != 3 * a or rank_of(R.field, second) != 3 * b:
            ok = False
            break
    return SheafTest(ok, a + b + c - 3 * b, trials)


# -- files ----------------------------------------------------------------------


def save_rep(R: BeilinsonRep, path) -> None:
    Path(path).write_text(json.dumps(R.to_json(), indent=1) + "\n", encoding="utf-8")


def load_rep(path) -> BeilinsonRep:
    return BeilinsonRep.from_json(json.loads(Path(path).read_text(encoding="utf-8")))
