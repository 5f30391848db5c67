"""Exact linear algebra over the rationals and prime fields.

Matrices are dense and immutable.  Prime-field matrices are stored as
``int64`` numpy arrays holding canonical representatives in ``[0, p)``
whenever ``p`` is small enough that a product of two residues cannot
overflow; otherwise (and always over the rationals) entries are Python
objects (``int`` or ``fractions.Fraction``).  No floating point is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np
from sympy import isprime

from .errors import FieldMismatch, ShapeMismatch

RATIONALS = "Rationals"
PRIME_FIELD = "PrimeField"
DEFAULT_PRIME = 1009

# Largest modulus for which int64 residue products stay below 2**62.
_INT64_MODULUS_LIMIT = 2**31


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals or a prime field F_p with p >= 5."""

    kind: str
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.modulus is not None:
                raise ValueError("the rationals carry no modulus")
        elif self.kind == PRIME_FIELD:
            p = self.modulus
            if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
                raise ValueError(f"modulus must be an integer, got {p!r}")
            if p < 5 or not isprime(int(p)):
                raise ValueError(f"modulus must be a prime >= 5, got {p}")
            object.__setattr__(self, "modulus", int(p))
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(RATIONALS)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "FieldSpec":
        return cls(PRIME_FIELD, p)

    @property
    def is_prime(self) -> bool:
        return self.kind == PRIME_FIELD

    @property
    def dtype(self):
        if self.is_prime and self.modulus < _INT64_MODULUS_LIMIT:
            return np.int64
        return object

    def __str__(self):
        return f"F_{self.modulus}" if self.is_prime else "Q"

    # -- scalars -----------------------------------------------------------

    def scalar(self, x):
        """Coerce ``x`` (int, Fraction or text) into a canonical field element."""
        if isinstance(x, str):
            return self.parse(x)
        if self.is_prime:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
            return int(x) % self.modulus
        return Fraction(x)

    def inv(self, x):
        if self.is_prime:
            return pow(int(x), -1, self.modulus)
        return 1 / Fraction(x)

    def parse(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self.scalar(Fraction(int(num), int(den)))
        return self.scalar(int(text))

    def format(self, x) -> str:
        if self.is_prime:
            return str(int(x))
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    # -- arrays --------------------------------------------------------------

    def asarray(self, data, shape=None) -> np.ndarray:
        """Return a fresh canonical array for ``data``."""
        if isinstance(data, np.ndarray) and data.dtype != object and self.is_prime:
            arr = np.mod(data.astype(np.int64, copy=True), self.modulus)
            if self.dtype is object:
                arr = arr.astype(object)
        else:
            src = np.asarray(data, dtype=object)
            flat = [self.scalar(x) for x in src.reshape(-1)]
            arr = np.empty(len(flat), dtype=object)
            arr[:] = flat
            arr = arr.reshape(src.shape)
            if self.dtype is not object:
                arr = arr.astype(np.int64)
        if shape is not None:
            arr = arr.reshape(shape)
        return arr

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            arr = np.empty(shape, dtype=object)
            arr.fill(0 if self.is_prime else Fraction(0))
            return arr
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        arr = self.zeros((n, n))
        for i in range(n):
            arr[i, i] = 1 if self.is_prime else Fraction(1)
        return arr

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.is_prime:
            return np.mod(arr, self.modulus)
        return arr

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        if not self.is_prime:
            raise FieldMismatch("uniform sampling is only defined over prime fields")
        if self.dtype is object:
            n = int(np.prod(shape)) if len(shape) else 1
            vals = [int(v) for v in rng.integers(0, self.modulus, size=n, dtype=np.uint64)]
            arr = np.empty(n, dtype=object)
            arr[:] = vals
            return arr.reshape(shape)
        return rng.integers(0, self.modulus, size=shape, dtype=np.int64)


def matmul(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ShapeMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if a.dtype != object and b.dtype != object:
        p = field.modulus
        if (p - 1) ** 2 * max(a.shape[1], 1) < 2**63:
            return np.mod(a @ b, p)
        return np.mod(a.astype(object) @ b.astype(object), p).astype(np.int64)
    if a.shape[1] == 0:
        return field.zeros((a.shape[0], b.shape[1]))
    return field.reduce(a.astype(object) @ b.astype(object))


def kron(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; both factors hold canonical residues so int64 is safe."""
    return field.reduce(np.kron(a, b))


def rref(field: FieldSpec, arr: np.ndarray):
    """Reduced row echelon form and pivot columns.

    Pivots are chosen as the first nonzero entry scanning columns left to
    right and rows top to bottom, which makes the output reproducible.
    """
    A = np.array(arr, dtype=arr.dtype, copy=True)
    m, n = A.shape
    p = field.modulus
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c] != 0)
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = field.inv(A[r, c])
        A[r] = field.reduce(A[r] * inv)
        col = A[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col != 0)
        if others.size:
            upd = A[others] - np.outer(col[others], A[r])
            A[others] = np.mod(upd, p) if field.is_prime else upd
        pivots.append(c)
        r += 1
    return A, pivots


def rank_of(field: FieldSpec, arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    # Eliminate along the shorter side.
    if arr.shape[0] > arr.shape[1]:
        arr = arr.T
    return len(rref(field, arr)[1])


def nullspace_of(field: FieldSpec, arr: np.ndarray) -> np.ndarray:
    """Columns spanning the right kernel of ``arr``."""
    m, n = arr.shape
    if m == 0:
        return field.eye(n)
    R, pivots = rref(field, arr)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = field.zeros((n, len(free)))
    for k, f in enumerate(free):
        basis[f, k] = 1 if field.is_prime else Fraction(1)
        for i, pc in enumerate(pivots):
            basis[pc, k] = field.reduce(-R[i, f]) if field.is_prime else -R[i, f]
    return basis


class ExactMat:
    """Immutable dense matrix over a :class:`FieldSpec`."""

    __slots__ = ("field", "_a")

    def __init__(self, field: FieldSpec, data, shape=None):
        arr = field.asarray(data, shape)
        if arr.ndim != 2:
            raise ShapeMismatch(f"expected a 2-d matrix, got shape {arr.shape}")
        arr.flags.writeable = False
        self.field = field
        self._a = arr

    @classmethod
    def from_entries(cls, field: FieldSpec, rows: int, cols: int, entries: Sequence) -> "ExactMat":
        if len(entries) != rows * cols:
            raise ShapeMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        arr = field.zeros((rows, cols))
        if entries:
            arr = field.asarray(list(entries), (rows, cols))
        return cls(field, arr)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "ExactMat":
        return cls(field, field.zeros((rows, cols)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "ExactMat":
        return cls(field, field.eye(n))

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self):
        return self._a.shape

    @property
    def entries(self) -> tuple:
        if self.field.is_prime:
            return tuple(int(x) for x in self._a.reshape(-1))
        return tuple(self._a.reshape(-1))

    def array(self) -> np.ndarray:
        """A writable copy of the underlying array."""
        return self._a.copy()

    def __getitem__(self, ij):
        x = self._a[ij]
        return int(x) if self.field.is_prime and np.ndim(x) == 0 else x

    @property
    def T(self) -> "ExactMat":
        return ExactMat(self.field, self._a.T)

    def _check(self, other: "ExactMat"):
        if not isinstance(other, ExactMat):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return None

    def __matmul__(self, other: "ExactMat") -> "ExactMat":
        self._check(other)
        return ExactMat(self.field, matmul(self.field, self._a, other._a))

    def __add__(self, other: "ExactMat") -> "ExactMat":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")
        return ExactMat(self.field, self.field.reduce(self._a + other._a))

    def __sub__(self, other: "ExactMat") -> "ExactMat":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")
        return ExactMat(self.field, self.field.reduce(self._a - other._a))

    def __neg__(self) -> "ExactMat":
        return ExactMat(self.field, self.field.reduce(-self._a))

    def scale(self, c) -> "ExactMat":
        return ExactMat(self.field, self.field.reduce(self._a * self.field.scalar(c)))

    def is_zero(self) -> bool:
        return not np.any(self._a != 0)

    def __eq__(self, other):
        if not isinstance(other, ExactMat):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self._a == other._a))
        )

    def __hash__(self):
        return hash((self.field, self.shape, self.entries))

    def __repr__(self):
        return f"ExactMat({self.field}, {self.rows}x{self.cols}, {self.to_text()})"

    def to_text(self) -> list:
        """Nested rows of entry strings (the on-disk matrix form)."""
        fmt = self.field.format
        return [[fmt(x) for x in row] for row in self._a]

    @classmethod
    def from_text(cls, field: FieldSpec, rows: Iterable[Iterable[str]], shape=None) -> "ExactMat":
        rows = [list(r) for r in rows]
        if shape is not None and (len(rows) == 0 or len(rows[0]) == 0):
            return cls.zeros(field, *shape)
        mat = cls(field, [[field.parse(str(x)) for x in r] for r in rows])
        if shape is not None and mat.shape != tuple(shape):
            raise ShapeMismatch(f"expected shape {tuple(shape)}, read {mat.shape}")
        return mat


def _same_field(*mats: ExactMat) -> FieldSpec:
    field = mats[0].field
    for m in mats[1:]:
        if m.field != field:
            raise FieldMismatch(f"{field} vs {m.field}")
    return field


def mat_rank(m: ExactMat) -> int:
    return rank_of(m.field, m._a)


def mat_nullspace(m: ExactMat) -> ExactMat:
    """Basis of the right kernel, one vector per column."""
    return ExactMat(m.field, nullspace_of(m.field, m._a))


def mat_solve(a: ExactMat, b: ExactMat) -> Optional[ExactMat]:
    """Some ``x`` with ``a @ x == b``, or ``None`` when the system is inconsistent."""
    field = _same_field(a, b)
    if a.rows != b.rows:
        raise ShapeMismatch(f"a has {a.rows} rows, b has {b.rows}")
    n = a.cols
    if a.rows == 0:
        return ExactMat.zeros(field, n, b.cols)
    aug = np.concatenate([a._a, b._a], axis=1)
    R, pivots = rref(field, aug)
    if any(pc >= n for pc in pivots):
        return None
    x = field.zeros((n, b.cols))
    for i, pc in enumerate(pivots):
        x[pc] = R[i, n:]
    return ExactMat(field, x)
