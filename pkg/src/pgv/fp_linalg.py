"""Exact dense linear algebra over the prime field F_p.

Everything here works on numpy int64 arrays whose entries are residues in
[0, p).  Vectors are rows; the row-space convention matches the rest of the
library, where a module element is a row vector acted on from the right.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

MAX_PRIME = 1 << 15


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if p > MAX_PRIME or not is_prime(p):
        raise ValueError(f"p must be a prime <= {MAX_PRIME}, got {p}")
    return p


def inv_scalar(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod p")
    return pow(a, p - 2, p)


def as_residues(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def rref_array(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form; returns (rref, pivot column indices)."""
    A = np.array(a, dtype=np.int64) % p
    if A.ndim != 2:
        raise ValueError("matrix expected")
    m, n = A.shape
    r = 0
    piv: List[int] = []
    for c in range(n):
        if r == m:
            break
        hits = np.nonzero(A[r:, c])[0]
        if hits.size == 0:
            continue
        i = r + int(hits[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * inv_scalar(A[r, c], p)) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        piv.append(c)
        r += 1
    return A, piv


def rank_array(a: np.ndarray, p: int) -> int:
    _, piv = rref_array(a, p)
    return len(piv)


def left_kernel_array(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows, in RREF) of {x : x @ a = 0}."""
    return right_kernel_array(np.ascontiguousarray(a.T), p)


def right_kernel_array(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows, in RREF) of {x : a @ x^T = 0}."""
    A, piv = rref_array(a, p)
    m, n = A.shape
    piv_set = set(piv)
    free = [j for j in range(n) if j not in piv_set]
    if not free:
        return np.zeros((0, n), dtype=np.int64)
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row_idx, pc in enumerate(piv):
            basis[k, pc] = (-A[row_idx, f]) % p
    # Free columns each carry a lone 1, so the rows are independent; put them
    # into canonical form for deterministic output.
    out, _ = rref_array(basis, p)
    return out


def solve_array(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """One solution x of a @ x = b (column convention), free variables 0."""
    a = as_residues(a, p)
    b = as_residues(b, p).reshape(-1)
    if a.shape[0] != b.shape[0]:
        raise ValueError("dimension mismatch")
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    R, piv = rref_array(aug, p)
    n = a.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for row_idx, pc in enumerate(piv):
        x[pc] = R[row_idx, n]
    return x


def solve_left(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """One solution x of x @ a = b (row convention), free variables 0."""
    sol = solve_array(np.ascontiguousarray(a.T), b, p)
    return sol


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (as_residues(a, p) @ as_residues(b, p)) % p


def mat_inverse(a: np.ndarray, p: int) -> np.ndarray:
    a = as_residues(a, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("square matrix expected")
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = rref_array(aug, p)
    if piv != list(range(n)):
        raise ValueError("matrix not invertible mod p")
    return R[:, n:]


def is_invertible(a: np.ndarray, p: int) -> bool:
    a = as_residues(a, p)
    return a.shape[0] == a.shape[1] and rank_array(a, p) == a.shape[0]


@dataclass(frozen=True)
class FpMatrix:
    """Immutable matrix over F_p (row-major residues)."""

    p: int
    a: np.ndarray

    def __post_init__(self):
        check_prime(self.p)
        arr = as_residues(self.a, self.p)
        arr.setflags(write=False)
        object.__setattr__(self, "a", arr)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> "FpMatrix":
        return cls(p, np.array(rows, dtype=np.int64).reshape(len(rows), -1))

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if self.p != other.p:
            raise ValueError("field mismatch")
        return FpMatrix(self.p, matmul(self.a, other.a, self.p))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpMatrix)
            and self.p == other.p
            and self.a.shape == other.a.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self):
        return hash((self.p, self.a.shape, self.a.tobytes()))


def rref(m: FpMatrix) -> Tuple[FpMatrix, int, List[int]]:
    """RREF of m with its rank and pivot columns."""
    R, piv = rref_array(m.a, m.p)
    return FpMatrix(m.p, R), len(piv), piv


@dataclass(frozen=True)
class FpSubspace:
    """Subspace of F_p^ambient_dim; basis rows in RREF with no zero rows."""

    p: int
    ambient_dim: int
    basis: FpMatrix

    def __post_init__(self):
        b = self.basis
        if b.cols != self.ambient_dim:
            raise ValueError("basis width != ambient dim")
        R, rank, _ = rref(b)
        if rank != b.rows or not np.array_equal(R.a, b.a):
            raise ValueError("basis must be in RREF with no zero rows")

    @classmethod
    def from_rows(cls, rows, p: int, ambient_dim: Optional[int] = None) -> "FpSubspace":
        arr = as_residues(np.array(rows, dtype=np.int64), p)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.size == 0:
            if ambient_dim is None:
                raise ValueError("ambient_dim required for empty row list")
            arr = arr.reshape(0, ambient_dim)
        R, piv = rref_array(arr, p)
        R = R[: len(piv)]
        return cls(p, arr.shape[1], FpMatrix(p, R))

    @classmethod
    def zero(cls, ambient_dim: int, p: int) -> "FpSubspace":
        return cls.from_rows(np.zeros((0, ambient_dim), dtype=np.int64), p, ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int, p: int) -> "FpSubspace":
        return cls.from_rows(np.eye(ambient_dim, dtype=np.int64), p, ambient_dim)

    @property
    def dim(self) -> int:
        return self.basis.rows

    def contains_vector(self, v) -> bool:
        v = as_residues(v, self.p).reshape(1, -1)
        stacked = np.vstack([self.basis.a, v])
        return rank_array(stacked, self.p) == self.dim

    def contains(self, other: "FpSubspace") -> bool:
        self._check_compatible(other)
        if other.dim == 0:
            return True
        stacked = np.vstack([self.basis.a, other.basis.a])
        return rank_array(stacked, self.p) == self.dim

    def sum(self, other: "FpSubspace") -> "FpSubspace":
        self._check_compatible(other)
        return FpSubspace.from_rows(
            np.vstack([self.basis.a, other.basis.a]), self.p, self.ambient_dim
        )

    def intersect(self, other: "FpSubspace") -> "FpSubspace":
        self._check_compatible(other)
        if self.dim == 0 or other.dim == 0:
            return FpSubspace.zero(self.ambient_dim, self.p)
        stacked = np.vstack([self.basis.a, other.basis.a])
        coeffs = left_kernel_array(np.ascontiguousarray(stacked), self.p)
        if coeffs.shape[0] == 0:
            return FpSubspace.zero(self.ambient_dim, self.p)
        vecs = (coeffs[:, : self.dim] @ self.basis.a) % self.p
        return FpSubspace.from_rows(vecs, self.p, self.ambient_dim)

    def quotient_dim(self, other: "FpSubspace") -> int:
        self._check_compatible(other)
        if not self.contains(other):
            raise ValueError("not a subspace")
        return self.dim - other.dim

    def _check_compatible(self, other: "FpSubspace"):
        if self.p != other.p or self.ambient_dim != other.ambient_dim:
            raise ValueError("subspace mismatch")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpSubspace)
            and self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.p, self.ambient_dim, self.basis))


def kernel(m: FpMatrix) -> FpSubspace:
    """Right kernel {v : m @ v = 0} as a subspace (basis rows)."""
    rows = right_kernel_array(m.a, m.p)
    return FpSubspace.from_rows(rows, m.p, m.cols)


def solve(a: FpMatrix, b) -> Optional[np.ndarray]:
    return solve_array(a.a, np.asarray(b, dtype=np.int64), a.p)


class RowSpace:
    """Incrementally built row space; rows are kept fully reduced.

    Used wherever a large equation system or orbit closure is accumulated
    batch by batch instead of materializing one giant matrix.
    """

    def __init__(self, p: int, ncols: int):
        self.p = p
        self.ncols = ncols
        self._rows = np.zeros((0, ncols), dtype=np.int64)
        self._piv: List[int] = []

    @property
    def dim(self) -> int:
        return len(self._piv)

    @property
    def basis(self) -> np.ndarray:
        return self._rows

    def reduce(self, rows: np.ndarray) -> np.ndarray:
        """Residues of rows after reduction against the current basis."""
        B = as_residues(np.atleast_2d(rows), self.p).copy()
        for idx, c in enumerate(self._piv):
            col = B[:, c]
            nz = np.nonzero(col)[0]
            if nz.size:
                B[nz] = (B[nz] - np.outer(col[nz], self._rows[idx])) % self.p
        return B

    def add(self, rows: np.ndarray) -> int:
        """Add rows to the span; returns the rank gained."""
        B = self.reduce(rows)
        R, piv_local = rref_array(B, self.p)
        new = R[: len(piv_local)]
        if not len(piv_local):
            return 0
        # Reduce existing rows against the new pivots, then merge sorted by pivot.
        for idx, c in enumerate(piv_local):
            col = self._rows[:, c]
            nz = np.nonzero(col)[0]
            if nz.size:
                self._rows[nz] = (self._rows[nz] - np.outer(col[nz], new[idx])) % self.p
        merged = list(zip(self._piv, self._rows)) + list(zip(piv_local, new))
        merged.sort(key=lambda t: t[0])
        self._piv = [c for c, _ in merged]
        self._rows = np.array([r for _, r in merged], dtype=np.int64)
        return len(piv_local)

    def contains(self, rows: np.ndarray) -> bool:
        return not np.any(self.reduce(rows) % self.p)

    def subspace(self) -> FpSubspace:
        return FpSubspace.from_rows(self._rows.copy(), self.p, self.ncols)


def complement_reps(sub: np.ndarray, space: np.ndarray, p: int) -> np.ndarray:
    """Rows of `space` (reduced) extending row-space `sub` to span `space`.

    Deterministic: processes the RREF basis of `space` in order and keeps rows
    that grow the rank; the kept rows are reduced against `sub`.
    """
    acc = RowSpace(p, space.shape[1] if space.size else sub.shape[1])
    acc.add(sub)
    base_dim = acc.dim
    space_rref, piv = rref_array(np.atleast_2d(space), p)
    reps = []
    for row in space_rref[: len(piv)]:
        if acc.add(row.reshape(1, -1)):
            reps.append(row)
    out = np.array(reps, dtype=np.int64) if reps else np.zeros(
        (0, acc.ncols), dtype=np.int64
    )
    assert acc.dim - base_dim == out.shape[0]
    return out
