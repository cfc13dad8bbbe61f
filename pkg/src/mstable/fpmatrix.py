"""Exact dense linear algebra over prime fields GF(p).

Matrices are immutable, store residues in [0, p) in row-major int64
numpy arrays, and every operation is exact.  This module is the
computational substrate for all hom spaces, splitting tests, kernels
and cokernels in the package.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import NamedTuple, Sequence

import numpy as np

EXHAUSTIVE_THRESHOLD = 1 << 16

_prime_cache: dict[int, bool] = {}


def is_prime(n: int) -> bool:
    """Trial division, cached; fine for the 2 <= p < 2**31 range we allow."""
    cached = _prime_cache.get(n)
    if cached is not None:
        return cached
    if n < 2:
        result = False
    else:
        result = all(n % d for d in range(2, math.isqrt(n) + 1))
    _prime_cache[n] = result
    return result


class FpMatrix:
    """Immutable dense matrix over GF(p).

    Entries are always reduced to [0, p).  Arithmetic (`+`, `-`, `@`,
    scalar `*`) stays exact for every prime p < 2**31; matrix products
    with large p are accumulated in chunks so int64 never overflows.
    """

    __slots__ = ("p", "_data")

    def __init__(self, p: int, data) -> None:
        p = int(p)
        if not (2 <= p < 2**31):
            raise ValueError(f"modulus must satisfy 2 <= p < 2**31, got {p}")
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {arr.shape}")
        arr = np.mod(arr, p)
        arr.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "_data", arr)

    def __setattr__(self, name, value):
        raise AttributeError("FpMatrix is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    # -- basic accessors ------------------------------------------------------

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape

    @property
    def data(self) -> np.ndarray:
        """The underlying (read-only) int64 array."""
        return self._data

    @property
    def T(self) -> "FpMatrix":
        return FpMatrix(self.p, self._data.T)

    def to_lists(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self._data]

    def is_zero(self) -> bool:
        return not self._data.any()

    def is_identity(self) -> bool:
        return self.rows == self.cols and np.array_equal(
            self._data, np.eye(self.rows, dtype=np.int64)
        )

    def column(self, j: int) -> "FpMatrix":
        return FpMatrix(self.p, self._data[:, j : j + 1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self._data, other._data)

    __hash__ = None  # mutable-free but structural eq; not meant for dict keys

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, {self.to_lists()})"

    # -- arithmetic -----------------------------------------------------------

    def _check_same_field(self, other: "FpMatrix") -> None:
        if self.p != other.p:
            raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._check_same_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return FpMatrix(self.p, self._data + other._data)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._check_same_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return FpMatrix(self.p, self._data - other._data)

    def __neg__(self) -> "FpMatrix":
        return FpMatrix(self.p, -self._data)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix(self.p, self._data * (int(c) % self.p))

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._check_same_field(other)
        if self.cols != other.rows:
            raise ValueError(
                f"dimension mismatch: {self.shape} @ {other.shape}"
            )
        return FpMatrix(self.p, _matmul_mod(self._data, other._data, self.p))

    def rank(self) -> int:
        return rref(self).rank

    def inverse(self) -> "FpMatrix | None":
        """Two-sided inverse, or None if not square / singular."""
        if self.rows != self.cols:
            return None
        return solve_right(self, FpMatrix.identity(self.p, self.rows))


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    inner = a.shape[1]
    if inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    # chunk so that chunk * (p-1)^2 never overflows int64
    chunk = max(1, (2**62) // max(1, (p - 1) ** 2))
    if chunk >= inner:
        return (a @ b) % p
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, inner, chunk):
        acc = (acc + a[:, s : s + chunk] @ b[s : s + chunk, :]) % p
    return acc


# -- stacking helpers ---------------------------------------------------------

def hstack(blocks: Sequence[FpMatrix]) -> FpMatrix:
    p = blocks[0].p
    return FpMatrix(p, np.hstack([b.data for b in blocks]))


def vstack(blocks: Sequence[FpMatrix]) -> FpMatrix:
    p = blocks[0].p
    return FpMatrix(p, np.vstack([b.data for b in blocks]))


def block_diag(blocks: Sequence[FpMatrix], p: int | None = None) -> FpMatrix:
    if not blocks:
        if p is None:
            raise ValueError("block_diag of no blocks needs an explicit p")
        return FpMatrix.zeros(p, 0, 0)
    p = blocks[0].p
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        out[r : r + b.rows, c : c + b.cols] = b.data
        r += b.rows
        c += b.cols
    return FpMatrix(p, out)


def kron(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    a._check_same_field(b)
    return FpMatrix(a.p, np.kron(a.data, b.data) % a.p)


# -- row reduction and solvers ------------------------------------------------

class RrefResult(NamedTuple):
    matrix: FpMatrix
    pivots: tuple[int, ...]
    rank: int


def rref(a: FpMatrix) -> RrefResult:
    """Reduced row echelon form over GF(p).

    Pivoting picks the first nonzero entry in column order, so the
    output (which is the unique RREF) is produced deterministically.

    Returns:
        RrefResult(matrix, pivots, rank) with rank == len(pivots).
    """
    p = a.p
    r = a.data.copy()
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        pr = row + int(nz[0])
        if pr != row:
            r[[row, pr]] = r[[pr, row]]
        inv = pow(int(r[row, col]), -1, p)
        r[row] = (r[row] * inv) % p
        others = np.nonzero(r[:, col])[0]
        others = others[others != row]
        if others.size:
            r[others] = (r[others] - np.outer(r[others, col], r[row])) % p
        pivots.append(col)
        row += 1
    return RrefResult(FpMatrix(p, r), tuple(pivots), len(pivots))


def solve_right(a: FpMatrix, b: FpMatrix) -> FpMatrix | None:
    """Particular solution X of A @ X = B, or None if none exists.

    Free variables are set to zero, so the answer is deterministic.
    Absence is definitive: this is an exact column-space membership test.
    """
    a._check_same_field(b)
    if a.rows != b.rows:
        raise ValueError(f"row mismatch: {a.shape} vs {b.shape}")
    aug = rref(hstack([a, b]))
    if any(col >= a.cols for col in aug.pivots):
        return None
    x = np.zeros((a.cols, b.cols), dtype=np.int64)
    for i, col in enumerate(aug.pivots):
        x[col] = aug.matrix.data[i, a.cols :]
    return FpMatrix(a.p, x)


def kernel_basis(a: FpMatrix) -> FpMatrix:
    """Matrix whose columns are the standard basis of ker(A).

    There is one column per non-pivot column of rref(A), in ascending
    column order; so kernel_basis(A).cols == A.cols - rank(A).
    """
    red = rref(a)
    p = a.p
    free = [j for j in range(a.cols) if j not in set(red.pivots)]
    k = np.zeros((a.cols, len(free)), dtype=np.int64)
    for t, f in enumerate(free):
        k[f, t] = 1
        for i, col in enumerate(red.pivots):
            k[col, t] = (-int(red.matrix.data[i, f])) % p
    return FpMatrix(p, k)


def invertible_combination(
    basis: Sequence[FpMatrix],
    seed: int = 0,
    max_trials: int = 256,
    exhaustive_threshold: int = EXHAUSTIVE_THRESHOLD,
) -> list[int] | None:
    """Coefficients c with sum(c[i] * basis[i]) invertible, or None.

    When p**span_dim <= exhaustive_threshold every combination (up to
    the span) is enumerated, so None is then a proof that the span
    contains no invertible matrix.  Otherwise seeded random sampling is
    used and None only means "not found within max_trials".
    """
    if not basis:
        return None
    p = basis[0].p
    n = basis[0].rows
    for m in basis:
        if m.p != p:
            raise ValueError("modulus mismatch in basis")
        if m.shape != (n, n):
            raise ValueError("basis matrices must all be square of one size")
    if n == 0:
        return [0] * len(basis)  # the empty matrix is invertible

    flat = np.array([m.data.reshape(-1) for m in basis], dtype=np.int64)
    # greedy independent subset, in input order
    independent: list[int] = []
    stacked = np.zeros((0, n * n), dtype=np.int64)
    current_rank = 0
    for i in range(len(basis)):
        cand = np.vstack([stacked, flat[i : i + 1]])
        r = rref(FpMatrix(p, cand)).rank
        if r > current_rank:
            independent.append(i)
            stacked = cand
            current_rank = r
    d = len(independent)
    if d == 0:
        return None  # span is {0}, and n > 0

    def is_invertible(coeffs: Sequence[int]) -> bool:
        acc = np.zeros((n, n), dtype=np.int64)
        for c, m in zip(coeffs, basis):
            if c:
                acc = (acc + c * m.data) % p
        return rref(FpMatrix(p, acc)).rank == n

    if p**d <= exhaustive_threshold:
        for combo in itertools.product(range(p), repeat=d):
            if not any(combo):
                continue
            coeffs = [0] * len(basis)
            for pos, c in zip(independent, combo):
                coeffs[pos] = c
            if is_invertible(coeffs):
                return coeffs
        return None

    rng = random.Random(seed)
    for _ in range(max_trials):
        coeffs = [rng.randrange(p) for _ in basis]
        if is_invertible(coeffs):
            return coeffs
    return None
