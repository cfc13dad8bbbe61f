"""Finite-dimensional algebras over GF(p) given by structure constants.

An algebra is the data e_i * e_j = sum_k c[i][j][k] e_k plus a unit
vector; associativity and the unit axioms are checked exhaustively at
construction.  The Frobenius test searches for a linear functional
whose multiplication Gram matrix is invertible.
"""

from __future__ import annotations

import itertools
import random
from typing import Sequence

import numpy as np

from .fpmatrix import EXHAUSTIVE_THRESHOLD, FpMatrix, is_prime, rref
from .groups import GroupData


class AlgebraData:
    """Associative unital algebra over GF(p) in a fixed basis."""

    def __init__(self, p: int, structure, unit) -> None:
        p = int(p)
        if not is_prime(p) or not (2 <= p < 2**31):
            raise ValueError(f"invalid modulus {p}")
        c = np.asarray(structure, dtype=np.int64) % p
        if c.ndim != 3 or c.shape[0] != c.shape[1] or c.shape[1] != c.shape[2]:
            raise ValueError(f"structure constants must be (d, d, d), got {c.shape}")
        u = np.asarray(unit, dtype=np.int64) % p
        if u.shape != (c.shape[0],):
            raise ValueError("unit vector has wrong length")
        c.setflags(write=False)
        u.setflags(write=False)
        self.p = p
        self.dim = int(c.shape[0])
        self.structure = c
        self.unit = u
        self._validate()

    def _validate(self) -> None:
        c, p, d = self.structure, self.p, self.dim
        # (e_i e_j) e_k == e_i (e_j e_k), all basis triples
        left = np.einsum("ijm,mkl->ijkl", c, c) % p
        right = np.einsum("jkm,iml->ijkl", c, c) % p
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            raise ValueError(
                f"structure constants not associative at basis triple {tuple(bad[:3])}"
            )
        ident = np.eye(d, dtype=np.int64)
        if not np.array_equal(np.einsum("i,ijk->jk", self.unit, c) % p, ident):
            raise ValueError("unit fails as a left identity")
        if not np.array_equal(np.einsum("j,ijk->ik", self.unit, c) % p, ident):
            raise ValueError("unit fails as a right identity")

    def left_mult(self, vec) -> FpMatrix:
        """Matrix of left multiplication by the element with coordinates vec."""
        v = np.asarray(vec, dtype=np.int64) % self.p
        return FpMatrix(self.p, np.einsum("i,ijk->kj", v, self.structure))

    def basis_left_mults(self) -> list[FpMatrix]:
        return [
            FpMatrix(self.p, self.structure[i].T) for i in range(self.dim)
        ]

    def multiply(self, a, b) -> np.ndarray:
        av = np.asarray(a, dtype=np.int64) % self.p
        bv = np.asarray(b, dtype=np.int64) % self.p
        return np.einsum("i,j,ijk->k", av, bv, self.structure) % self.p

    def __repr__(self) -> str:
        return f"AlgebraData(p={self.p}, dim={self.dim})"


def group_algebra(group: GroupData, p: int) -> AlgebraData:
    """kG with basis indexed by the group elements in BFS order."""
    n = group.order
    c = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            c[i, j, group.mult(i, j)] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[0] = 1
    return AlgebraData(p, c, unit)


def truncated_polynomial_algebra(degree: int, p: int) -> AlgebraData:
    """k[x]/(x^degree) with basis 1, x, ..., x^(degree-1)."""
    c = np.zeros((degree, degree, degree), dtype=np.int64)
    for i in range(degree):
        for j in range(degree):
            if i + j < degree:
                c[i, j, i + j] = 1
    unit = np.zeros(degree, dtype=np.int64)
    unit[0] = 1
    return AlgebraData(p, c, unit)


def gram_matrix(algebra: AlgebraData, functional) -> FpMatrix:
    """Gram matrix (i, j) -> functional(e_i * e_j)."""
    lam = np.asarray(functional, dtype=np.int64) % algebra.p
    return FpMatrix(
        algebra.p, np.einsum("ijk,k->ij", algebra.structure, lam)
    )


def is_frobenius_algebra(
    algebra: AlgebraData,
    seed: int = 0,
    max_trials: int = 200,
    exhaustive_threshold: int = EXHAUSTIVE_THRESHOLD,
) -> np.ndarray | None:
    """A functional with nondegenerate multiplication form, or None.

    Tries the coordinate functionals first, then either enumerates all
    p**dim functionals (when that count is below the threshold, making
    a None answer a certificate) or falls back to seeded random search.
    """
    p, d = algebra.p, algebra.dim
    if d == 0:
        return np.zeros(0, dtype=np.int64)

    def good(lam) -> bool:
        return rref(gram_matrix(algebra, lam)).rank == d

    for t in range(d):
        lam = np.zeros(d, dtype=np.int64)
        lam[t] = 1
        if good(lam):
            return lam

    if p**d <= exhaustive_threshold:
        for combo in itertools.product(range(p), repeat=d):
            if not any(combo):
                continue
            lam = np.array(combo, dtype=np.int64)
            if good(lam):
                return lam
        return None

    rng = random.Random(seed)
    for _ in range(max_trials):
        lam = np.array([rng.randrange(p) for _ in range(d)], dtype=np.int64)
        if lam.any() and good(lam):
            return lam
    return None
