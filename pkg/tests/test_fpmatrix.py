import itertools
import random

import numpy as np
import pytest

from mstable.fpmatrix import (
    FpMatrix,
    block_diag,
    hstack,
    invertible_combination,
    kernel_basis,
    kron,
    rref,
    solve_right,
    vstack,
)


def random_matrix(rng, p, rows, cols):
    data = np.array(
        [rng.randrange(p) for _ in range(rows * cols)], dtype=np.int64
    ).reshape(rows, cols)
    return FpMatrix(p, data)


def test_constructor_validates_modulus():
    with pytest.raises(ValueError):
        FpMatrix(4, [[1]])
    with pytest.raises(ValueError):
        FpMatrix(1, [[1]])
    with pytest.raises(ValueError):
        FpMatrix(2**31 + 11, [[1]])


def test_entries_reduced():
    m = FpMatrix(3, [[4, -1], [9, 7]])
    assert m.to_lists() == [[1, 2], [0, 1]]


def test_immutable():
    m = FpMatrix(2, [[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        m.data[0, 0] = 0
    with pytest.raises(AttributeError):
        m.p = 3


# -- rref ----------------------------------------------------------------------

def test_rref_rank_one_hand_example():
    # [[1,1],[1,1]] over GF(2): subtract row 0 from row 1 by hand -> rank 1
    r = rref(FpMatrix(2, [[1, 1], [1, 1]]))
    assert r.rank == 1
    assert r.pivots == (0,)
    assert r.matrix.to_lists() == [[1, 1], [0, 0]]


def test_rref_empty_matrix():
    r = rref(FpMatrix.zeros(5, 0, 0))
    assert r.rank == 0
    assert r.pivots == ()


def test_rref_identity():
    for p in (2, 3, 7):
        for n in (1, 3, 5):
            r = rref(FpMatrix.identity(p, n))
            assert r.rank == n
            assert r.matrix.is_identity()


def test_rref_idempotent_random():
    rng = random.Random(11)
    for _ in range(60):
        p = rng.choice([2, 3, 5, 7])
        a = random_matrix(rng, p, rng.randrange(6), rng.randrange(6))
        r = rref(a).matrix
        assert rref(r).matrix == r


# -- solve_right ---------------------------------------------------------------

def test_solve_identity_returns_rhs():
    b = FpMatrix(3, [[2, 1], [0, 2]])
    x = solve_right(FpMatrix.identity(3, 2), b)
    assert x == b


def test_solve_inconsistent_returns_none():
    # rank of A is 1, rank of [A|b] is 2 by hand
    a = FpMatrix(2, [[1, 1], [1, 1]])
    b = FpMatrix(2, [[1], [0]])
    assert solve_right(a, b) is None


def test_solve_involution_inverse():
    # A = [[1,1],[0,1]] over GF(2) squares to the identity
    a = FpMatrix(2, [[1, 1], [0, 1]])
    x = solve_right(a, FpMatrix.identity(2, 2))
    assert x == a


def test_solve_mismatch_errors():
    with pytest.raises(ValueError):
        solve_right(FpMatrix.identity(2, 2), FpMatrix.identity(3, 2))
    with pytest.raises(ValueError):
        solve_right(FpMatrix.identity(2, 2), FpMatrix.identity(2, 3))


def test_solve_soundness_random():
    rng = random.Random(5)
    for _ in range(80):
        p = rng.choice([2, 3, 5])
        a = random_matrix(rng, p, rng.randrange(1, 5), rng.randrange(1, 5))
        b = random_matrix(rng, p, a.rows, rng.randrange(1, 3))
        x = solve_right(a, b)
        if x is not None:
            assert a @ x == b


def test_solve_completeness_exhaustive_gf2():
    # every 2x2 system over GF(2), checked against brute-force enumeration
    for a_bits in itertools.product(range(2), repeat=4):
        a = FpMatrix(2, [list(a_bits[:2]), list(a_bits[2:])])
        for b_bits in itertools.product(range(2), repeat=2):
            b = FpMatrix(2, [[b_bits[0]], [b_bits[1]]])
            brute = any(
                a @ FpMatrix(2, [[x0], [x1]]) == b
                for x0 in range(2)
                for x1 in range(2)
            )
            assert (solve_right(a, b) is not None) == brute


# -- kernel_basis ----------------------------------------------------------------

def test_kernel_of_identity_is_empty():
    assert kernel_basis(FpMatrix.identity(7, 4)).cols == 0


def test_kernel_of_zero_map():
    k = kernel_basis(FpMatrix.zeros(5, 2, 2))
    assert k.cols == 2
    assert rref(k).rank == 2


def test_kernel_hand_example():
    k = kernel_basis(FpMatrix(2, [[1, 1]]))
    assert k.to_lists() == [[1], [1]]


def test_rank_nullity_random():
    rng = random.Random(7)
    for _ in range(80):
        p = rng.choice([2, 3, 5, 7])
        a = random_matrix(rng, p, rng.randrange(6), rng.randrange(6))
        k = kernel_basis(a)
        assert a.rank() + k.cols == a.cols
        if k.cols and a.rows:
            assert (a @ k).is_zero()
        assert k.rank() == k.cols


# -- invertible_combination ------------------------------------------------------

def test_combination_identity_basis():
    c = invertible_combination([FpMatrix.identity(2, 2)], seed=0)
    assert c == [1]


def test_combination_nilpotent_is_certified_absent():
    n = FpMatrix(3, [[0, 1], [0, 0]])
    assert invertible_combination([n], seed=0) is None


def test_combination_diagonal_units():
    e11 = FpMatrix(2, [[1, 0], [0, 0]])
    e22 = FpMatrix(2, [[0, 0], [0, 1]])
    assert invertible_combination([e11, e22], seed=0) == [1, 1]


def test_combination_empty_basis_absent():
    assert invertible_combination([], seed=0) is None


def test_combination_deterministic_and_sound():
    rng = random.Random(3)
    for trial in range(30):
        p = rng.choice([2, 3, 5])
        n = rng.randrange(1, 4)
        basis = [random_matrix(rng, p, n, n) for _ in range(rng.randrange(1, 4))]
        c1 = invertible_combination(basis, seed=trial)
        c2 = invertible_combination(basis, seed=trial)
        assert c1 == c2
        if c1 is not None:
            acc = FpMatrix.zeros(p, n, n)
            for coeff, m in zip(c1, basis):
                acc = acc + m.scale(coeff)
            assert acc.rank() == n


# -- arithmetic helpers ----------------------------------------------------------

def test_matmul_large_prime_chunked():
    p = 2**31 - 1  # Mersenne prime; forces the chunked accumulation path
    a = FpMatrix(p, [[p - 1, p - 2, 1], [3, p - 1, 0]])
    b = FpMatrix(p, [[p - 1], [p - 1], [5]])
    # oracle: plain python integers
    expected = [
        [((p - 1) * (p - 1) + (p - 2) * (p - 1) + 5) % p],
        [(3 * (p - 1) + (p - 1) * (p - 1)) % p],
    ]
    assert (a @ b).to_lists() == expected


def test_stacking_and_kron():
    a = FpMatrix(3, [[1, 2]])
    b = FpMatrix(3, [[0, 1]])
    assert vstack([a, b]).to_lists() == [[1, 2], [0, 1]]
    assert hstack([a, b]).to_lists() == [[1, 2, 0, 1]]
    assert block_diag([a, b]).to_lists() == [[1, 2, 0, 0], [0, 0, 0, 1]]
    assert kron(FpMatrix.identity(3, 2), a).to_lists() == [
        [1, 2, 0, 0],
        [0, 0, 1, 2],
    ]


def test_inverse():
    a = FpMatrix(5, [[2, 1], [1, 1]])
    inv = a.inverse()
    assert inv is not None
    assert (a @ inv).is_identity()
    assert FpMatrix(5, [[1, 1], [2, 2]]).inverse() is None
