import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgv.fp_linalg import (
    FpMatrix,
    FpSubspace,
    RowSpace,
    check_prime,
    complement_reps,
    kernel,
    left_kernel_array,
    rank_array,
    rref,
    rref_array,
    solve,
    solve_array,
)


def all_vectors(n, p):
    return [np.array(v, dtype=np.int64) for v in itertools.product(range(p), repeat=n)]


def span_by_enumeration(rows, p):
    """Oracle: the set of all F_p-combinations of the given rows."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
    seen = set()
    for coeffs in itertools.product(range(p), repeat=rows.shape[0]):
        v = tuple((np.array(coeffs) @ rows) % p)
        seen.add(v)
    return seen


def test_rref_identity_f2():
    m = FpMatrix.identity(3, 2)
    R, rank, piv = rref(m)
    assert np.array_equal(R.a, np.eye(3, dtype=np.int64))
    assert rank == 3
    assert piv == [0, 1, 2]


def test_rref_single_row_f2():
    m = FpMatrix.from_rows([[1, 1]], 2)
    R, rank, piv = rref(m)
    assert np.array_equal(R.a, [[1, 1]])
    assert rank == 1 and piv == [0]


def test_rref_rank_matches_span_enumeration_f3():
    rng = np.random.default_rng(7)
    for _ in range(8):
        m = rng.integers(0, 3, size=(4, 4))
        rank = rank_array(m, 3)
        # Oracle: size of the row span equals 3^rank.
        assert len(span_by_enumeration(m, 3)) == 3**rank


def test_rref_idempotent():
    rng = np.random.default_rng(3)
    for p in (2, 3, 5):
        for _ in range(6):
            m = rng.integers(0, p, size=(5, 7))
            R1, piv1 = rref_array(m, p)
            R2, piv2 = rref_array(R1, p)
            assert np.array_equal(R1, R2) and piv1 == piv2


def test_kernel_forced_by_rank_nullity():
    k = kernel(FpMatrix.from_rows([[1, 1]], 2))
    assert k.dim == 1
    assert k.contains_vector([1, 1])
    k2 = kernel(FpMatrix.identity(2, 3))
    assert k2.dim == 0


def test_kernel_membership_exhaustive_f2():
    rng = np.random.default_rng(11)
    m = FpMatrix(2, rng.integers(0, 2, size=(3, 5)))
    k = kernel(m)
    members = {
        tuple(v) for v in all_vectors(5, 2) if not np.any((m.a @ v) % 2)
    }
    claimed = span_by_enumeration(k.basis.a, 2) if k.dim else {tuple([0] * 5)}
    assert members == claimed


def test_rank_nullity_random():
    rng = np.random.default_rng(5)
    for p in (2, 3, 5):
        for _ in range(10):
            m = FpMatrix(p, rng.integers(0, p, size=(4, 6)))
            _, rank, _ = rref(m)
            assert rank + kernel(m).dim == 6


def test_solve_identity():
    a = FpMatrix.identity(3, 5)
    b = np.array([4, 0, 2])
    assert np.array_equal(solve(a, b), b)


def test_solve_inconsistent():
    a = FpMatrix.from_rows([[1], [1]], 2)
    assert solve(a, [0, 1]) is None


def test_solve_consistent_f3_vs_enumeration():
    rng = np.random.default_rng(13)
    found = 0
    while found < 5:
        m = rng.integers(0, 3, size=(3, 3))
        x_true = rng.integers(0, 3, size=3)
        b = (m @ x_true) % 3
        x = solve_array(m, b, 3)
        assert x is not None
        assert np.array_equal((m @ x) % 3, b)
        # Oracle: x is among the full solution set enumerated over 27 vectors.
        sols = [v for v in all_vectors(3, 3) if np.array_equal((m @ v) % 3, b)]
        assert any(np.array_equal(x, v) for v in sols)
        found += 1


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_array(np.eye(2, dtype=np.int64), np.array([1, 2, 3]), 2)


def test_subspace_sum_with_zero():
    u = FpSubspace.from_rows([[1, 0, 1], [0, 1, 0]], 2)
    z = FpSubspace.zero(3, 2)
    assert u.sum(z) == u
    assert u.intersect(u) == u


def test_subspace_modular_law_f2_exhaustive():
    rng = np.random.default_rng(17)
    for _ in range(10):
        u = FpSubspace.from_rows(rng.integers(0, 2, size=(3, 6)), 2)
        v = FpSubspace.from_rows(rng.integers(0, 2, size=(3, 6)), 2)
        s = u.sum(v)
        i = u.intersect(v)
        assert s.dim + i.dim == u.dim + v.dim
        # Oracle: membership agreement by exhaustive enumeration.
        su = span_by_enumeration(u.basis.a, 2) if u.dim else {(0,) * 6}
        sv = span_by_enumeration(v.basis.a, 2) if v.dim else {(0,) * 6}
        inter = su & sv
        got = span_by_enumeration(i.basis.a, 2) if i.dim else {(0,) * 6}
        assert inter == got


def test_quotient_dim_requires_containment():
    u = FpSubspace.from_rows([[1, 0], [0, 1]], 2)
    v = FpSubspace.from_rows([[1, 1]], 2)
    assert u.quotient_dim(v) == 1
    with pytest.raises(ValueError):
        v.quotient_dim(u)


def test_rowspace_incremental_matches_batch():
    rng = np.random.default_rng(23)
    for p in (2, 3):
        rows = rng.integers(0, p, size=(12, 8))
        rs = RowSpace(p, 8)
        for i in range(0, 12, 3):
            rs.add(rows[i : i + 3])
        R, piv = rref_array(rows, p)
        assert np.array_equal(rs.basis, R[: len(piv)])


def test_complement_reps_extends_basis():
    sub = np.array([[1, 0, 0, 0]], dtype=np.int64)
    space = np.eye(4, dtype=np.int64)
    reps = complement_reps(sub, space, 2)
    assert reps.shape[0] == 3


def test_check_prime_rejects():
    for bad in (1, 4, 9, (1 << 15) + 1):
        with pytest.raises(ValueError):
            check_prime(bad)


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from([2, 3, 5]),
    st.integers(min_value=0, max_value=2**31 - 1),
)
def test_solve_exact_when_present(p, seed):
    rng = np.random.default_rng(seed)
    m = rng.integers(0, p, size=(4, 5))
    x = rng.integers(0, p, size=5)
    b = (m @ x) % p
    got = solve_array(m, b, p)
    assert got is not None
    assert np.array_equal((m @ got) % p, b)


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from([2, 3]),
    st.integers(min_value=0, max_value=2**31 - 1),
)
def test_left_kernel_annihilates(p, seed):
    rng = np.random.default_rng(seed)
    m = rng.integers(0, p, size=(5, 4))
    k = left_kernel_array(m, p)
    assert not np.any((k @ m) % p)
    assert k.shape[0] == 5 - rank_array(m, p)
