import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from modcartan.errors import DimensionError, FieldMismatchError
from modcartan.exactfield import (
    FpMatrix,
    PrimeField,
    available_backends,
    is_prime,
    kernel_basis,
    quotient_dim,
    rank,
    solve,
)
from modcartan.exactfield.kernels import rref_inplace

PRIMES = [5, 7, 101, 2_147_483_647]


def random_sparse(rng, p, m, n, density):
    M = sp.random(m, n, density=density, format="csr", random_state=rng, data_rvs=lambda k: rng.integers(1, p, k))
    return FpMatrix.from_scipy(p, M)


def dense_rank(A, p):
    A = np.array(A, dtype=np.int64) % p
    return len(rref_inplace(np.ascontiguousarray(A), p, backend="python"))


def test_small_example():
    M = FpMatrix.from_dense(5, [[1, 2], [2, 4]])
    assert rank(M) == 1
    K = kernel_basis(M).vectors()
    assert K.shape == (1, 2)
    assert not (M.to_dense() @ K[0] % 5).any()


def test_identity_and_zero():
    assert FpMatrix.identity(7, 6).rank() == 6
    Z = FpMatrix.zeros(7, 3, 4)
    assert Z.rank() == 0
    assert Z.kernel_basis().dim == 4


def test_quotient_dim():
    R = FpMatrix.from_dense(5, [[1, 1, 0], [2, 2, 0]])
    assert quotient_dim(3, R) == 2
    with pytest.raises(DimensionError):
        quotient_dim(4, R)


def test_solve():
    M = FpMatrix.from_dense(7, [[1, 2, 0], [0, 1, 1]])
    x = solve(M, np.array([3, 4]))
    assert np.array_equal(M.to_dense() @ x % 7, [3, 4])
    assert solve(FpMatrix.from_dense(7, [[1, 1], [2, 2]]), np.array([1, 0])) is None


@pytest.mark.parametrize("p", [5, 7, 101])
def test_rank_nullity_random(p):
    rng = np.random.default_rng(p)
    for _ in range(1000):
        m, n = rng.integers(1, 25, 2)
        M = random_sparse(rng, p, m, n, rng.uniform(0.05, 0.6))
        r = M.rank()
        K = M.kernel_basis()
        assert r + K.dim == n
        if K.dim:
            assert not (M.to_dense() @ K.vectors().T % p).any()


@pytest.mark.parametrize("p", PRIMES)
def test_sparse_matches_dense(p):
    rng = np.random.default_rng(0)
    for shape, dens in [((200, 150), 0.02), ((90, 300), 0.05), ((120, 120), 0.5)]:
        M = random_sparse(rng, p, *shape, dens)
        assert M.rank() == dense_rank(M.to_dense(), p)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([5, 7, 13]))
def test_row_operations_preserve_rank(seed, p):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, p, (8, 10)) * (rng.random((8, 10)) < 0.4)
    M = FpMatrix.from_dense(p, A)
    perm = rng.permutation(8)
    scale = rng.integers(1, p, 8)
    N = FpMatrix.from_dense(p, (A[perm] * scale[:, None]) % p)
    assert M.rank() == N.rank()
    R, piv = M.rref()
    R2, piv2 = R.rref()
    assert R == R2 and piv == piv2


@pytest.mark.skipif("cython" not in available_backends(), reason="extension not built")
def test_backends_agree():
    rng = np.random.default_rng(3)
    for p in (5, 7, 2_147_483_647):
        A = rng.integers(0, p, (60, 80), dtype=np.int64)
        A[rng.random(A.shape) < 0.6] = 0
        A[30:] = (A[:30] * 3) % p
        X, Y = A.copy(), A.copy()
        assert list(rref_inplace(X, p, backend="python")) == list(rref_inplace(Y, p, backend="cython"))
        assert np.array_equal(X, Y)


class TestField:
    def test_rejects(self):
        for bad in (2, 3, 9, 2**31 + 11):
            with pytest.raises(ValueError):
                PrimeField(bad)

    def test_primality(self):
        assert is_prime(2_147_483_647) and not is_prime(2_147_483_649)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(), st.integers(), st.integers(), st.sampled_from([5, 7, 101]))
    def test_axioms(self, a, b, c, p):
        F = PrimeField(p)
        x, y, z = F(a), F(b), F(c)
        assert (x + y) * z == x * z + y * z
        assert (x * y) * z == x * (y * z)
        assert x + F(0) == x and x * F(1) == x
        if x != F(0):
            assert x * x.inverse() == F(1)

    def test_mixing_fields(self):
        with pytest.raises(FieldMismatchError):
            PrimeField(5)(1) + PrimeField(7)(1)
        with pytest.raises(FieldMismatchError):
            FpMatrix.identity(5, 2) @ FpMatrix.identity(7, 2)


@pytest.mark.parametrize("p", [5, 7, 2_147_483_647])
def test_sparse_path_kernel(p):
    rng = np.random.default_rng(11)
    for shape, dens in [((300, 200), 0.01), ((150, 400), 0.01), ((500, 300), 0.006)]:
        M = random_sparse(rng, p, *shape, dens)
        K = M.kernel_basis()
        assert M.rank() + K.dim == shape[1]
        assert K.dim == shape[1] - dense_rank(M.to_dense(), p)
        if K.dim:
            V = K.vectors()
            assert not (M @ FpMatrix.from_dense(p, V.T)).to_dense().any()
