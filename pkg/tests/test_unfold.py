import itertools

import numpy as np
import pytest

from kronkit import (
    BlockShape,
    ModeUnfolding,
    RangeError,
    ShapeError,
    hosvd,
    jacobi_svd,
    kron,
    matrix_to_tensor4,
    mode_fold,
    mode_mult,
    mode_unfold,
    multilinear_rank,
    rearrange,
)
from kronkit.dense import delinearize, fro_norm
from oracles import rel_err


def test_order2_unfoldings(rng):
    A = rng.standard_normal((3, 5))
    assert np.array_equal(mode_unfold(A, 0).matrix, A)
    assert np.array_equal(mode_unfold(A, 1).matrix, A.T)
    assert np.array_equal(mode_fold(ModeUnfolding(1, A.T, (3, 5))), A)


def test_mode1_example_2x2x2():
    x = np.arange(8.0)
    X = x.reshape(2, 2, 2, order="F")
    M = mode_unfold(X, 1).matrix
    assert M.shape == (2, 4)
    for j in range(2):
        for i1 in range(2):
            for i3 in range(2):
                assert M[j, i1 + i3 * 2] == x[i1 + j * 2 + i3 * 4]
    assert M[0].tolist() == [0, 1, 4, 5]


def test_unfolding_columns_are_fibers(rng):
    X = rng.standard_normal((3, 4, 2, 3))
    for k in range(4):
        U = mode_unfold(X, k)
        rest = X.shape[:k] + X.shape[k + 1:]
        for c in range(U.matrix.shape[1]):
            idx = list(delinearize(c, rest))
            idx.insert(k, slice(None))
            assert np.array_equal(U.matrix[:, c], X[tuple(idx)])
        assert fro_norm(U.matrix) == fro_norm(X)


def test_fold_roundtrip_exhaustive(rng):
    for dims in itertools.product(range(1, 4), range(1, 5), range(1, 3), range(1, 4)):
        X = rng.standard_normal(dims)
        for k in range(4):
            assert np.array_equal(mode_fold(mode_unfold(X, k)), X)
    Z = np.zeros((2, 3, 2))
    assert not np.any(mode_fold(mode_unfold(Z, 2)))


def test_mode_errors(rng):
    X = rng.standard_normal((2, 3))
    with pytest.raises(RangeError):
        mode_unfold(X, 2)
    with pytest.raises(ShapeError):
        mode_fold(ModeUnfolding(0, np.ones((2, 2)), (2, 3)))
    with pytest.raises(ShapeError):
        mode_mult(X, np.ones((4, 4)), 1)


def test_mode_mult(rng):
    X = rng.standard_normal((3, 4, 2))
    assert np.array_equal(mode_mult(X, np.eye(4), 1), X)
    A = rng.standard_normal((3, 5))
    M = rng.standard_normal((2, 3))
    assert rel_err(mode_mult(A, M, 0), M @ A) <= 1e-15
    M0, M1 = rng.standard_normal((5, 3)), rng.standard_normal((2, 4))
    a = mode_mult(mode_mult(X, M0, 0), M1, 1)
    b = mode_mult(mode_mult(X, M1, 1), M0, 0)
    assert a.shape == (5, 2, 2)
    assert rel_err(a, b) <= 1e-13
    # contract against an einsum oracle
    assert rel_err(a, np.einsum("ai,bj,ijk->abk", M0, M1, X)) <= 1e-13


def test_multilinear_rank(rng):
    vs = [rng.standard_normal(n) for n in (3, 4, 2, 5)]
    X = np.einsum("i,j,k,l->ijkl", *vs)
    assert multilinear_rank(X) == (1, 1, 1, 1)
    for _ in range(5):
        r = int(rng.integers(1, 4))
        A = rng.standard_normal((5, r)) @ rng.standard_normal((r, 6))
        assert multilinear_rank(A) == (r, r)
    S = np.zeros((2, 2, 2))
    S[0, 0, 0] = S[1, 1, 1] = 1
    for k in range(3):
        assert np.linalg.matrix_rank(mode_unfold(S, k).matrix) == 2
    assert multilinear_rank(S) == (2, 2, 2)


def test_multilinear_rank_of_kron_data(rng):
    for _ in range(10):
        rb, rc = rng.integers(1, 3, 2)
        B = rng.standard_normal((3, rb)) @ rng.standard_normal((rb, 3))
        C = rng.standard_normal((2, rc)) @ rng.standard_normal((rc, 4))
        K = kron(B, C)
        assert multilinear_rank(K) == (rb * rc, rb * rc)


def test_kronecker_bridge(rng):
    for _ in range(30):
        shape = BlockShape(*(int(v) for v in rng.integers(1, 4, 4)))
        A = rng.standard_normal(shape.host_shape)
        T4 = matrix_to_tensor4(A, shape)
        grouped = T4.reshape(shape.p * shape.q, shape.m * shape.n, order="F").T
        assert np.array_equal(rearrange(A, shape), grouped)


def test_hosvd_full_target_is_exact(rng):
    for dims in [(3, 4, 3), (2, 2, 2), (5, 2, 2), (4, 1, 3)]:
        X = rng.standard_normal(dims)
        res = hosvd(X, dims)
        assert res.error <= 1e-10 * fro_norm(X)
        assert res.core.shape == dims
        for U in res.factors:
            assert np.max(np.abs(U.T @ U - np.eye(U.shape[1]))) <= 1e-12


def test_hosvd_rank1(rng):
    X = np.einsum("i,j,k->ijk", *(rng.standard_normal(n) for n in (3, 4, 3)))
    res = hosvd(X, (1, 1, 1))
    assert res.error <= 1e-10 * fro_norm(X)


def test_hosvd_truncation_bounds(rng):
    for _ in range(10):
        X = rng.standard_normal((3, 4, 3))
        target = (2, 2, 2)
        res = hosvd(X, target)
        tails = []
        for k, r in enumerate(target):
            s = np.linalg.svd(mode_unfold(X, k).matrix, compute_uv=False)
            tails.append(np.sum(s[r:] ** 2))
        assert res.error**2 <= sum(tails) * (1 + 1e-9)
        assert res.error >= np.sqrt(max(tails)) - 1e-9
        assert res.error == pytest.approx(fro_norm(X - res.reconstruct()), rel=1e-12)


def test_hosvd_exact_at_multilinear_rank(rng):
    core = rng.standard_normal((2, 1, 2))
    X = np.einsum("abc,ia,jb,kc->ijk", core, *(rng.standard_normal((n, r)) for n, r in ((4, 2), (3, 1), (3, 2))))
    ml = multilinear_rank(X)
    assert ml == (2, 1, 2)
    assert hosvd(X, ml).error <= 1e-10 * fro_norm(X)
    assert hosvd(X, (3, 2, 2)).error <= 1e-10 * fro_norm(X)


def test_hosvd_range_errors(rng):
    X = rng.standard_normal((2, 3))
    with pytest.raises(RangeError):
        hosvd(X, (0, 1))
    with pytest.raises(RangeError):
        hosvd(X, (2, 4))
    with pytest.raises(RangeError):
        hosvd(X, (1,))


def test_hosvd_factors_are_leading_singular_vectors(rng):
    X = rng.standard_normal((4, 3, 5))
    res = hosvd(X, (2, 3, 2))
    for k, U in enumerate(res.factors):
        ref = jacobi_svd(mode_unfold(X, k).matrix).u[:, : U.shape[1]]
        assert np.array_equal(U, ref)
