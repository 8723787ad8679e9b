import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from helpers import E, exact_matrices, to_sympy
from linrel import numkernel as nk
from linrel.numkernel import EXACT, FLOAT, TolerancePolicy
from linrel.scalars import gauss


# frozen examples, hand-derived


def test_rank_example():
    assert nk.rank(E([[1, 1], [1, 1]])) == 1
    assert nk.rank(np.array([[1, 1], [1, 1]], dtype=complex)) == 1


def test_nullspace_example():
    for M in (E([[1, 1]]), np.array([[1, 1]], dtype=complex)):
        N = nk.nullspace(M)
        assert N.shape == (2, 1)
        assert complex(N[0, 0]) == pytest.approx(-complex(N[1, 0]))
        assert nk.is_zero(M @ N)


def test_colspace_example():
    C = nk.colspace(E([[1, 2], [0, 0]]))
    assert C.shape == (2, 1) and list(C[:, 0]) == [1, 0]
    Cf = nk.colspace(np.array([[1, 2], [0, 0]], dtype=complex))
    assert abs(Cf[0, 0]) == pytest.approx(1.0) and abs(Cf[1, 0]) == pytest.approx(0.0)


@pytest.mark.parametrize("backend", [EXACT, FLOAT])
def test_psd_examples(backend):
    def M(rows):
        return nk.to_backend(E(rows), backend)

    assert not nk.is_hermitian_psd(M([[1, 2], [2, 1]]))
    assert nk.is_hermitian_psd(M([[2, 1], [1, 2]]))
    assert nk.is_hermitian_psd(M([[0, 0], [0, 0]]))
    assert nk.is_hermitian_psd(M([[1, 1], [1, 1]]))
    # zero pivot with a nonzero column
    assert not nk.is_hermitian_psd(M([[0, 1], [1, 0]]))
    # not Hermitian
    assert not nk.is_hermitian_psd(M([[1, 1], [0, 1]]))


def test_psd_complex_hermitian():
    H = np.array([[2, gauss(0, 1)], [gauss(0, -1), 2]], dtype=object)
    assert nk.is_hermitian_psd(H)
    H2 = np.array([[1, gauss(1, 1)], [gauss(1, -1), 1]], dtype=object)
    assert not nk.is_hermitian_psd(H2)
    assert not nk.is_hermitian_psd(nk.as_float(H2))


def test_psd_nonsquare_raises():
    with pytest.raises(ValueError):
        nk.is_hermitian_psd(E([[1, 2]]))


def test_solve_and_inverse():
    M = E([[2, 0], [0, 4]])
    assert list(nk.inverse(M).flat) == [mpq(1, 2), 0, 0, mpq(1, 4)]
    assert nk.solve(E([[1, 1], [1, 1]]), E([1, 2])) is None
    x = nk.solve(E([[1, 1], [0, 0]]), E([3, 0]))
    assert list(x) == [3, 0]
    with pytest.raises(np.linalg.LinAlgError):
        nk.inverse(E([[1, 1], [1, 1]]))


# oracle: sympy over Q(i)


@given(exact_matrices())
def test_rref_matches_sympy(M):
    R, piv = nk.rref(M)
    Rs, pivs = to_sympy(M).rref()
    assert tuple(piv) == tuple(pivs)
    assert (to_sympy(R) - Rs).is_zero_matrix


@given(exact_matrices())
def test_rank_nullity_and_oracle(M):
    r = nk.rank(M)
    assert r == to_sympy(M).rank()
    N = nk.nullspace(M)
    assert N.shape[1] == M.shape[1] - r
    assert nk.is_zero(M @ N)
    assert nk.rank(N) == N.shape[1]


@given(exact_matrices())
def test_float_rank_agrees(M):
    F = nk.as_float(M)
    assert nk.rank(F) == nk.rank(M)
    N = nk.nullspace(F)
    assert N.shape[1] == M.shape[1] - nk.rank(M)
    assert nk.is_zero(F @ N, scale=1.0 + np.abs(F).max())


@given(exact_matrices())
def test_colspace_idempotent(M):
    C = nk.colspace(M)
    assert np.array_equal(nk.colspace(C), C)
    assert nk.rank(np.concatenate([M, C], axis=1)) == nk.rank(M) == C.shape[1]


@given(exact_matrices(max_rows=4, max_cols=4))
def test_psd_gram_matrices(X):
    G = nk.conj_t(X) @ X
    assert nk.is_hermitian_psd(G)
    assert nk.is_hermitian_psd(nk.as_float(G))
    if nk.rank(G) > 0:
        assert not nk.is_hermitian_psd(-G)


@given(exact_matrices(min_rows=2, max_rows=4, min_cols=2, max_cols=4), st.integers(0, 3))
def test_solve_consistent(M, j):
    b = M[:, j % M.shape[1]]
    x = nk.solve(M, b)
    assert x is not None and all(v == 0 for v in (M @ x - b))
    xf = nk.solve(nk.as_float(M), nk.as_float(b))
    assert xf is not None


def test_tolerance_policy_frozen_defaults():
    pol = TolerancePolicy()
    assert (pol.rank_rel_tol, pol.psd_tol, pol.equality_tol) == (1e-10, 1e-9, 1e-9)
    with pytest.raises(Exception):
        pol.psd_tol = 1.0


def test_float_rank_threshold_scale():
    # a pure-noise block is rank zero when measured against unit scale
    noise = np.full((3, 3), 1e-13, dtype=complex)
    assert nk.rank(noise, scale=1.0) == 0
    assert nk.rank(noise) == 1
