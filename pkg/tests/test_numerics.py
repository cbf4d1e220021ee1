import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dictblock.circuit import H, X
from dictblock.numerics import (ConvergenceError, hermiticity_residual, is_hermitian, is_unitary,
                                principal_sqrt, spectral_norm, unitarity_residual)

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize("c, want", [(4, 2), (-1, 1j), (-4, 2j), (0, 0), (1j, cmath.exp(0.25j * np.pi))])
def test_principal_sqrt_examples(c, want):
    assert abs(principal_sqrt(c) - want) < 1e-15


def test_principal_sqrt_branch_lower_half_plane():
    # theta in [0, 2pi): -1j has theta = 3pi/2, so the root sits in the second quadrant
    r = principal_sqrt(-1j)
    assert r.real < 0 < r.imag


def test_principal_sqrt_rejects_nan():
    with pytest.raises(ValueError):
        principal_sqrt(complex("nan"))


@given(finite, finite)
def test_principal_sqrt_squares_back(re, im):
    c = complex(re, im)
    r = principal_sqrt(c)
    assert abs(r * r - c) <= 1e-12 * max(1.0, abs(c))
    assert abs(r * r.conjugate() - abs(c)) <= 1e-12 * max(1.0, abs(c))


def test_is_unitary_examples():
    assert is_unitary(np.eye(4))
    assert not is_unitary(np.diag([1, 2]))
    assert is_unitary(H)


def test_is_hermitian_examples(rng):
    assert is_hermitian(X)
    assert not is_hermitian(np.array([[0, 1], [0, 0]]))
    S = rng.normal(size=(5, 5))
    assert is_hermitian(S + S.T)


def test_residuals_match_bruteforce(rng):
    for _ in range(20):
        M = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        brute_u = max(abs((M.conj().T @ M)[i, j] - (i == j)) for i in range(4) for j in range(4))
        brute_h = max(abs(M[i, j] - np.conj(M[j, i])) for i in range(4) for j in range(4))
        assert abs(unitarity_residual(M) - brute_u) < 1e-12
        assert abs(hermiticity_residual(M) - brute_h) < 1e-12


@pytest.mark.parametrize("M, want", [(np.diag([3, -5]), 5.0), (np.eye(3), 1.0), ([[0, 2], [0, 0]], 2.0)])
def test_spectral_norm_examples(M, want):
    assert abs(spectral_norm(M) - want) < 1e-7


def test_spectral_norm_matches_svd_and_frobenius_bound(rng):
    for _ in range(10):
        M = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        s = spectral_norm(M)
        assert abs(s - np.linalg.svd(M, compute_uv=False)[0]) < 1e-6 * s
        assert s <= np.linalg.norm(M) + 1e-12


def test_spectral_norm_nonconvergence_carries_iterate():
    # two nearly equal top singular values converge slowly
    M = np.diag([1.0, 1.0 - 1e-9, 0.5])
    with pytest.raises(ConvergenceError) as info:
        spectral_norm(M, rtol=1e-16, max_iter=3)
    assert info.value.last_iterate is not None
