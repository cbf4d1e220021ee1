"""Scalar conventions and dense kernels shared by the rest of the package."""

from __future__ import annotations

import cmath
import math

import numpy as np

DEFAULT_TOL = 1e-10


class ConvergenceError(RuntimeError):
    """Raised when an iterative kernel exhausts its iteration budget."""

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


def principal_sqrt(c: complex) -> complex:
    """Square root ``sqrt(|c|) * exp(i*theta/2)`` with ``theta`` in ``[0, 2*pi)``.

    The branch puts ``sqrt(-1) = 1j``. Any fixed branch gives the same block
    encoding, since the preparation and unpreparation amplitudes multiply to
    the original value.
    """
    c = complex(c)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise ValueError(f"non-finite scalar {c!r}")
    r = abs(c)
    if r == 0.0:
        return 0j
    theta = math.atan2(c.imag, c.real)
    if theta < 0.0:
        theta += 2.0 * math.pi
    return math.sqrt(r) * cmath.exp(0.5j * theta)


def as_dense(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def is_power_of_two(k: int) -> bool:
    return k >= 1 and (k & (k - 1)) == 0


def unitarity_residual(M) -> float:
    M = as_dense(M)
    return float(np.max(np.abs(M.conj().T @ M - np.eye(M.shape[0]))))


def hermiticity_residual(M) -> float:
    M = as_dense(M)
    return float(np.max(np.abs(M - M.conj().T))) if M.size else 0.0


def is_unitary(M, tol: float = DEFAULT_TOL) -> bool:
    return unitarity_residual(M) <= tol


def is_hermitian(M, tol: float = DEFAULT_TOL) -> bool:
    return hermiticity_residual(M) <= tol


def spectral_norm(M, rtol: float = 1e-8, max_iter: int = 10_000, seed: int = 0) -> float:
    """Largest singular value by power iteration on ``M^H M``."""
    M = as_dense(M)
    if not np.any(M):
        return 0.0
    G = M.conj().T @ M
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(M.shape[0]) + 1j * rng.standard_normal(M.shape[0])
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(max_iter):
        w = G @ v
        norm_w = np.linalg.norm(w)
        if norm_w == 0.0:
            # start vector fell in the null space; restart from a basis vector
            v = np.zeros_like(v)
            v[int(np.argmax(np.linalg.norm(G, axis=0)))] = 1.0
            continue
        new_lam = float(np.real(np.vdot(v, w)))
        v = w / norm_w
        if abs(new_lam - lam) <= rtol * abs(new_lam):
            return math.sqrt(max(new_lam, 0.0))
        lam = new_lam
    raise ConvergenceError(
        f"power iteration did not converge in {max_iter} steps", last_iterate=math.sqrt(max(lam, 0.0))
    )


def frobenius_norm_dense(M) -> float:
    return float(np.linalg.norm(as_dense(M)))
