"""Input checks shared by the estimator, the game pipeline and the CLI."""

from __future__ import annotations

import math

import numpy as np

from noisy_rsp.linalg import max_abs

ANGLE_MAX = math.pi / 2
#: slack for angles produced by floating grids (e.g. k * pi/20)
ANGLE_SLACK = 1e-12

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-10


def check_alpha(alpha) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"noise parameter alpha must lie in [0, 1], got {alpha}")
    return alpha


def check_angle(value, name: str = "angle") -> float:
    value = float(value)
    if not -ANGLE_SLACK <= value <= ANGLE_MAX + ANGLE_SLACK:
        raise ValueError(f"{name} must lie in [0, pi/2], got {value}")
    return min(max(value, 0.0), ANGLE_MAX)


def check_density_matrix(rho, dim: int | None = None) -> np.ndarray:
    """Return ``rho`` as a complex array after checking it is a valid state.

    Raises ``ValueError`` if it is not square, not Hermitian, not unit trace or
    has an eigenvalue below ``-POSITIVITY_TOL``.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if dim is not None and rho.shape[0] != dim:
        raise ValueError(f"expected a {dim}x{dim} density matrix, got {rho.shape}")
    if max_abs(rho - rho.conj().T) > HERMITIAN_TOL:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > TRACE_TOL:
        raise ValueError(f"density matrix trace is {np.trace(rho).real}, expected 1")
    if np.linalg.eigvalsh(rho).min() < -POSITIVITY_TOL:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def check_probability_vector(p, size: int = 3, tol: float = 1e-12) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (size,):
        raise ValueError(f"expected a probability vector of length {size}, got shape {p.shape}")
    if np.any(p < -tol) or abs(p.sum() - 1.0) > tol:
        raise ValueError(f"{p.tolist()} is not on the probability simplex")
    return p


def check_points(X) -> np.ndarray:
    """Validate an ``(n, 5)`` array of ``(x1, y1, x2, y2, alpha)`` rows."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != 5:
        raise ValueError(f"expected shape (n_samples, 5) with columns x1, y1, x2, y2, alpha; got {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("input contains NaN or infinity")
    angles = X[:, :4]
    if np.any(angles < -ANGLE_SLACK) or np.any(angles > ANGLE_MAX + ANGLE_SLACK):
        raise ValueError("strategy angles must lie in [0, pi/2]")
    if np.any(X[:, 4] < 0) or np.any(X[:, 4] > 1):
        raise ValueError("alpha must lie in [0, 1]")
    X = X.copy()
    X[:, :4] = np.clip(angles, 0.0, ANGLE_MAX)
    return X
