"""Dense complex matrix helpers for qutrit and two-qutrit operators.

Two-qutrit basis ordering is ``|ab> -> 3*a + b``: Alice's qutrit is the
slow (left) index everywhere in the package.
"""

from __future__ import annotations

import math

import numpy as np

QUTRIT_DIM = 3
PAIR_DIM = 9

OMEGA = complex(math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3))

#: cyclic shift, Y|k> = |k-1 mod 3>
SHIFT = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=np.complex128)
#: clock (phase) operator diag(1, w, w^2)
CLOCK = np.diag([1.0, OMEGA, OMEGA**2]).astype(np.complex128)


def _square(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    return a


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; entry ``(d2*i + k, d2*j + l)`` is ``a[i, j] * b[k, l]``."""
    a = _square(a, "a")
    b = _square(b, "b")
    return np.kron(a, b)


def dagger(a: np.ndarray) -> np.ndarray:
    return _square(a).conj().T


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def trace(a: np.ndarray) -> complex:
    return complex(np.trace(_square(a)))


def max_abs(a: np.ndarray) -> float:
    """Max-absolute-entry norm, the distance used for every tolerance check."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def basis_projector(index: int, dim: int = QUTRIT_DIM) -> np.ndarray:
    p = np.zeros((dim, dim), dtype=np.complex128)
    p[index, index] = 1.0
    return p
