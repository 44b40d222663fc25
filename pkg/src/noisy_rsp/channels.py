"""Single-qutrit noise channels, their two-qutrit lifts and application."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product

import numpy as np

from noisy_rsp.linalg import CLOCK, PAIR_DIM, QUTRIT_DIM, SHIFT, max_abs

#: construction-time completeness tolerance
COMPLETENESS_TOL = 1e-12


class ChannelKind(enum.Enum):
    AMPLITUDE_DAMPING = "ad"
    PHASE_DAMPING = "pd"
    DEPOLARIZING = "dep"
    NOISELESS = "none"

    @classmethod
    def parse(cls, value: "str | ChannelKind") -> "ChannelKind":
        """Accept an enum member or a case-insensitive CLI name (``ad``, ``pd``, ``dep``, ``none``)."""
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        for kind in cls:
            if kind.value == key or kind.name.lower() == key:
                return kind
        names = ", ".join(k.value for k in cls)
        raise ValueError(f"unknown channel {value!r}; expected one of {names}")


NOISY_KINDS = (
    ChannelKind.AMPLITUDE_DAMPING,
    ChannelKind.DEPOLARIZING,
    ChannelKind.PHASE_DAMPING,
)


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Ordered Kraus operators of one channel at one noise level.

    ``operators`` has shape ``(n, dim, dim)`` and is read-only.
    """

    operators: np.ndarray
    alpha: float
    kind: ChannelKind

    def __post_init__(self):
        ops = np.array(self.operators, dtype=np.complex128)
        if ops.ndim != 3 or ops.shape[1] != ops.shape[2]:
            raise ValueError(f"Kraus operators must have shape (n, d, d), got {ops.shape}")
        ops.setflags(write=False)
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self) -> int:
        return self.operators.shape[1]

    def __len__(self) -> int:
        return self.operators.shape[0]

    def __iter__(self):
        return iter(self.operators)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "alpha": self.alpha,
            "dim": self.dim,
            "operators": [
                {"re": op.real.tolist(), "im": op.imag.tolist()} for op in self.operators
            ],
        }


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"noise parameter alpha must lie in [0, 1], got {alpha}")
    return alpha


def amplitude_damping_kraus(alpha: float) -> KrausSet:
    alpha = _check_alpha(alpha)
    e0 = np.diag([1.0, np.sqrt(1 - alpha), np.sqrt(1 - alpha)])
    e1 = np.zeros((3, 3))
    e1[0, 1] = np.sqrt(alpha)
    e2 = np.zeros((3, 3))
    e2[0, 2] = np.sqrt(alpha)
    return KrausSet(np.stack([e0, e1, e2]), alpha, ChannelKind.AMPLITUDE_DAMPING)


def phase_damping_kraus(alpha: float) -> KrausSet:
    alpha = _check_alpha(alpha)
    e0 = np.sqrt(1 - alpha) * np.eye(3)
    e1 = np.sqrt(alpha) * CLOCK
    return KrausSet(np.stack([e0, e1]), alpha, ChannelKind.PHASE_DAMPING)


def depolarizing_words() -> list[np.ndarray]:
    """The eight non-identity shift/clock words in Kraus order."""
    y, z = SHIFT, CLOCK
    y2, z2 = y @ y, z @ z
    return [y, z, y2, y @ z, y2 @ z, y @ z2, y2 @ z2, z2]


def depolarizing_kraus(alpha: float) -> KrausSet:
    # weight alpha/8 per word as published; not renormalised to the fully depolarising map
    alpha = _check_alpha(alpha)
    w = np.sqrt(alpha / 8)
    ops = [np.sqrt(1 - alpha) * np.eye(3)] + [w * word for word in depolarizing_words()]
    return KrausSet(np.stack(ops), alpha, ChannelKind.DEPOLARIZING)


def noiseless_kraus(alpha: float = 0.0) -> KrausSet:
    alpha = _check_alpha(alpha)
    return KrausSet(np.eye(3)[None], alpha, ChannelKind.NOISELESS)


_BUILDERS = {
    ChannelKind.AMPLITUDE_DAMPING: amplitude_damping_kraus,
    ChannelKind.PHASE_DAMPING: phase_damping_kraus,
    ChannelKind.DEPOLARIZING: depolarizing_kraus,
    ChannelKind.NOISELESS: noiseless_kraus,
}


def single_qutrit_kraus(kind: "ChannelKind | str", alpha: float) -> KrausSet:
    return _BUILDERS[ChannelKind.parse(kind)](alpha)


def lift_two_qutrit(k: KrausSet) -> KrausSet:
    """All ordered products ``E_i (x) E_j``; ``n`` operators become ``n**2``."""
    if k.dim != QUTRIT_DIM:
        raise ValueError(f"expected single-qutrit Kraus set, got dim {k.dim}")
    lifted = [np.kron(a, b) for a, b in product(k.operators, repeat=2)]
    return KrausSet(np.stack(lifted), k.alpha, k.kind)


def kraus_set(kind: "ChannelKind | str", alpha: float) -> KrausSet:
    """Two-qutrit Kraus set for ``kind`` at noise level ``alpha``."""
    return lift_two_qutrit(single_qutrit_kraus(kind, alpha))


def check_completeness(k: "KrausSet | np.ndarray") -> float:
    """Max-absolute-entry residual of ``sum_k E_k^dag E_k - I``."""
    ops = k.operators if isinstance(k, KrausSet) else np.asarray(k, dtype=np.complex128)
    if ops.ndim == 2:
        ops = ops[None]
    total = np.einsum("kji,kjl->il", ops.conj(), ops)
    return max_abs(total - np.eye(ops.shape[1]))


def apply_channel(rho: np.ndarray, k: KrausSet) -> np.ndarray:
    """``sum_k E_k rho E_k^dag``.

    ``rho`` may also be a stack of shape ``(m, d, d)``; the channel is then
    applied to each state.
    """
    residual = check_completeness(k)
    if residual > COMPLETENESS_TOL:
        raise ValueError(f"Kraus set is not complete (residual {residual:.3e})")
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape[-1] != k.dim or rho.shape[-2] != k.dim:
        raise ValueError(f"state of shape {rho.shape} does not match Kraus dim {k.dim}")
    ops = k.operators
    if rho.ndim == 2:
        return np.einsum("kij,jl,kml->im", ops, rho, ops.conj(), optimize=True)
    return np.einsum("kij,njl,kml->nim", ops, rho, ops.conj(), optimize=True)


__all__ = [
    "COMPLETENESS_TOL",
    "ChannelKind",
    "KrausSet",
    "NOISY_KINDS",
    "PAIR_DIM",
    "amplitude_damping_kraus",
    "apply_channel",
    "check_completeness",
    "depolarizing_kraus",
    "depolarizing_words",
    "kraus_set",
    "lift_two_qutrit",
    "noiseless_kraus",
    "phase_damping_kraus",
    "single_qutrit_kraus",
]
