"""The entangled two-qutrit Rock-Scissors-Paper game.

Pipeline: maximally entangled initial state, noise channel on both qutrits,
then each player's strategy unitary, then expectation of the diagonal payoff
operators.
"""

from __future__ import annotations

import enum
import functools
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from noisy_rsp.channels import ChannelKind, apply_channel, kraus_set
from noisy_rsp.linalg import PAIR_DIM, max_abs
from noisy_rsp.validation import check_alpha, check_angle, check_probability_vector

UNITARITY_TOL = 1e-12
STRATEGY_NAMES = ("R", "S", "P")


class Player(enum.Enum):
    ALICE = "alice"
    BOB = "bob"


@dataclass(frozen=True)
class StrategyParams:
    """A player's ``(x, y)`` angles, both in ``[0, pi/2]`` radians."""

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", check_angle(self.x, "x"))
        object.__setattr__(self, "y", check_angle(self.y, "y"))


@dataclass(frozen=True)
class PayoffResult:
    alice: float
    bob: float

    def __iter__(self):
        yield self.alice
        yield self.bob


@dataclass(frozen=True, eq=False)
class PayoffMatrix:
    """3x3 bimatrix; ``entries[i, j] = (alice, bob)`` for Alice playing row ``i``.

    Rows and columns follow the R, S, P order.
    """

    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=float)
        if e.shape != (3, 3, 2):
            raise ValueError(f"payoff matrix must have shape (3, 3, 2), got {e.shape}")
        if not np.all(np.isfinite(e)):
            raise ValueError("payoff matrix entries must be finite")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    def __eq__(self, other):
        if not isinstance(other, PayoffMatrix):
            return NotImplemented
        return bool(np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash(self.entries.tobytes())

    @classmethod
    def rsp(cls) -> "PayoffMatrix":
        """Win +1, lose -1, tie 0, with R > S > P > R."""
        alice = np.array([[0, 1, -1], [-1, 0, 1], [1, -1, 0]], dtype=float)
        return cls(np.stack([alice, -alice], axis=-1))

    @classmethod
    def from_json(cls, doc) -> "PayoffMatrix":
        """Build from a 3x3 array of ``[alice, bob]`` pairs or ``{"payoff_matrix": ...}``."""
        if isinstance(doc, dict):
            if "payoff_matrix" not in doc:
                raise ValueError('config object must contain a "payoff_matrix" key')
            doc = doc["payoff_matrix"]
        try:
            return cls(np.asarray(doc, dtype=float))
        except (TypeError, ValueError) as exc:
            raise ValueError(f"invalid payoff matrix: {exc}") from exc

    @classmethod
    def load(cls, path: "str | Path") -> "PayoffMatrix":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> list:
        return self.entries.tolist()

    @property
    def alice(self) -> np.ndarray:
        return self.entries[..., 0]

    @property
    def bob(self) -> np.ndarray:
        return self.entries[..., 1]

    def for_player(self, player: "Player | str") -> np.ndarray:
        return self.entries[..., 0 if Player(player) is Player.ALICE else 1]

    @property
    def is_zero_sum(self) -> bool:
        return bool(np.all(self.alice + self.bob == 0))

    def is_cyclic_dominance(self) -> bool:
        """Each strategy beats the next one cyclically (R>S, S>P, P>R) for Alice."""
        a = self.alice
        return all(a[i, (i + 1) % 3] > a[(i + 1) % 3, i] for i in range(3))


TABLE_1 = PayoffMatrix.rsp()


def initial_state() -> np.ndarray:
    """Density matrix of ``(|00> + |11> + |22>) / sqrt(3)``."""
    psi = np.zeros(PAIR_DIM, dtype=np.complex128)
    psi[[0, 4, 8]] = 1 / math.sqrt(3)
    return np.outer(psi, psi.conj())


def _unitary(x: float, y: float) -> np.ndarray:
    ex, ey = np.exp(1j * x), np.exp(1j * y)
    cx, sx, cy, sy = math.cos(x), math.sin(x), math.cos(y), math.sin(y)
    # published form carries an extra 1/sqrt(2) that would make U^dag U = I/2; omitted
    return np.array(
        [
            [ex * cy, 1j * ex * sy, 0],
            [1j * sy * cx, cx * cy, 1j * ey * sx],
            [-sy * sx, 1j * sx * cy, ey * cx],
        ],
        dtype=np.complex128,
    )


def strategy_unitary(s: StrategyParams) -> np.ndarray:
    u = _unitary(s.x, s.y)
    residual = max_abs(u.conj().T @ u - np.eye(3))
    if residual > UNITARITY_TOL:
        raise AssertionError(f"strategy operator is not unitary (residual {residual:.3e})")
    return u


def strategy_unitaries(xs, ys) -> np.ndarray:
    """Stack of unitaries for paired angle arrays, shape ``(n, 3, 3)``."""
    return np.stack([_unitary(float(x), float(y)) for x, y in zip(xs, ys)])


def final_state(noisy: np.ndarray, a: StrategyParams, b: StrategyParams) -> np.ndarray:
    u = np.kron(strategy_unitary(a), strategy_unitary(b))
    return u @ noisy @ u.conj().T


def payoff_operator(player: "Player | str", m: PayoffMatrix = TABLE_1) -> np.ndarray:
    """Diagonal operator with ``$_ij`` at position ``3*i + j``."""
    return np.diag(m.for_player(player).reshape(-1)).astype(np.complex128)


@functools.lru_cache(maxsize=256)
def _noisy_state_cached(kind: ChannelKind, alpha: float) -> np.ndarray:
    rho = apply_channel(initial_state(), kraus_set(kind, alpha))
    rho.setflags(write=False)
    return rho


def noisy_state(kind: "ChannelKind | str", alpha: float) -> np.ndarray:
    """Initial state after the two-qutrit channel (read-only, memoised)."""
    return _noisy_state_cached(ChannelKind.parse(kind), check_alpha(alpha))


def payoff(
    a: StrategyParams,
    b: StrategyParams,
    kind: "ChannelKind | str",
    alpha: float,
    m: PayoffMatrix = TABLE_1,
) -> PayoffResult:
    rho = final_state(noisy_state(kind, alpha), a, b)
    alice = np.trace(payoff_operator(Player.ALICE, m) @ rho).real
    bob = np.trace(payoff_operator(Player.BOB, m) @ rho).real
    return PayoffResult(float(alice), float(bob))


def outcome_probabilities(rho: np.ndarray, ua: np.ndarray, ub: np.ndarray) -> np.ndarray:
    """Joint outcome distribution for every pair of strategy unitaries.

    ``ua`` and ``ub`` are stacks of shape ``(S, 3, 3)`` and ``(T, 3, 3)``;
    returns ``probs[s, t, i, j]``, the diagonal of the final state at ``|ij>``.
    """
    r = np.asarray(rho).reshape(3, 3, 3, 3)
    half = np.einsum("sia,abcd,sic->sibd", ua, r, ua.conj(), optimize=True)
    full = np.einsum("tjb,sibd,tjd->stij", ub, half, ub.conj(), optimize=True)
    return full.real


def payoff_table(
    kind: "ChannelKind | str",
    alpha: float,
    strategies_a,
    strategies_b,
    m: PayoffMatrix = TABLE_1,
) -> tuple[np.ndarray, np.ndarray]:
    """Both players' payoffs for every ``(a, b)`` pair of the given strategy lists.

    Returns ``(alice, bob)``, each of shape ``(len(strategies_a), len(strategies_b))``.
    """
    ua = np.stack([strategy_unitary(s) for s in strategies_a])
    ub = np.stack([strategy_unitary(s) for s in strategies_b])
    probs = outcome_probabilities(noisy_state(kind, alpha), ua, ub)
    alice = np.einsum("stij,ij->st", probs, m.alice)
    bob = np.einsum("stij,ij->st", probs, m.bob)
    return alice, bob


def payoff_points(points, kind: "ChannelKind | str", m: PayoffMatrix = TABLE_1) -> np.ndarray:
    """Payoffs for rows ``(x1, y1, x2, y2, alpha)``; returns shape ``(n, 2)``."""
    points = np.asarray(points, dtype=float)
    out = np.empty((len(points), 2))
    for alpha in np.unique(points[:, 4]):
        idx = np.flatnonzero(points[:, 4] == alpha)
        ua = strategy_unitaries(points[idx, 0], points[idx, 1])
        ub = strategy_unitaries(points[idx, 2], points[idx, 3])
        rho = noisy_state(kind, alpha)
        # pair row k of ua with row k of ub only
        r = rho.reshape(3, 3, 3, 3)
        probs = np.einsum(
            "nia,njb,abcd,nic,njd->nij", ua, ub, r, ua.conj(), ub.conj(), optimize=True
        ).real
        out[idx, 0] = np.einsum("nij,ij->n", probs, m.alice)
        out[idx, 1] = np.einsum("nij,ij->n", probs, m.bob)
    return out


def classical_mixed_payoff(p, q, m: PayoffMatrix = TABLE_1) -> PayoffResult:
    """Expected payoffs when Alice mixes with ``p`` and Bob with ``q`` over (R, S, P)."""
    p = check_probability_vector(p)
    q = check_probability_vector(q)
    return PayoffResult(float(p @ m.alice @ q), float(p @ m.bob @ q))
