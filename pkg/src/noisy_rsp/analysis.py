"""Parameter sweeps, figure grids, qualitative-claim checks and equilibrium search."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from noisy_rsp.channels import NOISY_KINDS, ChannelKind
from noisy_rsp.game import TABLE_1, PayoffMatrix, StrategyParams, payoff_points, payoff_table

AXES = ("x1", "y1", "x2", "y2", "alpha")
HALF_PI = math.pi / 2
GRID_TOL = 1e-9
#: alpha at which the published depolarizing curve touches zero
DEP_ZERO = 8 / 9


def format_float(value: float) -> str:
    """12 significant digits, no negative zero, always with a decimal point."""
    text = f"{float(value) + 0.0:.12g}"
    if text == "-0":
        text = "0"
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def axis_bound(name: str) -> float:
    if name not in AXES:
        raise ValueError(f"unknown axis {name!r}; expected one of {', '.join(AXES)}")
    return 1.0 if name == "alpha" else HALF_PI


@dataclass(frozen=True)
class Axis:
    """Inclusive range ``start:stop:step`` on one of the five parameters."""

    name: str
    start: float
    stop: float
    step: float

    def __post_init__(self):
        hi = axis_bound(self.name)
        if not self.step > 0:
            raise ValueError(f"axis {self.name}: step must be positive")
        if self.stop < self.start:
            raise ValueError(f"axis {self.name}: stop is below start")
        if self.start < -GRID_TOL or self.stop > hi + GRID_TOL:
            raise ValueError(f"axis {self.name}: range must lie within [0, {hi:.6g}]")

    def values(self) -> np.ndarray:
        n = int(math.floor((self.stop - self.start) / self.step + GRID_TOL)) + 1
        vals = self.start + self.step * np.arange(n)
        if abs(vals[-1] - self.stop) < GRID_TOL:
            vals[-1] = self.stop
        return np.clip(vals, 0.0, axis_bound(self.name))


@dataclass(frozen=True)
class SweepSpec:
    varying: tuple
    fixed: dict
    channels: tuple = NOISY_KINDS
    payoff_matrix: PayoffMatrix = TABLE_1

    def __post_init__(self):
        varying = tuple(self.varying)
        if len(varying) > 2:
            raise ValueError("at most two axes may vary")
        names = [a.name for a in varying]
        if len(set(names)) != len(names):
            raise ValueError("an axis may only vary once")
        fixed = {k: float(v) for k, v in self.fixed.items()}
        for k, v in fixed.items():
            if k in names:
                raise ValueError(f"axis {k} is both fixed and varying")
            if not -GRID_TOL <= v <= axis_bound(k) + GRID_TOL:
                raise ValueError(f"fixed value {k}={v} is out of range")
        missing = [a for a in AXES if a not in names and a not in fixed]
        if missing:
            raise ValueError(f"no value given for axis {', '.join(missing)}")
        channels = tuple(ChannelKind.parse(c) for c in self.channels)
        if not channels:
            raise ValueError("at least one channel is required")
        object.__setattr__(self, "varying", varying)
        object.__setattr__(self, "fixed", fixed)
        object.__setattr__(self, "channels", channels)

    def points(self) -> tuple[np.ndarray, np.ndarray]:
        """Grid rows in lexicographic axis order: ``(axis_values, full_points)``."""
        grids = [a.values() for a in self.varying]
        combos = np.array(list(product(*grids)), dtype=float).reshape(-1 if grids else 1, len(grids))
        full = np.empty((len(combos), 5))
        for col, name in enumerate(AXES):
            if name in self.fixed:
                full[:, col] = min(max(self.fixed[name], 0.0), axis_bound(name))
        for k, a in enumerate(self.varying):
            full[:, AXES.index(a.name)] = combos[:, k]
        return combos, full


@dataclass
class PayoffSurface:
    spec: SweepSpec
    rows: list = field(default_factory=list)

    @property
    def header(self) -> list[str]:
        return [a.name for a in self.spec.varying] + ["channel", "payoff_alice", "payoff_bob"]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for axis_values, channel, alice, bob in self.rows:
            writer.writerow(
                [format_float(v) for v in axis_values]
                + [channel.value, format_float(alice), format_float(bob)]
            )
        return buf.getvalue()

    def column(self, channel: "ChannelKind | str", player: str = "alice") -> np.ndarray:
        channel = ChannelKind.parse(channel)
        col = 2 if player == "alice" else 3
        return np.array([r[col] for r in self.rows if r[1] is channel])


def sweep(spec: SweepSpec) -> PayoffSurface:
    """Evaluate both payoffs on the spec grid, channel by channel."""
    combos, full = spec.points()
    surface = PayoffSurface(spec)
    for channel in spec.channels:
        values = payoff_points(full, channel, spec.payoff_matrix)
        for axis_values, (alice, bob) in zip(combos, values):
            surface.rows.append((tuple(axis_values.tolist()), channel, float(alice), float(bob)))
    return surface


FIGURE_CAPTIONS = {
    1: "alpha; x1 = y1 = pi/2, x2 = y2 = 0; AD, Dep, PD",
    2: "x1; y1 = pi/2, x2 = y2 = 0, alpha = 0.5; AD, Dep, PD",
    3: "y1; x1 = pi/2, x2 = y2 = 0, alpha = 0.5; AD, Dep, PD",
    4: "x1 and alpha; y1 = pi/2, x2 = y2 = 0; AD",
    5: "x1 and alpha; y1 = pi/2, x2 = y2 = 0; Dep",
    6: "x1 and alpha; y1 = pi/2, x2 = y2 = 0; PD",
}


def figure_spec(
    number: int,
    step: float | None = None,
    alpha_step: float = 0.05,
    payoff_matrix: PayoffMatrix = TABLE_1,
) -> SweepSpec:
    """Grid behind each published figure; ``step`` refines the first axis."""
    if number == 1:
        return SweepSpec(
            (Axis("alpha", 0.0, 1.0, step or 0.05),),
            {"x1": HALF_PI, "y1": HALF_PI, "x2": 0.0, "y2": 0.0},
            NOISY_KINDS,
            payoff_matrix,
        )
    angle_step = step or HALF_PI / 20
    if number == 2:
        return SweepSpec(
            (Axis("x1", 0.0, HALF_PI, angle_step),),
            {"y1": HALF_PI, "x2": 0.0, "y2": 0.0, "alpha": 0.5},
            NOISY_KINDS,
            payoff_matrix,
        )
    if number == 3:
        return SweepSpec(
            (Axis("y1", 0.0, HALF_PI, angle_step),),
            {"x1": HALF_PI, "x2": 0.0, "y2": 0.0, "alpha": 0.5},
            NOISY_KINDS,
            payoff_matrix,
        )
    if number in (4, 5, 6):
        channel = {4: ChannelKind.AMPLITUDE_DAMPING, 5: ChannelKind.DEPOLARIZING,
                   6: ChannelKind.PHASE_DAMPING}[number]
        return SweepSpec(
            (Axis("x1", 0.0, HALF_PI, angle_step), Axis("alpha", 0.0, 1.0, alpha_step)),
            {"y1": HALF_PI, "x2": 0.0, "y2": 0.0},
            (channel,),
            payoff_matrix,
        )
    raise ValueError(f"figure number must be 1-6, got {number}")


# --- checks of the qualitative claims at the figure-1 strategies -----------

FIG1_A = StrategyParams(HALF_PI, HALF_PI)
FIG1_B = StrategyParams(0.0, 0.0)


@dataclass
class CheckResult:
    """Outcome of one claim check; ``passed`` is ``None`` when only measured."""

    name: str
    passed: bool | None
    value: float
    detail: dict = field(default_factory=dict)


def _alice_curve(channel, alphas, a=FIG1_A, b=FIG1_B, m=TABLE_1) -> np.ndarray:
    alphas = np.asarray(alphas, dtype=float)
    pts = np.column_stack([np.full((len(alphas), 4), [a.x, a.y, b.x, b.y]), alphas])
    return payoff_points(pts, channel, m)[:, 0]


def check_ad_symmetry(alphas, tol: float = GRID_TOL) -> CheckResult:
    """Amplitude-damping payoff is mirror symmetric about alpha = 1/2."""
    alphas = np.asarray(alphas, dtype=float)
    forward = _alice_curve(ChannelKind.AMPLITUDE_DAMPING, alphas)
    mirrored = _alice_curve(ChannelKind.AMPLITUDE_DAMPING, 1.0 - alphas)
    asym = float(np.max(np.abs(forward - mirrored)))
    k = int(np.argmin(forward))
    return CheckResult(
        "ad_symmetry",
        asym < tol,
        asym,
        {"argmin_alpha": float(alphas[k]), "min_payoff": float(forward[k])},
    )


def check_dep_monotonic(alphas, window: float = DEP_ZERO, tol: float = 1e-12) -> CheckResult:
    """Depolarizing payoff never increases with alpha on ``[0, window]``.

    Samples beyond the window are evaluated and reported but not asserted.
    """
    alphas = np.sort(np.asarray(alphas, dtype=float))
    curve = _alice_curve(ChannelKind.DEPOLARIZING, alphas)
    inside = alphas <= window + GRID_TOL
    a_in, c_in = alphas[inside], curve[inside]
    violation = None
    for k in range(len(c_in) - 1):
        if c_in[k + 1] > c_in[k] + tol:
            violation = (float(a_in[k]), float(a_in[k + 1]))
            break
    detail = {"first_violation": violation}
    if (~inside).any():
        detail["outside_window"] = [
            (float(a), float(c)) for a, c in zip(alphas[~inside], curve[~inside])
        ]
    value = float(np.max(np.diff(c_in))) if len(c_in) > 1 else 0.0
    return CheckResult("dep_monotonic", violation is None, value, detail)


def check_pd_flat(
    alphas,
    a: StrategyParams = FIG1_A,
    b: StrategyParams = FIG1_B,
    tol: float = GRID_TOL,
) -> CheckResult:
    """Spread of the phase-damping payoff over ``alphas``.

    Flatness is only asserted where every ``sin(2y)`` vanishes; elsewhere the
    spread is measured and ``passed`` is ``None``.
    """
    curve = _alice_curve(ChannelKind.PHASE_DAMPING, alphas, a, b)
    spread = float(curve.max() - curve.min()) if len(curve) else 0.0
    in_regime = all(abs(math.sin(2 * y)) < 1e-12 for y in (a.y, b.y))
    return CheckResult(
        "pd_flat",
        spread < tol if in_regime else None,
        spread,
        {"value": float(curve[0]) if len(curve) else None, "asserted": in_regime},
    )


# --- discretised equilibrium search ------------------------------------------


@dataclass(frozen=True)
class EquilibriumCandidate:
    a: StrategyParams
    b: StrategyParams
    best_response_gap: float
    alice: float
    bob: float

    @property
    def profile(self) -> tuple[float, float, float, float]:
        return (self.a.x, self.a.y, self.b.x, self.b.y)

    def to_dict(self) -> dict:
        return {
            "x1": self.a.x, "y1": self.a.y, "x2": self.b.x, "y2": self.b.y,
            "best_response_gap": self.best_response_gap,
            "payoff_alice": self.alice, "payoff_bob": self.bob,
        }


def strategy_grid(grid_step: float) -> list[StrategyParams]:
    n = HALF_PI / grid_step
    if grid_step <= 0 or abs(n - round(n)) > GRID_TOL:
        raise ValueError("grid_step must divide pi/2 into an integer number of intervals")
    angles = np.linspace(0.0, HALF_PI, int(round(n)) + 1)
    return [StrategyParams(x, y) for x in angles for y in angles]


def best_response_gaps(alice: np.ndarray, bob: np.ndarray) -> np.ndarray:
    """Largest unilateral improvement for either player at each profile.

    ``alice[s, t]`` and ``bob[s, t]`` are payoffs when Alice plays ``s`` and Bob ``t``.
    """
    gain_alice = alice.max(axis=0, keepdims=True) - alice
    gain_bob = bob.max(axis=1, keepdims=True) - bob
    return np.maximum(gain_alice, gain_bob).clip(min=0.0)


def find_equilibria(
    channel: "ChannelKind | str",
    alpha: float,
    grid_step: float = math.pi / 20,
    m: PayoffMatrix = TABLE_1,
    tol: float = GRID_TOL,
) -> list[EquilibriumCandidate]:
    """Pure grid profiles whose best-response gap is below ``tol``.

    Sorted by gap, then lexicographically by ``(x1, y1, x2, y2)``.
    """
    grid = strategy_grid(grid_step)
    alice, bob = payoff_table(channel, alpha, grid, grid, m)
    gaps = best_response_gaps(alice, bob)
    found = [
        EquilibriumCandidate(grid[s], grid[t], float(gaps[s, t]),
                             float(alice[s, t]), float(bob[s, t]))
        for s, t in np.argwhere(gaps < tol)
    ]
    found.sort(key=lambda c: (c.best_response_gap, c.profile))
    return found


def min_best_response_gap(
    channel: "ChannelKind | str",
    alpha: float,
    grid_step: float = math.pi / 20,
    m: PayoffMatrix = TABLE_1,
) -> float:
    grid = strategy_grid(grid_step)
    return float(best_response_gaps(*payoff_table(channel, alpha, grid, grid, m)).min())

