"""Published closed-form payoff expressions and their comparison with simulation.

The three evaluators are literal transcriptions of long printed formulas and
are treated as claims under test: the density-matrix pipeline is the reference.
Each evaluator takes the nine payoff entries of one player, so the same
expression serves Alice and Bob.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from noisy_rsp.channels import ChannelKind
from noisy_rsp.game import TABLE_1, PayoffMatrix, Player, payoff_points
from noisy_rsp.validation import check_alpha, check_angle

AGREEMENT_TOL = 1e-9


@dataclass(frozen=True)
class ClosedFormInput:
    x1: float
    y1: float
    x2: float
    y2: float
    alpha: float
    payoff_entries: tuple = tuple(TABLE_1.alice.reshape(-1))

    def __post_init__(self):
        for name in ("x1", "y1", "x2", "y2"):
            object.__setattr__(self, name, check_angle(getattr(self, name), name))
        object.__setattr__(self, "alpha", check_alpha(self.alpha))
        entries = tuple(float(v) for v in np.asarray(self.payoff_entries, dtype=float).reshape(-1))
        if len(entries) != 9:
            raise ValueError("payoff_entries must hold the nine $_ij values")
        object.__setattr__(self, "payoff_entries", entries)

    def as_row(self) -> list[float]:
        return [self.x1, self.y1, self.x2, self.y2, self.alpha]


def _unpack(inp: ClosedFormInput):
    return inp.x1, inp.y1, inp.x2, inp.y2, inp.alpha, inp.payoff_entries


def payoff_ad_closed(inp: ClosedFormInput) -> float:
    """Amplitude-damping payoff formula as printed."""
    x1, y1, x2, y2, a, (p00, p01, p02, p10, p11, p12, p20, p21, p22) = _unpack(inp)
    cos, sin = math.cos, math.sin
    return (1 / 12) * (
        (2 + a**2) * p00
        + (2 + a * (-4 + 5 * a)) * p00 * cos(2 * y1) * cos(2 * y2)
        + a * (2 + a) * p00 * (cos(2 * y1) + cos(2 * y2))
        + 2 * (-1 + a) * (
            (-p11 + p12 + p21 - p22) * cos(y1 + y2) * sin(2 * x1) * sin(2 * x2)
            * ((-1 + a) * cos(2 * y1) * cos(2 * y2) + sin(y1) * sin(y2))
            + p00 * sin(2 * y1) * sin(2 * y2)
        )
        + cos(x1) ** 2 * (
            -4 * (-1 + a) * a * p20 * cos(y2) ** 2
            - p10 * cos(2 * y1) * (a * (2 + a) + (2 + a * (-4 + 5 * a)) * cos(2 * y2))
            + p10 * (
                2 + a**2 + a * (2 + a) * cos(2 * y2)
                - 2 * (-1 + a) * sin(2 * y1) * sin(2 * y2)
            )
        )
        + cos(x2) ** 2 * (
            (2 + a**2) * p01
            + a * (2 + a) * p01 * (cos(2 * y1) - cos(2 * y2))
            + (-2 + (4 - 5 * a) * a) * p01 * cos(2 * y1) * cos(2 * y2)
            - 2 * (-1 + a) * (2 * a * p02 * cos(y1) ** 2 + p01 * sin(2 * y1) * sin(2 * y2))
            + cos(x1) ** 2 * (
                (2 + a**2) * p11
                + 4 * (-1 + a) ** 2 * p22
                + (2 + a * (-4 + 5 * a)) * p11 * cos(2 * y1) * cos(2 * y2)
                - a * (2 + a) * p11 * (cos(2 * y1) + cos(2 * y2))
                - 2 * (-1 + a) * (
                    2 * a * p12 * sin(y1) ** 2
                    + 2 * a * p21 * sin(y2) ** 2
                    - p11 * sin(2 * y1) * sin(2 * y2)
                )
            )
        )
        + sin(x2) ** 2 * (
            -4 * (-1 + a) * a * p01 * cos(y1) ** 2
            + p02 * (
                2 + a**2 - a * (2 + a) * cos(2 * y2)
                + cos(2 * y1) * (a * (2 + a) + (-2 + (4 - 5 * a) * a) * cos(2 * y2))
                - 2 * (-1 + a) * sin(2 * y1) * sin(2 * y2)
            )
            + cos(x1) ** 2 * (
                (2 + a**2) * p12
                + 4 * (-1 + a) ** 2 * p21
                - a * (2 + a) * p12 * cos(2 * y2)
                + p12 * cos(2 * y1) * (-a * (2 + a) + (2 + a * (-4 + 5 * a)) * cos(2 * y2))
                - 2 * (-1 + a) * (
                    2 * a * p11 * sin(y1) ** 2
                    + 2 * a * p22 * sin(y2) ** 2
                    - p12 * sin(2 * y1) * sin(2 * y2)
                )
            )
        )
        + sin(x1) ** 2 * (
            2 * p20 + a**2 * p20
            + 4 * a * p10 * cos(y2) ** 2
            - 4 * a**2 * p10 * cos(y2) ** 2
            - a * (2 + a) * p20 * (cos(2 * y1) - cos(2 * y2))
            + (-2 + (4 - 5 * a) * a) * p20 * cos(2 * y1) * cos(2 * y2)
            - 2 * (-1 + a) * p20 * sin(2 * y1) * sin(2 * y2)
            + 2 * cos(x2) ** 2 * (
                2 * (-1 + a) ** 2 * p12
                + 2 * sin(y1) ** 2 * (
                    -(-1 + a) * a * (p22 + p21 * cos(y2) ** 2)
                    + (1 + 2 * a**2) * p21 * sin(y2) ** 2
                )
                + (-1 + a) * (
                    p21 * cos(y1) ** 2 * (-1 + (-1 + 2 * a) * cos(2 * y2))
                    - 2 * a * p11 * sin(y2) ** 2
                    + p21 * sin(2 * y1) * sin(2 * y2)
                )
            )
            + 2 * sin(x2) ** 2 * (
                (-1 + a) * p22 * cos(y1) ** 2 * (-1 + (-1 + 2 * a) * cos(2 * y2))
                + (
                    p22
                    + a * (2 * p21 - 2 * a * p21 + p22 + a * p22)
                    + (-1 + a - 3 * a**2) * p22 * cos(2 * y2)
                ) * sin(y1) ** 2
                + (-1 + a) * (
                    2 * (-1 + a) * p11
                    - 2 * a * p12 * sin(y2) ** 2
                    + p22 * sin(2 * y1) * sin(2 * y2)
                )
            )
        )
    )


def payoff_dep_closed(inp: ClosedFormInput) -> float:
    """Depolarizing payoff formula as printed."""
    x1, y1, x2, y2, a, (p00, p01, p02, p10, p11, p12, p20, p21, p22) = _unpack(inp)
    cos, sin = math.cos, math.sin
    return (1 / 3072) * (
        (8 - 9 * a) ** 2 * (p11 - p12 - p21 + p22) * cos(2 * (x1 + x2))
        * (5 + 3 * cos(2 * (y1 + y2)))
        + 2 * (
            4 * (64 + 3 * a * (-16 + 9 * a)) * p00
            - 3 * a * (-16 + 9 * a) * (
                2 * p01 + 2 * p02 + 2 * p10 - p11 - p12 + 2 * p20 - p21 - p22
            )
            + 64 * (
                2 * p01 + 2 * p02 + 2 * p10 + 3 * p11 + 3 * p12 + 2 * p20 + 3 * (p21 + p22)
            )
            + (8 - 9 * a) ** 2 * (
                (4 * p00 - 2 * p01 - 2 * p02 - 2 * p10 + p11 + p12 - 2 * p20 + p21 + p22)
                * cos(2 * (y1 + y2))
                + (
                    2 * (2 * p10 - p11 - p12 - 2 * p20 + p21 + p22) * cos(2 * x1)
                    + (p11 - p12 - p21 + p22) * cos(2 * (x1 - x2))
                    + 2 * (2 * p01 - 2 * p02 - p11 + p12 - p21 + p22) * cos(2 * x2)
                ) * sin(y1 + y2) ** 2
            )
        )
    )


def payoff_pd_closed(inp: ClosedFormInput) -> float:
    """Phase-damping payoff formula as printed.

    The printed text closes a bracket inside ``cos(2(y1 + y2))``; it is read as
    a plain ``cos(2(y1 + y2))`` with the sqrt(3) term kept inside the
    ``sin(2 x1) sin(2 x2)`` bracket, the only reading with balanced brackets.
    """
    x1, y1, x2, y2, a, (p00, p01, p02, p10, p11, p12, p20, p21, p22) = _unpack(inp)
    cos, sin = math.cos, math.sin
    g = 2 + 3 * (-2 + a) * a
    return (1 / 192) * (
        -8 * (2 * p11 + 2 * p12 + 2 * p20 + p21 + p22) * cos(2 * x1)
        + cos(2 * x2) * (
            8 * (
                2 * p01 - 2 * p02 - 2 * p11 + 2 * p12 + p21 - p22
                + (2 * p11 - 2 * p12 - p21 + p22) * cos(2 * x1)
            )
            - 8 * (
                2 * p01 - 2 * p02 - p21 + p22 + (p21 - p22) * cos(2 * x1)
            ) * cos(2 * y1) * cos(2 * y2)
            + 4 * g * (
                2 * p01 - 2 * p02 - p21 + p22 + (p21 - p22) * cos(2 * x1)
            ) * sin(2 * y1) * sin(2 * y2)
        )
        + 16 * cos(2 * x1) ** 2 * (
            2 * p10 + p11 + p12 + 2 * p21 + 2 * p22
            + (p11 - p12 - 2 * p21 + 2 * p22) * cos(2 * x2)
            + (-2 * p10 + p11 + p12 + (p11 - p12) * cos(2 * x2)) * cos(2 * y1) * cos(2 * y2)
            + 0.5 * g * (2 * p10 - p11 - p12 + (-p11 + p12) * cos(2 * x2))
            * sin(2 * y1) * sin(2 * y2)
        )
        - 8 * (p11 - p12 - p21 + p22) * sin(2 * x1) * sin(2 * x2) * (
            g
            + g * cos(2 * (y1 + y2))
            + math.sqrt(3) * a * (-2 + 3 * a) * (sin(2 * y1) + sin(2 * y2))
        )
        + 8 * (
            4 * p00 + 2 * p01 + 2 * p02 + 2 * p11 + 2 * p12 + 2 * p20 + p21 + p22
            + (2 * p00 - p01 - p02 + (-2 * p20 + p21 + p22) * sin(2 * x1) ** 2)
            * (2 * cos(2 * y1) * cos(2 * y2) + (-2 - 3 * (-2 + a) * a) * sin(2 * y1) * sin(2 * y2))
        )
    )


CLOSED_FORMS = {
    ChannelKind.AMPLITUDE_DAMPING: payoff_ad_closed,
    ChannelKind.DEPOLARIZING: payoff_dep_closed,
    ChannelKind.PHASE_DAMPING: payoff_pd_closed,
}


GRID_PRESETS = {
    # (points per strategy axis, alpha values)
    "coarse": (4, 11),
    "fine": (6, 21),
}


def make_grid(points_per_axis: int = 4, n_alpha: int = 11) -> np.ndarray:
    """Full tensor grid over ``(x1, y1, x2, y2, alpha)``, rows in lexicographic order."""
    if points_per_axis < 1 or n_alpha < 1:
        raise ValueError("grid needs at least one point per axis")
    angles = np.linspace(0.0, math.pi / 2, points_per_axis)
    alphas = np.linspace(0.0, 1.0, n_alpha)
    mesh = np.meshgrid(angles, angles, angles, angles, alphas, indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=1)


@dataclass
class DiscrepancyReport:
    channel: ChannelKind
    player: Player
    grid: list
    closed: list
    simulated: list
    deviations: list
    tolerance: float = AGREEMENT_TOL
    max_abs_deviation: float = field(init=False)
    agreeing_fraction: float = field(init=False)

    def __post_init__(self):
        self.max_abs_deviation = max(self.deviations) if self.deviations else 0.0
        n_ok = sum(d <= self.tolerance for d in self.deviations)
        self.agreeing_fraction = n_ok / len(self.deviations) if self.deviations else 1.0

    def anchor_deviation(self) -> float:
        """Largest deviation over the grid points with ``alpha == 0``."""
        devs = [d for row, d in zip(self.grid, self.deviations) if row[4] == 0.0]
        return max(devs) if devs else 0.0

    def to_dict(self) -> dict:
        return {
            "channel": self.channel.value,
            "player": self.player.value,
            "tolerance": self.tolerance,
            "grid": self.grid,
            "closed_form": self.closed,
            "simulated": self.simulated,
            "deviations": self.deviations,
            "max_abs_deviation": self.max_abs_deviation,
            "agreeing_fraction": self.agreeing_fraction,
            "alpha0_max_deviation": self.anchor_deviation(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def compare_closed_vs_sim(
    channel: "ChannelKind | str",
    grid=None,
    m: PayoffMatrix = TABLE_1,
    player: "Player | str" = Player.ALICE,
    tolerance: float = AGREEMENT_TOL,
) -> DiscrepancyReport:
    """Evaluate closed form and full simulation at every grid row.

    ``grid`` is an ``(n, 5)`` array of ``(x1, y1, x2, y2, alpha)`` rows, or
    the name of a preset (``"coarse"`` or ``"fine"``). Row order is kept, so
    the report is deterministic for a given grid.
    """
    channel = ChannelKind.parse(channel)
    if channel not in CLOSED_FORMS:
        raise ValueError(f"no closed form for channel {channel.value!r}")
    player = Player(player)
    if grid is None or isinstance(grid, str):
        grid = make_grid(*GRID_PRESETS[grid or "coarse"])
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 2 or grid.shape[1] != 5 or len(grid) == 0:
        raise ValueError("grid must be a non-empty (n, 5) array")
    entries = tuple(m.for_player(player).reshape(-1))
    evaluator = CLOSED_FORMS[channel]
    closed = [evaluator(ClosedFormInput(*row, payoff_entries=entries)) for row in grid]
    col = 0 if player is Player.ALICE else 1
    simulated = payoff_points(grid, channel, m)[:, col].tolist()
    deviations = [abs(c - s) for c, s in zip(closed, simulated)]
    return DiscrepancyReport(
        channel=channel,
        player=player,
        grid=grid.tolist(),
        closed=closed,
        simulated=simulated,
        deviations=deviations,
        tolerance=tolerance,
    )
