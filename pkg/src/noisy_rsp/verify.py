"""Invariant suite behind the ``verify`` command."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from noisy_rsp.analysis import (
    DEP_ZERO,
    FIG1_A,
    FIG1_B,
    check_ad_symmetry,
    check_dep_monotonic,
    check_pd_flat,
    format_float,
)
from noisy_rsp.channels import (
    NOISY_KINDS,
    ChannelKind,
    apply_channel,
    check_completeness,
    kraus_set,
    single_qutrit_kraus,
)
from noisy_rsp.game import (
    TABLE_1,
    PayoffMatrix,
    StrategyParams,
    classical_mixed_payoff,
    payoff,
    strategy_unitaries,
)
from noisy_rsp.linalg import PAIR_DIM

ALPHA_GRID = np.round(np.linspace(0.0, 1.0, 11), 12)
ANGLE_GRID = np.linspace(0.0, math.pi / 2, 11)


@dataclass
class Tolerances:
    completeness: float = 1e-12
    unitarity: float = 1e-12
    trace: float = 1e-12
    hermiticity: float = 1e-12
    positivity: float = 1e-10
    zero_sum: float = 1e-10
    equivalence: float = 1e-12
    curve: float = 1e-9


@dataclass
class VerifyRow:
    name: str
    status: str  # PASS, FAIL or INFO
    value: float
    limit: str

    def line(self) -> str:
        return f"{self.status:<4}  {self.name:<28} {format_float(self.value):>22}  {self.limit}"


def random_density_matrices(n: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    """Ginibre-distributed mixed states, shape ``(n, dim, dim)``."""
    g = rng.normal(size=(n, dim, dim)) + 1j * rng.normal(size=(n, dim, dim))
    rho = g @ g.conj().transpose(0, 2, 1)
    return rho / np.trace(rho, axis1=1, axis2=2)[:, None, None]


def random_strategy(rng: np.random.Generator) -> StrategyParams:
    return StrategyParams(*rng.uniform(0.0, math.pi / 2, 2))


def _row(name, ok, value, limit) -> VerifyRow:
    return VerifyRow(name, "PASS" if ok else "FAIL", float(value), limit)


def run_checks(
    tol: Tolerances | None = None,
    m: PayoffMatrix = TABLE_1,
    seed: int = 0,
    n_states: int = 50,
) -> list[VerifyRow]:
    tol = tol or Tolerances()
    rng = np.random.default_rng(seed)
    rows = []

    residual = max(
        max(check_completeness(single_qutrit_kraus(k, a)), check_completeness(kraus_set(k, a)))
        for k in NOISY_KINDS
        for a in ALPHA_GRID
    )
    rows.append(_row("kraus_completeness", residual < tol.completeness, residual,
                     f"< {tol.completeness:g}"))

    xs, ys = np.meshgrid(ANGLE_GRID, ANGLE_GRID, indexing="ij")
    us = strategy_unitaries(xs.ravel(), ys.ravel())
    unit = float(np.max(np.abs(us.conj().transpose(0, 2, 1) @ us - np.eye(3))))
    rows.append(_row("unitarity", unit < tol.unitarity, unit, f"< {tol.unitarity:g}"))

    states = random_density_matrices(n_states, PAIR_DIM, rng)
    tr_err = herm_err = 0.0
    min_eig = math.inf
    for k in NOISY_KINDS:
        for a in ALPHA_GRID:
            out = apply_channel(states, kraus_set(k, a))
            tr_err = max(tr_err, float(np.max(np.abs(np.trace(out, axis1=1, axis2=2) - 1))))
            herm_err = max(herm_err, float(np.max(np.abs(out - out.conj().transpose(0, 2, 1)))))
            min_eig = min(min_eig, float(np.linalg.eigvalsh(out).min()))
    rows.append(_row("trace_preservation", tr_err < tol.trace, tr_err, f"< {tol.trace:g}"))
    rows.append(_row("hermiticity", herm_err < tol.hermiticity, herm_err,
                     f"< {tol.hermiticity:g}"))
    rows.append(_row("positivity_min_eigenvalue", min_eig >= -tol.positivity, min_eig,
                     f">= -{tol.positivity:g}"))

    if m.is_zero_sum:
        worst = 0.0
        for _ in range(200):
            kind = NOISY_KINDS[rng.integers(len(NOISY_KINDS))]
            r = payoff(random_strategy(rng), random_strategy(rng), kind, rng.uniform(), m)
            worst = max(worst, abs(r.alice + r.bob))
        rows.append(_row("zero_sum", worst < tol.zero_sum, worst, f"< {tol.zero_sum:g}"))

    spread = 0.0
    for _ in range(50):
        a, b = random_strategy(rng), random_strategy(rng)
        vals = np.array([tuple(payoff(a, b, k, 0.0, m)) for k in ChannelKind])
        spread = max(spread, float(np.max(vals.max(axis=0) - vals.min(axis=0))))
    rows.append(_row("alpha0_equivalence", spread < tol.equivalence, spread,
                     f"< {tol.equivalence:g}"))

    noiseless = payoff(FIG1_A, FIG1_B, ChannelKind.NOISELESS, 0.0, m).alice
    rows.append(_row("fig1_noiseless_payoff", abs(noiseless - 1) < tol.equivalence, noiseless,
                     f"= 1 +- {tol.equivalence:g}"))

    sym = check_ad_symmetry(ALPHA_GRID, tol.curve)
    rows.append(_row("ad_symmetry", sym.passed, sym.value, f"< {tol.curve:g}"))
    rows.append(_row("ad_argmin_alpha", abs(sym.detail["argmin_alpha"] - 0.5) < 1e-12,
                     sym.detail["argmin_alpha"], "= 0.5"))
    rows.append(_row("ad_min_payoff", abs(sym.detail["min_payoff"] - 0.5) < tol.curve,
                     sym.detail["min_payoff"], f"= 0.5 +- {tol.curve:g}"))

    mono = check_dep_monotonic(np.append(ALPHA_GRID, DEP_ZERO))
    rows.append(_row("dep_monotonic_window", mono.passed, mono.value, "max step <= 0 on [0, 8/9]"))

    flat = check_pd_flat(ALPHA_GRID, tol=tol.curve)
    rows.append(_row("pd_flat", flat.passed, flat.value, f"< {tol.curve:g}"))

    uniform = np.full(3, 1 / 3)
    base = classical_mixed_payoff(uniform, uniform, TABLE_1)
    pure_err = 0.0
    eye = np.eye(3)
    for i in range(3):
        for j in range(3):
            r = classical_mixed_payoff(eye[i], eye[j], TABLE_1)
            pure_err = max(pure_err, abs(r.alice - TABLE_1.alice[i, j]), abs(r.bob - TABLE_1.bob[i, j]))
    rows.append(_row("classical_uniform_payoff", base.alice == 0 and base.bob == 0,
                     abs(base.alice) + abs(base.bob), "= 0"))
    rows.append(_row("classical_pure_profiles", pure_err == 0, pure_err, "= 0"))
    rows.append(_row("classical_cyclic_dominance", TABLE_1.is_cyclic_dominance(), 1.0,
                     "R>S>P>R"))

    ad1 = payoff(FIG1_A, FIG1_B, ChannelKind.AMPLITUDE_DAMPING, 1.0, m).alice
    rows.append(_row("ad_alpha1_noiseless", abs(ad1 - noiseless) < tol.curve, ad1,
                     f"= noiseless +- {tol.curve:g}"))
    dep1 = payoff(FIG1_A, FIG1_B, ChannelKind.DEPOLARIZING, 1.0, m).alice
    rows.append(VerifyRow("dep_alpha1_payoff", "INFO", dep1,
                          f"noiseless would be {format_float(noiseless)}; not asserted"))
    for a, c in mono.detail.get("outside_window", []):
        rows.append(VerifyRow(f"dep_payoff_alpha={format_float(a)}", "INFO", c,
                              "beyond 8/9; not asserted"))
    return rows


def format_table(rows: list[VerifyRow]) -> str:
    return "\n".join(r.line() for r in rows)


def all_passed(rows: list[VerifyRow]) -> bool:
    return all(r.status != "FAIL" for r in rows)


def kraus_dump(alpha: float) -> dict:
    """Single-qutrit Kraus operators of every channel at ``alpha`` as JSON-ready data."""
    return {k.value: single_qutrit_kraus(k, alpha).to_dict() for k in ChannelKind}
