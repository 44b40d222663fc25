import math

import numpy as np
import pytest

from conftest import HALF_PI
from noisy_rsp.analysis import (
    Axis,
    SweepSpec,
    StrategyParams,
    best_response_gaps,
    check_ad_symmetry,
    check_dep_monotonic,
    check_pd_flat,
    figure_spec,
    find_equilibria,
    format_float,
    min_best_response_gap,
    strategy_grid,
    sweep,
)
from noisy_rsp.channels import NOISY_KINDS, ChannelKind
from noisy_rsp.game import payoff

FIG1_FIXED = {"x1": HALF_PI, "y1": HALF_PI, "x2": 0.0, "y2": 0.0}


def test_axis_values_inclusive():
    assert len(Axis("alpha", 0, 1, 0.05).values()) == 21
    assert Axis("x1", 0, HALF_PI, HALF_PI / 20).values()[-1] == HALF_PI
    assert Axis("alpha", 0, 1, 0.3).values().tolist() == pytest.approx([0, 0.3, 0.6, 0.9])


@pytest.mark.parametrize(
    "args",
    [("alpha", 0, 1, 0), ("alpha", 0, 1.5, 0.1), ("x1", 0, 2, 0.1), ("alpha", 0.5, 0.2, 0.1), ("z", 0, 1, 0.1)],
)
def test_axis_rejects_bad_ranges(args):
    with pytest.raises(ValueError):
        Axis(*args)


def test_spec_requires_every_axis():
    with pytest.raises(ValueError):
        SweepSpec((Axis("alpha", 0, 1, 0.5),), {"x1": 0.0})
    with pytest.raises(ValueError):
        SweepSpec((Axis("alpha", 0, 1, 0.5),), {**FIG1_FIXED, "alpha": 0.1})
    with pytest.raises(ValueError):
        SweepSpec((Axis("alpha", 0, 1, 0.5),), FIG1_FIXED, channels=())


def test_figure_one_sweep():
    surface = sweep(figure_spec(1))
    assert len(surface.rows) == 63
    alphas = np.linspace(0, 1, 21)
    ad = surface.column("ad")
    dep = surface.column("dep")
    pd = surface.column("pd")
    assert np.max(np.abs(ad - (1 - 2 * alphas + 2 * alphas**2))) < 1e-9
    assert np.max(np.abs(dep - (1 - 9 * alphas / 8) ** 2)) < 1e-9
    assert np.max(np.abs(pd - 1)) < 1e-9
    row = next(r for r in surface.rows if r[1] is ChannelKind.AMPLITUDE_DAMPING and r[0] == (0.5,))
    assert row[2] == pytest.approx(0.5, abs=1e-12)


def test_sweep_matches_scalar_payoff(rng):
    spec = SweepSpec(
        (Axis("x1", 0, HALF_PI, HALF_PI / 3), Axis("y2", 0, HALF_PI, HALF_PI / 2)),
        {"y1": 0.4, "x2": 1.1, "alpha": 0.35},
    )
    surface = sweep(spec)
    assert len(surface.rows) == 4 * 3 * 3
    for (x1, y2), kind, alice, bob in surface.rows:
        r = payoff(StrategyParams(x1, 0.4), StrategyParams(1.1, y2), kind, 0.35)
        assert alice == pytest.approx(r.alice, abs=1e-12)
        assert bob == pytest.approx(r.bob, abs=1e-12)


def test_sweep_rows_lexicographic():
    spec = SweepSpec(
        (Axis("x1", 0, HALF_PI, HALF_PI / 2), Axis("alpha", 0, 1, 0.5)),
        {"y1": HALF_PI, "x2": 0.0, "y2": 0.0},
        (ChannelKind.AMPLITUDE_DAMPING,),
    )
    keys = [r[0] for r in sweep(spec).rows]
    assert keys == sorted(keys)


def test_single_point_sweep():
    spec = SweepSpec((), {**FIG1_FIXED, "alpha": 0.2})
    surface = sweep(spec)
    assert len(surface.rows) == len(NOISY_KINDS)
    assert surface.to_csv().splitlines()[0] == "channel,payoff_alice,payoff_bob"


def test_sweep_endpoint_consistency():
    surface = sweep(figure_spec(4))
    noiseless = {}
    for (x1, alpha), kind, alice, _ in surface.rows:
        if alpha == 0:
            noiseless[x1] = payoff(StrategyParams(x1, HALF_PI), StrategyParams(0, 0), "none", 0).alice
            assert alice == pytest.approx(noiseless[x1], abs=1e-12)
    assert len(noiseless) == 21


def test_csv_format_and_determinism():
    a = sweep(figure_spec(1)).to_csv()
    b = sweep(figure_spec(1)).to_csv()
    assert a == b
    lines = a.splitlines()
    assert lines[0] == "alpha,channel,payoff_alice,payoff_bob"
    assert len(lines) == 64
    assert "0.5,ad,0.5,-0.5" in lines


def test_format_float():
    assert format_float(0.5) == "0.5"
    assert format_float(1.0000000000000002) == "1.0"
    assert format_float(-0.0) == "0.0"
    assert format_float(1 / 3) == "0.333333333333"
    assert format_float(1e-17) == "1e-17"


@pytest.mark.parametrize(
    "number,axes,fixed,channels",
    [
        (1, ["alpha"], {"x1": HALF_PI, "y1": HALF_PI, "x2": 0, "y2": 0}, ["ad", "dep", "pd"]),
        (2, ["x1"], {"y1": HALF_PI, "x2": 0, "y2": 0, "alpha": 0.5}, ["ad", "dep", "pd"]),
        (3, ["y1"], {"x1": HALF_PI, "x2": 0, "y2": 0, "alpha": 0.5}, ["ad", "dep", "pd"]),
        (4, ["x1", "alpha"], {"y1": HALF_PI, "x2": 0, "y2": 0}, ["ad"]),
        (5, ["x1", "alpha"], {"y1": HALF_PI, "x2": 0, "y2": 0}, ["dep"]),
        (6, ["x1", "alpha"], {"y1": HALF_PI, "x2": 0, "y2": 0}, ["pd"]),
    ],
)
def test_figure_specs_match_captions(number, axes, fixed, channels):
    spec = figure_spec(number)
    assert [a.name for a in spec.varying] == axes
    assert spec.fixed == pytest.approx(fixed)
    assert sorted(c.value for c in spec.channels) == sorted(channels)


def test_figure_spec_rejects_unknown():
    with pytest.raises(ValueError):
        figure_spec(7)


def test_ad_symmetry_check():
    res = check_ad_symmetry(np.linspace(0, 1, 11))
    assert res.passed and res.value < 1e-9
    assert res.detail["argmin_alpha"] == pytest.approx(0.5)
    assert res.detail["min_payoff"] == pytest.approx(0.5, abs=1e-12)
    ends = check_ad_symmetry([0.0, 1.0])
    assert ends.passed and ends.detail["min_payoff"] == pytest.approx(1.0, abs=1e-12)


def test_dep_monotonic_check():
    res = check_dep_monotonic(np.linspace(0, 0.8, 9))
    assert res.passed and res.detail["first_violation"] is None
    full = check_dep_monotonic(np.append(np.linspace(0, 1, 11), 8 / 9))
    assert full.passed
    outside = dict(full.detail["outside_window"])
    assert outside[1.0] == pytest.approx(1 / 64, abs=1e-12)


def test_dep_monotonic_detects_rise_when_window_widened():
    res = check_dep_monotonic(np.linspace(0, 1, 11), window=1.0)
    assert not res.passed
    assert res.detail["first_violation"] == pytest.approx((0.9, 1.0))


def test_dep_zero_at_eight_ninths():
    r = payoff(StrategyParams(HALF_PI, HALF_PI), StrategyParams(0, 0), "dep", 8 / 9)
    assert r.alice == pytest.approx(0.0, abs=1e-12)


def test_pd_flat_check():
    res = check_pd_flat(np.linspace(0, 1, 11))
    assert res.passed and res.detail["value"] == pytest.approx(1.0)
    single = check_pd_flat([0.3])
    assert single.value == 0 and single.passed
    off = check_pd_flat(np.linspace(0, 1, 11), a=StrategyParams(HALF_PI, math.pi / 4))
    assert off.passed is None and not off.detail["asserted"]
    assert off.value >= 0


def test_strategy_grid():
    assert len(strategy_grid(math.pi / 20)) == 121
    assert len(strategy_grid(HALF_PI / 20)) == 441
    with pytest.raises(ValueError):
        strategy_grid(0.3)


def test_best_response_gap_on_matching_pennies_like_table():
    alice = np.array([[1.0, -1.0], [-1.0, 1.0]])
    gaps = best_response_gaps(alice, -alice)
    assert np.all(gaps == 2.0)
    saddle = np.array([[0.0, 1.0], [-1.0, 0.5]])
    gaps = best_response_gaps(saddle, -saddle)
    assert gaps[0, 0] == 0.0 and np.all(gaps >= 0)


def test_equilibria_brute_force_small_grid():
    step = HALF_PI / 4
    found = find_equilibria("none", 0.0, step)
    grid = strategy_grid(step)
    # exhaustive unilateral-deviation check, payoff by payoff
    expected = []
    for a in grid:
        for b in grid:
            r = payoff(a, b, "none", 0.0)
            best_a = max(payoff(d, b, "none", 0.0).alice for d in grid)
            best_b = max(payoff(a, d, "none", 0.0).bob for d in grid)
            if max(best_a - r.alice, best_b - r.bob) < 1e-9:
                expected.append((a.x, a.y, b.x, b.y))
    assert sorted(c.profile for c in found) == sorted(expected)
    gaps = [c.best_response_gap for c in found]
    assert all(g >= 0 for g in gaps)
    keys = [(c.best_response_gap, c.profile) for c in found]
    assert keys == sorted(keys)


def test_noiseless_equilibria_baseline():
    found = find_equilibria("none", 0.0)
    assert len(found) == 121
    assert {c.a.x for c in found} == {HALF_PI} and {c.b.x for c in found} == {HALF_PI}
    assert all(abs(c.alice) < 1e-12 for c in found)


def test_min_gap_positive_when_no_equilibrium():
    gap = min_best_response_gap("ad", 0.25)
    assert gap > 1e-3
    assert find_equilibria("ad", 0.25) == []


def test_ad_noise_breaks_grid_equilibrium_by_loop_oracle():
    import oracle

    grid = [(x, y) for x in (0, math.pi / 4, HALF_PI) for y in (0, math.pi / 4, HALF_PI)]
    a = b = (HALF_PI, 0.0)
    base = oracle.payoffs("ad", 0.25, *a, *b, oracle.RSP)
    gain_alice = max(oracle.payoffs("ad", 0.25, *d, *b, oracle.RSP)[0] for d in grid) - base[0]
    assert gain_alice == pytest.approx(1 / 16, abs=1e-12)
    assert len(find_equilibria("none", 0.0, math.pi / 4)) == 9
    assert find_equilibria("ad", 0.25, math.pi / 4) == []
