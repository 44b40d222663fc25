import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from conftest import random_state
from noisy_rsp.channels import (
    NOISY_KINDS,
    ChannelKind,
    KrausSet,
    amplitude_damping_kraus,
    apply_channel,
    check_completeness,
    depolarizing_kraus,
    kraus_set,
    lift_two_qutrit,
    noiseless_kraus,
    phase_damping_kraus,
    single_qutrit_kraus,
)
from noisy_rsp.game import initial_state
from noisy_rsp.linalg import max_abs

ALPHAS = np.round(np.linspace(0, 1, 11), 12)
BUILDERS = {
    "ad": amplitude_damping_kraus,
    "pd": phase_damping_kraus,
    "dep": depolarizing_kraus,
}


@pytest.mark.parametrize("name", sorted(BUILDERS))
@pytest.mark.parametrize("alpha", [0.0, 0.3, 0.5, 1.0])
def test_constructors_match_reference_matrices(name, alpha):
    ours = BUILDERS[name](alpha).operators
    ref = np.array(oracle.KRAUS[name](alpha))
    assert ours.shape == ref.shape
    assert max_abs(ours - ref) < 1e-15


@pytest.mark.parametrize("name,count", [("ad", 3), ("pd", 2), ("dep", 9)])
def test_operator_counts(name, count):
    k = BUILDERS[name](0.4)
    assert len(k) == count and k.dim == 3
    assert len(lift_two_qutrit(k)) == count**2


@pytest.mark.parametrize("name", sorted(BUILDERS))
@pytest.mark.parametrize("alpha", [0, 0.25, 0.5, 0.75, 1])
def test_completeness(name, alpha):
    k = BUILDERS[name](alpha)
    assert check_completeness(k) < 1e-12
    assert check_completeness(lift_two_qutrit(k)) < 1e-12


def test_incomplete_set_residual():
    assert check_completeness(np.sqrt(0.5) * np.eye(3)) == pytest.approx(0.5)


@pytest.mark.parametrize("alpha", [-0.1, 1.1, float("nan")])
@pytest.mark.parametrize("name", sorted(BUILDERS))
def test_alpha_out_of_range(name, alpha):
    with pytest.raises(ValueError):
        BUILDERS[name](alpha)


def test_zero_noise_limits():
    ad = amplitude_damping_kraus(0).operators
    assert max_abs(ad[0] - np.eye(3)) == 0 and max_abs(ad[1:]) == 0
    pd = phase_damping_kraus(0).operators
    assert max_abs(pd[0] - np.eye(3)) == 0 and max_abs(pd[1]) == 0
    dep = depolarizing_kraus(0).operators
    assert max_abs(dep[0] - np.eye(3)) == 0 and max_abs(dep[1:]) == 0


def test_full_amplitude_damping_sends_everything_to_ground():
    k = amplitude_damping_kraus(1.0)
    ground = np.zeros((3, 3))
    ground[0, 0] = 1
    for level in range(3):
        rho = np.zeros((3, 3), dtype=complex)
        rho[level, level] = 1
        assert max_abs(apply_channel(rho, k) - ground) < 1e-15


def test_full_depolarizing_transition_probabilities():
    k = depolarizing_kraus(1.0)
    for level in range(3):
        rho = np.zeros((3, 3), dtype=complex)
        rho[level, level] = 1
        diag = np.diag(apply_channel(rho, k)).real
        assert diag[level] == pytest.approx(1 / 4)
        assert diag[(level + 1) % 3] == pytest.approx(3 / 8)
        assert diag[(level - 1) % 3] == pytest.approx(3 / 8)


def test_lift_of_noiseless_is_identity():
    lifted = lift_two_qutrit(noiseless_kraus())
    assert len(lifted) == 1 and max_abs(lifted.operators[0] - np.eye(9)) == 0


def test_lift_ordering_is_alice_major():
    k = amplitude_damping_kraus(0.3)
    lifted = lift_two_qutrit(k)
    assert max_abs(lifted.operators[1] - np.kron(k.operators[0], k.operators[1])) == 0
    assert max_abs(lifted.operators[3] - np.kron(k.operators[1], k.operators[0])) == 0


def test_lifted_depolarizing_is_unital():
    k = kraus_set("dep", 0.6)
    assert len(k) == 81
    mixed = np.eye(9) / 9
    assert max_abs(apply_channel(mixed, k) - mixed) < 1e-15


def test_lift_rejects_two_qutrit_input():
    with pytest.raises(ValueError):
        lift_two_qutrit(kraus_set("ad", 0.1))


def test_apply_noiseless_is_identity(rng):
    rho = random_state(rng)
    assert max_abs(apply_channel(rho, kraus_set("none", 0)) - rho) < 1e-15


def test_full_damping_of_entangled_state():
    out = apply_channel(initial_state(), kraus_set("ad", 1.0))
    expected = np.zeros((9, 9))
    expected[0, 0] = 1
    assert max_abs(out - expected) < 1e-15


@pytest.mark.parametrize("alpha", [0.0, 0.2, 0.7, 1.0])
def test_phase_damping_keeps_entangled_diagonal(alpha):
    out = apply_channel(initial_state(), kraus_set("pd", alpha))
    assert np.allclose(np.diag(out).real[[0, 4, 8]], 1 / 3, atol=1e-15)


def test_apply_matches_loop_oracle(rng):
    rho = random_state(rng)
    for name in ("ad", "pd", "dep"):
        single = oracle.KRAUS[name](0.35)
        lifted = [oracle.kron(a, b) for a in single for b in single]
        expected = np.array(oracle.apply(rho.tolist(), lifted))
        assert max_abs(apply_channel(rho, kraus_set(name, 0.35)) - expected) < 1e-13


def test_apply_rejects_incomplete_set():
    bad = KrausSet(np.array([0.5 * np.eye(9)]), 0.0, ChannelKind.NOISELESS)
    with pytest.raises(ValueError):
        apply_channel(np.eye(9) / 9, bad)


def test_apply_batched_equals_single(rng):
    states = np.stack([random_state(rng) for _ in range(4)])
    k = kraus_set("ad", 0.4)
    batched = apply_channel(states, k)
    for s, out in zip(states, batched):
        assert max_abs(apply_channel(s, k) - out) < 1e-15


def test_kraus_set_is_read_only():
    k = kraus_set("pd", 0.5)
    with pytest.raises(ValueError):
        k.operators[0, 0, 0] = 2.0


def test_channel_names():
    assert ChannelKind.parse("AD") is ChannelKind.AMPLITUDE_DAMPING
    assert ChannelKind.parse("Dep") is ChannelKind.DEPOLARIZING
    assert ChannelKind.parse("none") is ChannelKind.NOISELESS
    with pytest.raises(ValueError):
        ChannelKind.parse("bitflip")


def test_to_dict_round_trip():
    d = single_qutrit_kraus("pd", 0.5).to_dict()
    ops = np.array(d["operators"][1]["re"]) + 1j * np.array(d["operators"][1]["im"])
    assert max_abs(ops - phase_damping_kraus(0.5).operators[1]) == 0


# properties over the full alpha grid and random states


@pytest.mark.parametrize("kind", NOISY_KINDS)
def test_trace_hermiticity_positivity(kind, rng):
    states = np.stack([random_state(rng) for _ in range(50)])
    for alpha in ALPHAS:
        out = apply_channel(states, kraus_set(kind, alpha))
        assert np.max(np.abs(np.trace(out, axis1=1, axis2=2) - 1)) < 1e-12
        assert np.max(np.abs(out - out.conj().transpose(0, 2, 1))) < 1e-12
        assert np.linalg.eigvalsh(out).min() >= -1e-10


@pytest.mark.parametrize("kind", NOISY_KINDS)
def test_zero_alpha_is_identity_map(kind, rng):
    states = np.stack([random_state(rng) for _ in range(10)])
    assert np.max(np.abs(apply_channel(states, kraus_set(kind, 0.0)) - states)) < 1e-12


@given(st.floats(0, 1), st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_phase_damping_preserves_diagonal(alpha, seed):
    rho = random_state(np.random.default_rng(seed))
    out = apply_channel(rho, kraus_set("pd", alpha))
    assert np.max(np.abs(np.diag(out) - np.diag(rho))) < 1e-12
