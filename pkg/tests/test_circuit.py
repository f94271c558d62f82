import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ideal_franson
from fransonlab.circuit import (
    SLOT,
    Attenuator,
    CircuitError,
    FaradayMirror,
    FiberSpool,
    OpticalCircuit,
    PswChannel,
    PulsedSource,
    UnbalancedInterferometer,
    apply_path_mismatch,
    enumerate_paths,
    evaluate,
    franson_joint_probability,
    franson_peaks,
    interfering_slot,
    plugandplay_detection_probability,
    random_circuit,
    relative_delay_distribution,
)
from fransonlab.units import Wavelength, group_index_for_delay_per_km

phase = st.floats(-4 * math.pi, 4 * math.pi, allow_nan=False)


def mach_zehnder(phi=0.0):
    return OpticalCircuit((PulsedSource(Wavelength(1550e-9)), UnbalancedInterferometer(1e-9, phi, id="mz")))


def plug_and_play(phi=0.0, transmission=1.0, mu=1.0, km=27.0):
    n = group_index_for_delay_per_km(5e-6)
    return OpticalCircuit((
        PulsedSource(Wavelength(1550e-9), mu=mu),
        UnbalancedInterferometer(10e-9, phi, long_arm=(PswChannel(0.01, transmission, id="psw"),),
                                 phase_pass="return", id="mz"),
        FiberSpool(km, n),
        FaradayMirror(),
    ))


def test_franson_has_four_joint_paths_of_quarter_amplitude(franson_ideal):
    rows = enumerate_paths(franson_ideal, 2)
    assert sorted(r[0].name for r in rows) == ["L|L", "L|S", "S|L", "S|S"]
    for _, amp in rows:
        assert abs(amp) == pytest.approx(0.25, abs=1e-15)


def test_mach_zehnder_paths():
    phi = 0.7
    rows = enumerate_paths(mach_zehnder(phi), 1)
    amps = {r[0].name: r[1] for r in rows}
    assert amps["S"] == pytest.approx(0.5, abs=1e-15)
    assert amps["L"] == pytest.approx(0.5 * cmath.exp(1j * phi), abs=1e-15)


def test_plug_and_play_path_structure():
    rows = enumerate_paths(plug_and_play(), 1)
    assert sorted(r[0].name for r in rows) == ["LL", "LS", "SL", "SS"]
    slots = [r[0].slots[0] for r in rows]
    assert len(set(slots)) == 3
    state = evaluate(plug_and_play())
    key = interfering_slot(state)
    assert sorted(c.label.name for c in state.outcomes[key]) == ["LS", "SL"]


def test_photon_count_mismatch_rejected(franson_ideal):
    with pytest.raises(CircuitError):
        enumerate_paths(franson_ideal, 1)


@pytest.mark.parametrize("phi_sum,expected", [(0.0, 0.25), (math.pi, 0.0)])
def test_franson_central_peak(phi_sum, expected):
    assert franson_joint_probability(phi_sum / 2, phi_sum / 2, "central", ideal_franson()) == pytest.approx(
        expected, abs=1e-15)


@given(phase, phase)
def test_franson_closed_form(pa, pb):
    c = ideal_franson()
    assert franson_joint_probability(pa, pb, "central", c) == pytest.approx(
        (1 + math.cos(pa + pb)) / 8, abs=1e-12)
    for side in ("early", "late"):
        assert franson_joint_probability(pa, pb, side, c) == pytest.approx(1 / 16, abs=1e-12)


@given(phase, phase)
def test_franson_matches_squared_path_sums(pa, pb):
    c = ideal_franson(pa, pb)
    by_slot = {}
    for label, amp in enumerate_paths(c, 2):
        rel = label.slots[1] - label.slots[0]
        by_slot[rel] = by_slot.get(rel, 0) + amp
    peaks = franson_peaks(evaluate(c), c)
    for name, rel in peaks.items():
        assert franson_joint_probability(pa, pb, name, c) == pytest.approx(abs(by_slot[rel]) ** 2, abs=1e-12)


@given(phase, phase)
def test_phase_periodicity(pa, pb):
    c = ideal_franson()
    for peak in ("early", "central", "late"):
        p0 = franson_joint_probability(pa, pb, peak, c)
        assert franson_joint_probability(pa + 2 * math.pi, pb, peak, c) == pytest.approx(p0, abs=1e-12)
        assert franson_joint_probability(pa, pb + 2 * math.pi, peak, c) == pytest.approx(p0, abs=1e-12)


@given(phase, phase)
def test_side_peaks_are_flat(pa, pb):
    c = ideal_franson()
    h = 1e-6
    for peak in ("early", "late"):
        p = franson_joint_probability(pa, pb, peak, c)
        assert abs(franson_joint_probability(pa + h, pb, peak, c) - p) / h < 1e-6
        assert abs(franson_joint_probability(pa, pb + h, peak, c) - p) / h < 1e-6


def test_franson_peak_positions(franson_ideal):
    peaks = franson_peaks(evaluate(franson_ideal), franson_ideal)
    assert peaks == {"early": -1200, "central": 0, "late": 1200}


def test_path_mismatch():
    c = ideal_franson()
    s = evaluate(c)
    assert apply_path_mismatch(s, 0.0, 0.9e-3).cross_factor == 1.0
    half = apply_path_mismatch(s, 0.45e-3, 0.9e-3)
    assert half.cross_factor == pytest.approx(0.5, rel=1e-12)
    far = apply_path_mismatch(s, 50e-3, 0.9e-3)
    rel = relative_delay_distribution(far)
    # interference gone: the central peak holds the two incoherent halves
    assert rel[0] == pytest.approx(2 / 16, abs=1e-12)
    assert franson_joint_probability(0, math.pi, "central", c, 50e-3, 0.9e-3) == pytest.approx(1 / 8, abs=1e-12)


def test_finite_pump_coherence_reduces_visibility():
    c = ideal_franson(pump_coherence_time=1.2e-9)
    top = franson_joint_probability(0, 0, "central", c)
    bottom = franson_joint_probability(0, math.pi, "central", c)
    v = (top - bottom) / (top + bottom)
    assert v == pytest.approx(math.exp(-4 * math.log(2)), rel=1e-9)


def test_plug_and_play_oracles():
    p_pi = plugandplay_detection_probability(math.pi, plug_and_play(mu=5.0))
    assert p_pi == pytest.approx(0.0, abs=1e-15)
    state = evaluate(plug_and_play())
    mean0 = state.probability(interfering_slot(state))
    p0 = plugandplay_detection_probability(0.0, plug_and_play(mu=1.0 / mean0))
    assert p0 == pytest.approx(1 - math.exp(-1), abs=1e-12)


@pytest.mark.parametrize("t", [1.0, 0.5, 0.1, 0.05])
def test_plug_and_play_visibility_independent_of_waveguide(t):
    c = plug_and_play(transmission=t)
    hi = plugandplay_detection_probability(0.0, c)
    lo = plugandplay_detection_probability(math.pi, c)
    assert (hi - lo) / (hi + lo) == pytest.approx(1.0, abs=1e-9)


def test_interfering_paths_are_27km_apart_in_plasmon_time():
    state = evaluate(plug_and_play())
    contribs = state.outcomes[interfering_slot(state)]
    times = sorted(t for c in contribs for t in c.label.sp_times[0])
    assert times[-1] - times[0] == pytest.approx(270e-6, rel=1e-9)


@pytest.mark.parametrize("photons", [1, 2])
def test_conservation_random_circuits(photons):
    rng = np.random.default_rng(7 + photons)
    worst = 0.0
    for _ in range(150):
        s = evaluate(random_circuit(rng, photons))
        worst = max(worst, abs(s.total_probability - 1.0))
    assert worst < 1e-12


def test_conservation_with_path_mismatch():
    rng = np.random.default_rng(3)
    for _ in range(50):
        s = apply_path_mismatch(evaluate(random_circuit(rng, 2)), float(rng.uniform(0, 1e-3)), 0.9e-3)
        # dephasing only removes interference; probabilities stay in [0, 1]
        assert all(-1e-15 <= s.probability(k) <= 1 + 1e-15 for k in s.outcomes)


@pytest.mark.parametrize("build,msg", [
    (lambda: OpticalCircuit((PulsedSource(Wavelength(1550e-9)), Attenuator(0.5, id="a"), Attenuator(0.5, id="a"))),
     "duplicate"),
    (lambda: OpticalCircuit((PulsedSource(Wavelength(1550e-9)), UnbalancedInterferometer(0.0))), "unbalanced"),
    (lambda: OpticalCircuit((PulsedSource(Wavelength(1550e-9)), FaradayMirror(id="m1"), FaradayMirror(id="m2"))),
     "cycle"),
    (lambda: OpticalCircuit((PulsedSource(Wavelength(1550e-9)), FaradayMirror(), Attenuator(0.5))), "dangling"),
    (lambda: OpticalCircuit((Attenuator(0.5),)), "source"),
])
def test_malformed_circuits(build, msg):
    with pytest.raises(CircuitError, match=msg):
        evaluate(build())


def test_component_bound_to_missing_photon():
    c = OpticalCircuit((PulsedSource(Wavelength(1550e-9)), Attenuator(0.5, photon=1)))
    with pytest.raises(CircuitError):
        evaluate(c)


def test_slots_are_exact_multiples():
    rows = enumerate_paths(plug_and_play(), 1)
    for label, _ in rows:
        assert label.delays[0] / SLOT == pytest.approx(label.slots[0], abs=1e-3)
