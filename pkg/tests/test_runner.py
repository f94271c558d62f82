import math

import numpy as np
import pytest

from fransonlab.analysis import fit_fringe, visibility_from_extrema
from fransonlab.config import ConfigError, ExperimentConfig
from fransonlab.detection import detect
from fransonlab.runner import (
    FransonExperiment,
    TemporalExperiment,
    arm_photon_number,
    derive_rates,
    franson_point,
    physical_checks,
    run_franson_scan,
    run_temporal_superposition_scan,
    sp_excitation_offset,
    stream,
)

IDEAL_SETUP = {
    "bragg_reflectivity": 1.0, "psw1_transmission": 1.0, "psw2_transmission": 1.0,
    "collection_a": 1.0, "collection_b": 1.0, "imbalance_mismatch": 0.0, "path_mismatch": 0.0,
    "pump_coherence_time": 1.0,
}


@pytest.fixture(scope="module")
def franson():
    return ExperimentConfig.preset("franson_plasmon")


@pytest.fixture(scope="module")
def temporal():
    return ExperimentConfig.preset("temporal_superposition")


def test_ideal_window_probabilities(franson):
    setup = franson.with_overrides(setup=IDEAL_SETUP).setup
    assert franson_point(setup, 0.0).peak("central") == pytest.approx(0.25, abs=1e-12)
    assert franson_point(setup, math.pi).peak("central") == pytest.approx(0.0, abs=1e-12)


def test_derived_rates_hit_targets(franson):
    r = derive_rates(franson)
    assert r.d1_singles == pytest.approx(20e3, rel=1e-12)
    assert r.d1_noise == pytest.approx(5e3, rel=1e-12)
    assert r.coincidence_rate == pytest.approx(12.0, rel=1e-12)
    assert 0 < r.collection_b <= 1
    assert r.accidental_ratio < 0.05
    assert r.dead_time_throughput == pytest.approx(0.8)


def test_dark_only_rates(franson):
    cfg = franson.with_overrides(
        calibration={"auto_tune": False},
        setup={"pair_rate": 0.0, "collection_b": 1.0},
        detectors={"d1": {"dark_rate": 5e3, "dead_time": 0.0}},
    )
    r = derive_rates(cfg)
    assert r.d1_singles == 5e3
    assert r.true_coincidence_rate == 0


def test_unreachable_coincidence_target(franson):
    with pytest.raises(ConfigError):
        derive_rates(franson.with_overrides(calibration={"coincidence_rate": 1e5}))


def test_coherence_criterion_enforced(franson):
    with pytest.raises(ConfigError):
        FransonExperiment(franson.with_overrides(setup={"bragg_fwhm": "0.05 nm"}))


def test_mean_coincidence_rate_over_fringe(franson):
    cfg = franson.with_overrides(engine="analytic", phase_scan={"start": 0.0, "stop": 2 * math.pi, "steps": 16})
    recs = run_franson_scan(cfg)["analytic"]
    rate = sum(r.counts for r in recs) / sum(r.integration_s for r in recs)
    assert rate == pytest.approx(12.0, rel=1e-9)


def test_simulated_singles_and_noise(franson):
    exp = FransonExperiment(franson)
    d1, _ = exp.simulate(0.0, seed=1, point=0, shard=0, t0=0.0, duration=10.0)
    assert d1.rate(10.0) == pytest.approx(20e3, rel=0.05)
    noise = detect((np.empty(0), 1.0), exp.d1, stream(1, 0, 0, 1), span=(0.0, 10.0))
    assert noise.rate(10.0) == pytest.approx(5e3, rel=0.05)


def test_three_peaks_in_histogram(franson):
    exp = FransonExperiment(franson.with_overrides(tac={"gate_delay": "-2.9 ns"}, detectors={"d2": {"gate_width": "5.8 ns"}}))
    d1, d2 = exp.simulate(math.pi / 2, seed=3, point=0, shard=0, t0=0.0, duration=60.0)
    h = exp.histogram(d1, d2)
    c = exp.central_offset
    peaks = {name: exp_count for name, exp_count in (
        ("early", h.counts[np.abs(h.centers - (c - 1.2e-9)) < 300e-12].sum()),
        ("central", h.counts[np.abs(h.centers - c) < 300e-12].sum()),
        ("late", h.counts[np.abs(h.centers - (c + 1.2e-9)) < 300e-12].sum()),
    )}
    # at phase sum pi/2 the central peak carries twice a side peak
    for side in ("early", "late"):
        ratio = peaks["central"] / peaks[side]
        assert ratio == pytest.approx(2.0, rel=4 * math.sqrt(1 / peaks["central"] + 1 / peaks[side]))


def test_accidentals_match_interference_free_simulation(franson):
    exp = FransonExperiment(franson)
    T = 300.0
    n, starts = exp.measure(0.0, seed=9, point=0, duration=T, shards=1, correlated=False)
    expected = exp.rates.accidental_rate * starts / exp.rates.d1_singles
    assert abs(n - expected) <= 4 * math.sqrt(expected)


def test_reproducible_and_thread_independent(franson, monkeypatch):
    cfg = franson.with_overrides(engine="montecarlo", integration_s=2.0, phase_scan={"steps": 4})
    monkeypatch.setenv("FRANSONLAB_THREADS", "1")
    a = run_franson_scan(cfg)
    monkeypatch.setenv("FRANSONLAB_THREADS", "4")
    b = run_franson_scan(cfg)
    assert a == b
    assert run_franson_scan(cfg.with_overrides(seed=cfg.seed + 1)) != a


def test_analytic_is_shard_independent(temporal):
    a = run_temporal_superposition_scan(temporal.with_overrides(engine="analytic", shards=1))
    b = run_temporal_superposition_scan(temporal.with_overrides(engine="analytic", shards=7))
    assert a == b


def test_shard_merge_statistics(temporal):
    exp = TemporalExperiment(temporal)
    n = 50_000
    expected = exp.expected(0.3, n)
    chi2_critical = 37.566  # 0.99 quantile, 20 degrees of freedom
    for shards in (1, 4):
        counts = np.array([exp.measure(0.3, seed, 0, n, shards) for seed in range(20)])
        assert np.sum((counts - expected) ** 2 / expected) < chi2_critical


def test_mu_normalization(temporal):
    exp = TemporalExperiment(temporal)
    assert arm_photon_number(exp.circuit()) == pytest.approx(1.0, abs=1e-9)


def test_sp_separation_27km(temporal):
    assert TemporalExperiment(temporal).point(0.0).sp_separation == pytest.approx(270e-6, rel=1e-9)


def test_ideal_temporal_fringe(temporal):
    cfg = temporal.with_overrides(engine="analytic", detectors={"d": {"dark_rate": 0.0}},
                                  phase_scan={"start": 0.0, "stop": 2 * math.pi, "steps": 8})
    recs = run_temporal_superposition_scan(cfg)["analytic"]
    counts = [r.counts for r in recs]
    assert visibility_from_extrema(max(counts), min(counts)) == pytest.approx(1.0, abs=1e-12)


def test_default_temporal_visibility(temporal):
    recs = run_temporal_superposition_scan(temporal.with_overrides(engine="analytic"))["analytic"]
    assert fit_fringe(recs).visibility > 0.99


def test_dead_time_blocks_following_gates(temporal):
    exp = TemporalExperiment(temporal.with_overrides(detectors={"d": {"dead_time": "1 us"}}))
    assert exp.blocked_gates == 4
    p = exp.click_probability(0.0)
    assert exp.expected(0.0, 1000) == pytest.approx(1000 * p / (1 + 4 * p))


def test_simultaneity(franson):
    setup = franson.with_overrides(setup={"path_mismatch": "1 mm"}).setup
    assert sp_excitation_offset(setup) < 5e-12
    checks = {c.name: c for c in physical_checks(franson)}
    assert all(c.passed for c in checks.values())
    bad = {c.name: c for c in physical_checks(franson.with_overrides(setup={"path_mismatch": "5 mm"}))}
    assert not bad["simultaneity"].passed


def test_temporal_checks(temporal):
    checks = {c.name: c for c in physical_checks(temporal)}
    assert all(c.passed for c in checks.values())
    assert checks["delay_lifetime_ratio"].value == pytest.approx(2.48e7, rel=1e-12)


def test_wrong_preset_rejected(franson, temporal):
    with pytest.raises(ConfigError):
        run_franson_scan(temporal)
    with pytest.raises(ConfigError):
        run_temporal_superposition_scan(franson)
