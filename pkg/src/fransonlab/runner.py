"""Experiment orchestration: preset circuits, phase scans and Monte Carlo trials.

Randomness
----------
Every random stream is derived from the single configuration seed as
``SeedSequence(seed, spawn_key=(point, shard, channel))`` where ``point`` is
the phase-step index, ``shard`` the worker shard and ``channel`` one of
:data:`SOURCE`, :data:`D1`, :data:`D2`. Results depend on the shard count (it
is part of the configuration) but never on how many threads execute the shards.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from functools import cached_property

import numpy as np

from .analysis import FringeRecord
from .circuit import (
    SLOT,
    Attenuator,
    BraggFilterPair,
    FaradayMirror,
    FiberSpool,
    OpticalCircuit,
    PswChannel,
    PulsedSource,
    SpdcSource,
    UnbalancedInterferometer,
    Coupler,
    apply_path_mismatch,
    evaluate,
    franson_peaks,
    interfering_slot,
    live_flux,
    relative_delay_distribution,
)
from .config import ConfigError, ExperimentConfig
from .detection import (
    TacHistogram,
    detect,
    gated_trigger_chain,
    select_window,
    tac_histogram,
    window_bins,
)
from .units import (
    MediumParams,
    Wavelength,
    coherence_length_in_medium,
    coherence_time,
    one_way_delay,
    sp_lifetime,
    spool_round_trip_delay,
)

SOURCE, D1, D2 = 0, 1, 2


class SimulationError(RuntimeError):
    pass


def stream(seed: int, point: int, shard: int, channel: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(point, shard, channel)))


def _max_workers(shards: int) -> int:
    cap = os.environ.get("FRANSONLAB_THREADS")
    n = int(cap) if cap else (os.cpu_count() or 1)
    return max(1, min(n, shards))


def _map_shards(fn, shards: int):
    workers = _max_workers(shards)
    if workers == 1:
        return [fn(k) for k in range(shards)]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(fn, range(shards)))


def _engines(engine: str) -> tuple[str, ...]:
    return ("analytic", "montecarlo") if engine == "both" else (engine,)


def _poisson_times(rng: np.random.Generator, rate: float, t0: float, duration: float) -> np.ndarray:
    """Sorted event times of a homogeneous Poisson process on ``[t0, t0 + duration)``."""
    if rate <= 0 or duration <= 0:
        return np.empty(0)
    n = rng.poisson(rate * duration)
    return t0 + np.sort(rng.random(n)) * duration


# --- Experiment A: remote plasmon entanglement ------------------------------------


def build_franson_circuit(setup: dict, collection_b: float = 1.0, phase_b: float = 0.0,
                          pair_rate: float = 0.0) -> OpticalCircuit:
    medium = MediumParams(setup["group_index"], setup["psw_group_velocity"])
    pump = Wavelength(setup["pump_wavelength"])
    signal = Wavelength(setup["signal_wavelength"])
    lead = one_way_delay(setup["path_mismatch"], medium)
    return OpticalCircuit((
        SpdcSource(pump, signal, setup["pump_coherence_time"], pair_rate),
        BraggFilterPair(signal, setup["bragg_fwhm"], pump, setup["bragg_reflectivity"]),
        Attenuator(1.0, lead, id="lead_b", photon=1),
        PswChannel(setup["psw1_length"], setup["psw1_transmission"],
                   sp_lifetime(setup["psw1_length"], medium), id="psw1", photon=0),
        PswChannel(setup["psw2_length"], setup["psw2_transmission"],
                   sp_lifetime(setup["psw2_length"], medium), id="psw2", photon=1),
        Attenuator(setup["collection_a"], id="collection_a", photon=0),
        Attenuator(collection_b, id="collection_b", photon=1),
        UnbalancedInterferometer(setup["imbalance"], setup["phase_a"], setup["split"], id="if1", photon=0),
        UnbalancedInterferometer(setup["imbalance"], phase_b, setup["split"], id="if2", photon=1),
    ))


def filtered_coherence_length(setup: dict) -> float:
    tau = coherence_time(Wavelength(setup["signal_wavelength"]), setup["bragg_fwhm"])
    return coherence_length_in_medium(tau, MediumParams(setup["group_index"]))


@dataclass(frozen=True)
class FransonPoint:
    """Analytic two-photon statistics at one phase setting."""

    phase: float
    p_a: float  # photon A reaches the analyzed output of IF1
    p_b: float
    rel: dict  # relative slot (stop - start) -> P(both analyzed)
    peaks: dict  # early/central/late -> relative slot

    @property
    def p_both(self) -> float:
        return sum(self.rel.values())

    def peak(self, name: str) -> float:
        return self.rel.get(self.peaks[name], 0.0)


def franson_point(setup: dict, phase_b: float, collection_b: float = 1.0) -> FransonPoint:
    circuit = build_franson_circuit(setup, collection_b, phase_b)
    state = evaluate(circuit)
    if setup["imbalance_mismatch"]:
        state = apply_path_mismatch(state, setup["imbalance_mismatch"], filtered_coherence_length(setup))
    p_a = p_b = 0.0
    for key in state.outcomes:
        pr = state.probability(key)
        if key[0][0] == "out":
            p_a += pr
        if key[1][0] == "out":
            p_b += pr
    return FransonPoint(phase_b, p_a, p_b, relative_delay_distribution(state), franson_peaks(state, circuit))


@dataclass(frozen=True)
class RateReport:
    pair_rate: float
    d1_dark_rate: float  # raw Poisson rate before dead time
    d1_singles: float  # observed, photons on
    d1_noise: float  # observed, photons blocked
    dead_time_throughput: float
    photon_fraction: float  # share of D1 starts caused by photons
    collection_b: float
    window_width: float
    true_coincidence_rate: float  # fringe-averaged, central window
    accidental_rate: float  # central window
    coincidence_rate: float
    d2_singles: float

    @property
    def accidental_ratio(self) -> float:
        return self.accidental_rate / self.true_coincidence_rate if self.true_coincidence_rate else math.inf

    def to_json(self) -> dict:
        d = asdict(self)
        d["accidental_ratio"] = self.accidental_ratio
        return d


def _window_width(tac: dict) -> float:
    nb = int(round(2 * tac["range"] / tac["bin_width"]))
    h = TacHistogram(tac["bin_width"], (-tac["range"], tac["range"]), np.zeros(nb))
    # the window is centred on the central peak, which sits within one bin of zero
    return float(window_bins(h, 0.0, tac["window_half_width"]).sum()) * tac["bin_width"]


def _throughput(rate: float, dead_time: float) -> float:
    return 1.0 / (1.0 + rate * dead_time)


def derive_rates(config: ExperimentConfig) -> RateReport:
    """Analytic singles, coincidence and accidental rates for the Franson preset.

    With ``calibration.auto_tune`` the raw D1 dark rate and the pair rate are
    solved so that the observed (dead-time filtered) D1 noise and singles hit
    their targets, and an unset ``collection_b`` is solved to hit the target
    mean coincidence rate.
    """
    if config.preset_name != "franson_plasmon":
        raise ConfigError("rate derivation applies to the franson_plasmon preset", "preset")
    s = config.setup
    cal = config.resolved["calibration"]
    d1 = config.resolved["detectors"]["d1"]
    d2 = config.resolved["detectors"]["d2"]
    tau = d1["dead_time"]
    eta1, eta2 = d1["efficiency"], d2["efficiency"]
    w = _window_width(config.resolved["tac"])

    probe = franson_point(s, 0.0, 1.0)
    probe_pi = franson_point(s, math.pi, 1.0)
    p_a = probe.p_a
    pb1 = probe.p_b
    pc1 = 0.5 * (probe.peak("central") + probe_pi.peak("central"))

    if cal["auto_tune"]:
        for name, target in (("d1_noise", cal["d1_noise"]), ("d1_singles", cal["d1_singles"])):
            if target * tau >= 1:
                raise ConfigError("target rate unreachable with this dead time", f"calibration.{name}")
        dark = cal["d1_noise"] / (1 - cal["d1_noise"] * tau)
        total_raw = cal["d1_singles"] / (1 - cal["d1_singles"] * tau)
        photon_raw = total_raw - dark
        if photon_raw <= 0:
            raise ConfigError("singles target must exceed the noise target", "calibration.d1_singles")
        if eta1 * p_a <= 0:
            raise ConfigError("no photon can reach D1", "detectors.d1.efficiency")
        pair_rate = photon_raw / (eta1 * p_a)
        if d1["dark_rate"] is not None:
            dark = d1["dark_rate"]
            photon_raw = total_raw - dark
            pair_rate = photon_raw / (eta1 * p_a)
        if s["pair_rate"] is not None:
            pair_rate = s["pair_rate"]
            photon_raw = pair_rate * eta1 * p_a
    else:
        dark = d1["dark_rate"]
        pair_rate = s["pair_rate"]
        photon_raw = pair_rate * eta1 * p_a

    r1 = photon_raw + dark
    thr = _throughput(r1, tau)
    starts = r1 * thr
    frac = photon_raw / r1 if r1 > 0 else 0.0
    noise = dark * _throughput(dark, tau)

    cb = s["collection_b"]
    if cb is None:
        if not cal["auto_tune"]:
            raise ConfigError("collection_b is required when auto_tune is off", "setup.collection_b")
        per_start = cal["coincidence_rate"] / starts if starts > 0 else math.inf
        slope = frac * eta2 * pc1 / p_a + eta2 * pair_rate * pb1 * w
        cb = (per_start - d2["dark_rate"] * w) / slope if slope > 0 else math.inf
        if not 0 < cb <= 1:
            raise ConfigError(
                f"coincidence target needs collection_b = {cb:.4g}, outside (0, 1]",
                "calibration.coincidence_rate",
            )

    true_rate = starts * frac * eta2 * (pc1 * cb) / p_a if p_a > 0 else 0.0
    b_rate = d2["dark_rate"] + eta2 * pair_rate * pb1 * cb
    acc = starts * b_rate * w
    gw = d2["gate_width"]
    # partner anywhere in the gate (all three peaks) or a background click
    p_partner = eta2 * probe.p_both * cb / p_a if p_a > 0 else 0.0
    d2_singles = starts * (frac * p_partner + (1 - frac * p_partner) * (1 - math.exp(-b_rate * gw)))

    return RateReport(
        pair_rate=pair_rate,
        d1_dark_rate=dark,
        d1_singles=starts,
        d1_noise=noise,
        dead_time_throughput=thr,
        photon_fraction=frac,
        collection_b=cb,
        window_width=w,
        true_coincidence_rate=true_rate,
        accidental_rate=acc,
        coincidence_rate=true_rate + acc,
        d2_singles=d2_singles,
    )


class FransonExperiment:
    """Calibrated Experiment A model shared by the analytic and Monte Carlo engines."""

    def __init__(self, config: ExperimentConfig):
        if config.preset_name != "franson_plasmon":
            raise ConfigError("expected the franson_plasmon preset", "preset")
        self.config = config
        self.setup = config.setup
        lc = filtered_coherence_length(self.setup)
        if lc >= min(self.setup["psw1_length"], self.setup["psw2_length"]):
            raise ConfigError(f"filtered coherence length {lc * 1e3:.3g} mm is not below the waveguide length",
                              "setup.bragg_fwhm")
        self.tac = config.resolved["tac"]
        self.rates = derive_rates(config)
        self.d1 = config.detector("d1", dark_rate=self.rates.d1_dark_rate)
        self.d2 = config.detector("d2")
        self.window_width = self.rates.window_width
        if self.d2.gate_width < self.window_width:
            raise ConfigError("gate is narrower than the coincidence window", "detectors.d2.gate_width")

    def point(self, phase_b: float) -> FransonPoint:
        return franson_point(self.setup, phase_b, self.rates.collection_b)

    @cached_property
    def central_offset(self) -> float:
        return self.point(0.0).peaks["central"] * SLOT

    @property
    def gate_delay(self) -> float:
        gd = self.tac["gate_delay"]
        return self.central_offset - 0.5 * self.d2.gate_width if gd is None else gd

    @cached_property
    def circuit(self) -> OpticalCircuit:
        return build_franson_circuit(self.setup, self.rates.collection_b, 0.0, self.rates.pair_rate)

    def expected(self, phase_b: float, duration: float) -> tuple[float, float]:
        """Expected (central-window coincidences, starts) over ``duration`` seconds."""
        p = self.point(phase_b)
        r = self.rates
        starts = r.d1_singles * duration
        partner = self.d2.efficiency * p.peak("central") / p.p_a
        background = (self.d2.dark_rate + self.d2.efficiency * r.pair_rate * p.p_b) * self.window_width
        return starts * (r.photon_fraction * partner + background), starts

    def arrivals(self, p: FransonPoint, rng: np.random.Generator, t0: float, duration: float,
                 correlated: bool = True):
        """Photon arrival times at the two analyzed outputs.

        Pairs are a Poisson process; each pair is marked by its outcome class
        (both photons out with a given relative delay, only A, only B). With
        ``correlated=False`` the two photons of a pair are decoupled, which
        removes the interference and the pairing while keeping singles rates.
        """
        rp = self.rates.pair_rate
        central = p.peaks["central"] * SLOT
        if correlated:
            rels = sorted(p.rel)
            probs = [p.rel[k] for k in rels]
            both = sum(probs)
            classes = [("both", k * SLOT) for k in rels] + [("a", None), ("b", None)]
            probs = probs + [max(p.p_a - both, 0.0), max(p.p_b - both, 0.0)]
        else:
            classes = [("a", None), ("b", None)]
            probs = [p.p_a, p.p_b]
        total = sum(probs)
        t = _poisson_times(rng, rp * total, t0, duration)
        mark = rng.choice(len(classes), size=t.size, p=np.array(probs) / total)
        kinds = np.array([c[0] for c in classes])
        offset = np.array([c[1] if c[1] is not None else central for c in classes])
        has_a = kinds[mark] != "b"
        has_b = kinds[mark] != "a"
        a_times = t[has_a]
        b_times = np.sort(t[has_b] + offset[mark[has_b]])
        return a_times, b_times

    def simulate(self, phase_b: float, seed: int, point: int, shard: int, t0: float,
                 duration: float, correlated: bool = True):
        p = self.point(phase_b)
        a, b = self.arrivals(p, stream(seed, point, shard, SOURCE), t0, duration, correlated)
        d1 = detect((a, 1.0), self.d1, stream(seed, point, shard, D1), span=(t0, t0 + duration),
                    channel="d1")
        d2 = gated_trigger_chain(d1, (b, 1.0), self.d2, self.gate_delay, stream(seed, point, shard, D2),
                                 channel="d2")
        return d1, d2

    def histogram(self, d1, d2):
        return tac_histogram(d1, d2, self.tac["bin_width"], self.tac["range"])

    def measure(self, phase_b: float, seed: int, point: int, duration: float, shards: int = 1,
                correlated: bool = True) -> tuple[int, int]:
        """Monte Carlo (central-window coincidences, starts) summed over shards."""
        span = duration / shards

        def one(k):
            d1, d2 = self.simulate(phase_b, seed, point, k, k * span, span, correlated)
            hist = self.histogram(d1, d2)
            return select_window(hist, self.central_offset, self.tac["window_half_width"]), len(d1)

        res = _map_shards(one, shards)
        return sum(r[0] for r in res), sum(r[1] for r in res)


def run_franson_scan(config: ExperimentConfig) -> dict[str, list[FringeRecord]]:
    """Phase scan of IF2 with IF1 fixed; one record list per requested engine."""
    if config.preset_name != "franson_plasmon":
        raise ConfigError("run_franson_scan needs the franson_plasmon preset", "preset")
    exp = FransonExperiment(config)
    T = config.resolved["integration_s"]
    out: dict[str, list[FringeRecord]] = {}
    phases = config.phase_scan.phases()
    for engine in _engines(config.engine):
        rows = []
        for i, phi in enumerate(phases):
            if engine == "analytic":
                counts, starts = exp.expected(phi, T)
            else:
                counts, starts = exp.measure(phi, config.seed, i, T, config.shards)
            rows.append(FringeRecord(float(phi), counts, starts, T))
        out[engine] = rows
    return out


# --- Experiment B: one plasmon at two instants --------------------------------------


def build_temporal_circuit(setup: dict, mu: float = 1.0, phase: float = 0.0) -> OpticalCircuit:
    medium = MediumParams(psw_group_velocity=setup["psw_group_velocity"])
    psw = PswChannel(setup["psw_length"], setup["psw_transmission"],
                     sp_lifetime(setup["psw_length"], medium), id="psw")
    return OpticalCircuit((
        PulsedSource(Wavelength(setup["wavelength"]), setup["rep_rate"], setup["pulse_length"], mu),
        Coupler(setup["coupler_ratio"], id="bs"),
        UnbalancedInterferometer(setup["imbalance"], phase, setup["split"], long_arm=(psw,),
                                 phase_pass="return", id="mz"),
        FiberSpool(setup["spool_km"], setup["spool_group_index"], setup["spool_attenuation_db_per_km"],
                   id="spool"),
        FaradayMirror(id="fm"),
    ))


def _return_pass_index(circuit: OpticalCircuit) -> int:
    for k, (comp, pass_) in enumerate(circuit.unfolded(0)):
        if comp.id == "mz" and pass_ == "return":
            return k
    raise SimulationError("circuit has no return pass through the interferometer")


def arm_photon_number(circuit: OpticalCircuit) -> float:
    """Mean photons in short plus long arm (before the waveguide) on the return pass."""
    mz = circuit.component("mz")
    flux = live_flux(circuit, _return_pass_index(circuit))
    arms = (1 - mz.split) * (1 - mz.loss_short) + mz.split * (1 - mz.loss_long)
    return circuit.source.mu * flux * arms


def normalized_mu(setup: dict) -> float:
    """Launched mean photon number meeting the ``mu_target`` arm normalization."""
    if setup["mu"] is not None:
        return setup["mu"]
    per_photon = arm_photon_number(build_temporal_circuit(setup, 1.0))
    if per_photon <= 0:
        raise SimulationError("no light returns to the interferometer")
    return setup["mu_target"] / per_photon


@dataclass(frozen=True)
class TemporalPoint:
    phase: float
    mean_photons: float  # photons per pulse reaching the detector in the interfering slot
    slot_delay: float
    sp_separation: float  # time between the two plasmon excitations of the interfering paths


class TemporalExperiment:
    def __init__(self, config: ExperimentConfig):
        if config.preset_name != "temporal_superposition":
            raise ConfigError("expected the temporal_superposition preset", "preset")
        self.config = config
        self.setup = config.setup
        self.mu = normalized_mu(self.setup)
        self.detector = config.detector("d")
        period = 1.0 / self.setup["rep_rate"]
        self.blocked_gates = (
            max(math.ceil(self.detector.dead_time / period - 1e-9) - 1, 0) if self.detector.dead_time > 0 else 0
        )

    def circuit(self, phase: float = 0.0) -> OpticalCircuit:
        return build_temporal_circuit(self.setup, self.mu, phase)

    def point(self, phase: float) -> TemporalPoint:
        state = evaluate(self.circuit(phase))
        key = interfering_slot(state)
        contribs = state.outcomes[key]
        sp = sorted(t for c in contribs for t in c.label.sp_times[0])
        return TemporalPoint(phase, self.mu * state.probability(key), key[0][2] * SLOT, sp[-1] - sp[0])

    def click_probability(self, phase: float) -> float:
        m = self.point(phase).mean_photons
        return 1.0 - math.exp(-self.detector.efficiency * m - self.detector.dark_rate * self.detector.gate_width)

    def expected(self, phase: float, pulses: int) -> float:
        p = self.click_probability(phase)
        return pulses * p / (1.0 + self.blocked_gates * p)

    def measure(self, phase: float, seed: int, point: int, pulses: int, shards: int = 1) -> int:
        tp = self.point(phase)
        period = 1.0 / self.setup["rep_rate"]
        sizes = [pulses // shards + (k < pulses % shards) for k in range(shards)]
        firsts = np.concatenate([[0], np.cumsum(sizes)[:-1]])

        def one(k):
            rng = stream(seed, point, k, SOURCE)
            t = (firsts[k] + np.arange(sizes[k])) * period + tp.slot_delay
            n = rng.poisson(tp.mean_photons, size=t.size)
            arrivals = np.repeat(t, n)
            gates = t - 0.5 * self.detector.gate_width
            clicks = detect((arrivals, 1.0), self.detector, stream(seed, point, k, D1), gates=gates, channel="d")
            return len(clicks)

        return sum(_map_shards(one, shards))


def run_temporal_superposition_scan(config: ExperimentConfig) -> dict[str, list[FringeRecord]]:
    if config.preset_name != "temporal_superposition":
        raise ConfigError("run_temporal_superposition_scan needs the temporal_superposition preset", "preset")
    exp = TemporalExperiment(config)
    n = config.resolved["pulses_per_point"]
    T = n / config.setup["rep_rate"]
    out: dict[str, list[FringeRecord]] = {}
    for engine in _engines(config.engine):
        rows = []
        for i, phi in enumerate(config.phase_scan.phases()):
            counts = exp.expected(phi, n) if engine == "analytic" else exp.measure(phi, config.seed, i, n, config.shards)
            rows.append(FringeRecord(float(phi), counts, n, T))
        out[engine] = rows
    return out


def run_scan(config: ExperimentConfig) -> dict[str, list[FringeRecord]]:
    if config.preset_name == "franson_plasmon":
        return run_franson_scan(config)
    return run_temporal_superposition_scan(config)


def preset_circuit(config: ExperimentConfig) -> OpticalCircuit:
    """Circuit of a preset at the first phase of its scan (used by the path table)."""
    phi = float(config.phase_scan.phases()[0])
    if config.preset_name == "franson_plasmon":
        cb = config.setup["collection_b"]
        if cb is None:
            cb = derive_rates(config).collection_b
        return build_franson_circuit(config.setup, cb, phi)
    return build_temporal_circuit(config.setup, normalized_mu(config.setup), phi)


# --- physical criteria ------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: float
    threshold: float
    detail: str


def sp_excitation_offset(setup: dict) -> float:
    """Time between plasmon excitation on the two waveguides for one pair."""
    circuit = build_franson_circuit(setup)
    state = evaluate(circuit)
    for contribs in state.outcomes.values():
        for c in contribs:
            ta, tb = c.label.sp_times
            if ta and tb:
                return abs(tb[0] - ta[0])
    raise SimulationError("no path excites both waveguides")


def physical_checks(config: ExperimentConfig) -> list[Check]:
    s = config.setup
    checks = []
    if config.preset_name == "franson_plasmon":
        lc = filtered_coherence_length(s)
        shortest = min(s["psw1_length"], s["psw2_length"])
        checks.append(Check("coherence_length_below_psw", lc < shortest, lc, shortest,
                            f"filtered coherence length {lc * 1e3:.3f} mm vs shortest waveguide {shortest * 1e3:.3g} mm"))
        dt = sp_excitation_offset(s)
        checks.append(Check("simultaneity", s["path_mismatch"] < 1e-3, s["path_mismatch"], 1e-3,
                            f"path mismatch {s['path_mismatch'] * 1e3:.3g} mm; plasmons excited {dt * 1e12:.3g} ps apart"))
        checks.append(Check("pump_coherence_exceeds_imbalance", s["pump_coherence_time"] > s["imbalance"],
                            s["pump_coherence_time"], s["imbalance"],
                            f"pump coherence {s['pump_coherence_time']:.3g} s vs imbalance {s['imbalance']:.3g} s"))
        tau = coherence_time(Wavelength(s["signal_wavelength"]), s["bragg_fwhm"])
        checks.append(Check("single_photon_coherence_below_imbalance", tau < s["imbalance"], tau, s["imbalance"],
                            f"filtered coherence time {tau * 1e12:.3g} ps vs imbalance {s['imbalance'] * 1e9:.3g} ns"))
    else:
        life = sp_lifetime(s["psw_length"], MediumParams(psw_group_velocity=s["psw_group_velocity"]))
        medium = MediumParams(s["spool_group_index"])
        ratios = [spool_round_trip_delay(km, medium) / life for km in s["spool_scan_km"]]
        top = max(ratios)
        km = s["spool_scan_km"][ratios.index(top)]
        checks.append(Check("delay_lifetime_ratio", top > 1e7, top, 1e7,
                            f"{km:g} km spool: delay {spool_round_trip_delay(km, medium) * 1e3:.4g} ms / "
                            f"lifetime {life * 1e12:.4g} ps = {top:.4g}"))
        mz = build_temporal_circuit(s).component("mz")
        once = sum(isinstance(c, PswChannel) for c in mz.long_arm) == 1
        checks.append(Check("psw_once_in_long_arm", once, 1.0 if once else 0.0, 1.0,
                            "waveguide placed in the long arm only"))
        checks.append(Check("time_bins_resolved", s["imbalance"] > s["pulse_length"], s["imbalance"],
                            s["pulse_length"], f"imbalance {s['imbalance'] * 1e9:.3g} ns vs pulse {s['pulse_length'] * 1e9:.3g} ns"))
    return checks
