"""Exact path-sum amplitudes for one and two photons in time-bin circuits.

A circuit is an ordered list of components. Each component acts on one photon
(``photon=0`` or ``1``) or on every photon (``photon=None``). A Faraday mirror
folds the list: after it the photon retraces the preceding components in
reverse order, which is how the auto-compensating two-pass interferometer is
described.

Every way a photon can leave the circuit is tracked as an explicit exit mode:
the analyzed output (``"out"``), the unused port of each interferometer, and the
loss mode of each lossy element. Amplitudes reaching the same exit mode in the
same arrival slot add coherently, so total probability over all exits is a
genuine unitarity check rather than a complement.

For photon pairs from a CW pump the absolute emission time is unknown, so joint
outcomes are keyed by arrival slots relative to the earlier photon. The common
time shift that is discarded this way still limits interference through the
pump coherence time.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Mapping

import numpy as np

from .units import (
    DEFAULT_GROUP_INDEX,
    MediumParams,
    Wavelength,
    complementary_wavelength,
    one_way_delay,
    sp_lifetime,
)

SLOT = 1e-12  # arrival-slot quantum, seconds
OUT = "out"
FOUR_LN2 = 4.0 * math.log(2.0)


class CircuitError(ValueError):
    def __init__(self, message: str, component_id: str | None = None):
        self.component_id = component_id
        prefix = f"[{component_id}] " if component_id else ""
        super().__init__(prefix + message)


def to_slot(t: float) -> int:
    return int(round(t / SLOT))


def gaussian_overlap(offset: float, width: float) -> float:
    """Overlap of two Gaussian wavepackets of FWHM ``width`` displaced by ``offset``."""
    if math.isinf(width):
        return 1.0
    if width <= 0:
        return 0.0 if offset else 1.0
    return math.exp(-FOUR_LN2 * (offset / width) ** 2)


# --- components ---------------------------------------------------------------


@dataclass(frozen=True)
class SpdcSource:
    pump: Wavelength
    signal: Wavelength
    pump_coherence_time: float = 1e-6
    pair_rate: float = 0.0
    id: str = "source"
    photon: int | None = None

    @property
    def idler(self) -> Wavelength:
        return complementary_wavelength(self.signal, self.pump)


@dataclass(frozen=True)
class PulsedSource:
    wavelength: Wavelength
    rep_rate: float = 5e6
    pulse_length: float = 1.2e-9
    mu: float = 1.0
    id: str = "laser"
    photon: int | None = None


@dataclass(frozen=True)
class BraggFilterPair:
    """Two cascaded Bragg gratings routing signal and idler to separate arms."""

    center: Wavelength
    fwhm: float
    pump: Wavelength
    reflectivity: float = 1.0
    id: str = "bragg"
    photon: int | None = None

    @property
    def centers(self) -> tuple[Wavelength, Wavelength]:
        return self.center, complementary_wavelength(self.center, self.pump)

    @property
    def transmission(self) -> float:
        return self.reflectivity

    delay = 0.0


@dataclass(frozen=True)
class PswChannel:
    length: float
    transmission: float = 0.5
    delay: float | None = None
    id: str = "psw"
    photon: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.transmission <= 1.0:
            raise CircuitError("transmission must lie in [0, 1]", self.id)
        if self.delay is None:
            object.__setattr__(self, "delay", sp_lifetime(self.length, MediumParams()))


@dataclass(frozen=True)
class FiberSpool:
    length_km: float
    group_index: float = DEFAULT_GROUP_INDEX
    attenuation_db_per_km: float = 0.0
    id: str = "spool"
    photon: int | None = None

    @property
    def delay(self) -> float:
        return one_way_delay(self.length_km * 1e3, MediumParams(self.group_index))

    @property
    def transmission(self) -> float:
        return 10.0 ** (-self.attenuation_db_per_km * self.length_km / 10.0)


@dataclass(frozen=True)
class Attenuator:
    transmission: float
    delay: float = 0.0
    id: str = "attenuator"
    photon: int | None = None


@dataclass(frozen=True)
class Coupler:
    """Beam splitter passing ``ratio`` of the power along the circuit; the rest exits."""

    ratio: float = 0.5
    id: str = "coupler"
    photon: int | None = None

    @property
    def transmission(self) -> float:
        return self.ratio

    delay = 0.0


@dataclass(frozen=True)
class FaradayMirror:
    id: str = "mirror"
    photon: int | None = None


@dataclass(frozen=True)
class UnbalancedInterferometer:
    """Two 50/50-type couplers with a short and a long arm.

    ``split`` is the power fraction sent into the long arm by each coupler.
    ``phase`` sits on the long arm and is applied on the passes selected by
    ``phase_pass`` (``"both"``, ``"forward"`` or ``"return"``). ``long_arm``
    holds components embedded in the long arm (e.g. a plasmon waveguide).
    """

    delay: float
    phase: float = 0.0
    split: float = 0.5
    loss_short: float = 0.0
    loss_long: float = 0.0
    long_arm: tuple = ()
    phase_pass: str = "both"
    id: str = "interferometer"
    photon: int | None = None


PASSTHROUGH = (BraggFilterPair, PswChannel, FiberSpool, Attenuator, Coupler)
SOURCES = (SpdcSource, PulsedSource)


@dataclass(frozen=True)
class OpticalCircuit:
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def source(self):
        found = [c for c in self.components if isinstance(c, SOURCES)]
        if len(found) != 1:
            raise CircuitError(f"circuit needs exactly one source, found {len(found)}")
        return found[0]

    @property
    def photon_count(self) -> int:
        return 2 if isinstance(self.source, SpdcSource) else 1

    def interferometers(self, photon: int | None = None) -> list[UnbalancedInterferometer]:
        return [
            c
            for c in self.components
            if isinstance(c, UnbalancedInterferometer)
            and (photon is None or c.photon is None or c.photon == photon)
        ]

    def component(self, cid: str):
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def with_phases(self, phases: Mapping[str, float]) -> "OpticalCircuit":
        comps = []
        for c in self.components:
            if c.id in phases:
                if not isinstance(c, UnbalancedInterferometer):
                    raise CircuitError("phase can only be set on an interferometer", c.id)
                c = replace(c, phase=float(phases[c.id]))
            comps.append(c)
        return OpticalCircuit(tuple(comps))

    def replace_component(self, cid: str, **changes) -> "OpticalCircuit":
        return OpticalCircuit(
            tuple(replace(c, **changes) if c.id == cid else c for c in self.components)
        )

    def validate(self, photon_count: int | None = None) -> None:
        source = self.source
        n = self.photon_count
        if photon_count is not None and photon_count != n:
            raise CircuitError(
                f"{type(source).__name__} emits {n} photon(s), asked for {photon_count}", source.id
            )
        seen = set()
        for c in self.components:
            if c.id in seen:
                raise CircuitError("duplicate component id", c.id)
            seen.add(c.id)
            if c.photon is not None and not 0 <= c.photon < n:
                raise CircuitError(f"component bound to photon {c.photon} of {n}", c.id)
            if isinstance(c, UnbalancedInterferometer):
                if c.delay < SLOT:
                    raise CircuitError("interferometer must be unbalanced (delay >= 1 slot)", c.id)
                if not 0.0 < c.split < 1.0:
                    raise CircuitError("split must lie strictly between 0 and 1", c.id)
                if c.phase_pass not in ("both", "forward", "return"):
                    raise CircuitError(f"unknown phase_pass {c.phase_pass!r}", c.id)
                for sub in c.long_arm:
                    if not isinstance(sub, PASSTHROUGH):
                        raise CircuitError("only passive elements may sit inside an arm", sub.id)
                    _check_transmission(sub)
            elif isinstance(c, PASSTHROUGH):
                _check_transmission(c)
        for p in range(n):
            seq = self._photon_components(p)
            mirrors = [i for i, c in enumerate(seq) if isinstance(c, FaradayMirror)]
            if len(mirrors) > 1:
                raise CircuitError("more than one mirror closes a cycle", seq[mirrors[1]].id)
            if mirrors and mirrors[0] != len(seq) - 1:
                raise CircuitError(
                    "component after the mirror is never reached (dangling port)",
                    seq[mirrors[0] + 1].id,
                )

    def _photon_components(self, photon: int) -> list:
        return [
            c
            for c in self.components
            if not isinstance(c, SOURCES) and (c.photon is None or c.photon == photon)
        ]

    def unfolded(self, photon: int) -> list[tuple[object, str]]:
        """Traversal order for one photon as ``(component, pass)`` pairs."""
        seq = self._photon_components(photon)
        if seq and isinstance(seq[-1], FaradayMirror):
            before = seq[:-1]
            return [(c, "forward") for c in before] + [(seq[-1], "mirror")] + [
                (c, "return") for c in reversed(before)
            ]
        return [(c, "forward") for c in seq]


def _check_transmission(c) -> None:
    t = c.transmission
    if not 0.0 <= t <= 1.0:
        raise CircuitError("transmission must lie in [0, 1]", c.id)


# --- single-photon propagation --------------------------------------------------


@dataclass(frozen=True)
class PhotonPath:
    arms: tuple[str, ...]
    delay: float
    amplitude: complex
    exit: tuple  # (label, occurrence) ; label "out" for the analyzed port
    sp_times: tuple[float, ...] = ()

    @property
    def slot(self) -> int:
        return to_slot(self.delay)

    @property
    def analyzed(self) -> bool:
        return self.exit[0] == OUT


@dataclass
class _Branch:
    arms: tuple
    delay: float
    amplitude: complex
    sp_times: tuple = ()


def _pass_through(branch: _Branch, comp, occurrence, exits: list) -> _Branch:
    t = comp.transmission
    if t < 1.0:
        exits.append(
            PhotonPath(
                branch.arms,
                branch.delay,
                branch.amplitude * math.sqrt(1.0 - t),
                (f"{comp.id}:loss", occurrence),
                branch.sp_times,
            )
        )
    sp = branch.sp_times + (branch.delay,) if isinstance(comp, PswChannel) else branch.sp_times
    return _Branch(branch.arms, branch.delay + comp.delay, branch.amplitude * math.sqrt(t), sp)


def _interfere(branch: _Branch, ifm: UnbalancedInterferometer, pass_, occurrence, exits):
    r = math.sqrt(ifm.split)
    t = math.sqrt(1.0 - ifm.split)
    phase_on = ifm.phase_pass == "both" or ifm.phase_pass == pass_
    out = []

    # short arm
    a = branch.amplitude * t
    if ifm.loss_short > 0:
        exits.append(
            PhotonPath(branch.arms + ("S",), branch.delay, a * math.sqrt(ifm.loss_short),
                       (f"{ifm.id}:short_loss", occurrence), branch.sp_times)
        )
        a *= math.sqrt(1.0 - ifm.loss_short)
    short = _Branch(branch.arms + ("S",), branch.delay, a, branch.sp_times)

    # long arm
    a = branch.amplitude * r
    if ifm.loss_long > 0:
        exits.append(
            PhotonPath(branch.arms + ("L",), branch.delay, a * math.sqrt(ifm.loss_long),
                       (f"{ifm.id}:long_loss", occurrence), branch.sp_times)
        )
        a *= math.sqrt(1.0 - ifm.loss_long)
    if phase_on:
        a *= cmath.exp(1j * ifm.phase)
    long = _Branch(branch.arms + ("L",), branch.delay, a, branch.sp_times)
    for j, sub in enumerate(ifm.long_arm):
        long = _pass_through(long, sub, (occurrence, j), exits)
    long.delay += ifm.delay

    # recombination: analyzed port gets t*r from both arms, the other port t^2 and -r^2
    for arm, to_out, to_dark in ((short, r, t), (long, t, -r)):
        exits.append(
            PhotonPath(arm.arms, arm.delay, arm.amplitude * to_dark,
                       (f"{ifm.id}:dark", occurrence), arm.sp_times)
        )
        out.append(_Branch(arm.arms, arm.delay, arm.amplitude * to_out, arm.sp_times))
    return out


def propagate_photon(circuit: OpticalCircuit, photon: int = 0, stop_before: int | None = None):
    """All exit paths of one photon. With ``stop_before`` the live branches at that
    traversal index are returned instead of the exits."""
    exits: list[PhotonPath] = []
    live = [_Branch((), 0.0, 1.0 + 0j)]
    for k, (comp, pass_) in enumerate(circuit.unfolded(photon)):
        if stop_before is not None and k == stop_before:
            return live
        if isinstance(comp, UnbalancedInterferometer):
            live = [b2 for b in live for b2 in _interfere(b, comp, pass_, k, exits)]
        elif isinstance(comp, PASSTHROUGH):
            live = [_pass_through(b, comp, k, exits) for b in live]
        elif isinstance(comp, FaradayMirror):
            pass
        else:
            raise CircuitError(f"unsupported component {type(comp).__name__}", comp.id)
    if stop_before is not None:
        return live
    exits.extend(PhotonPath(b.arms, b.delay, b.amplitude, (OUT, None), b.sp_times) for b in live)
    return exits


def live_flux(circuit: OpticalCircuit, traversal_index: int, photon: int = 0) -> float:
    """Probability that the photon is still in the circuit just before a traversal step."""
    live = propagate_photon(circuit, photon, stop_before=traversal_index)
    by_slot: dict[int, complex] = {}
    for b in live:
        by_slot[to_slot(b.delay)] = by_slot.get(to_slot(b.delay), 0j) + b.amplitude
    return sum(abs(a) ** 2 for a in by_slot.values())


# --- states ----------------------------------------------------------------------


@dataclass(frozen=True)
class PathLabel:
    arms: tuple[tuple[str, ...], ...]
    delays: tuple[float, ...]
    ports: tuple[str, ...]
    slots: tuple[int, ...]
    sp_times: tuple[tuple[float, ...], ...] = ()

    @property
    def name(self) -> str:
        return "|".join("".join(a) or "-" for a in self.arms)

    @property
    def delay(self) -> float:
        return max(self.delays)


@dataclass(frozen=True)
class Contribution:
    label: PathLabel
    amplitude: complex
    shift: float  # common time shift discarded from the key


@dataclass(frozen=True)
class TimeBinState:
    """Joint outcome -> contributing path amplitudes.

    An outcome key is a tuple with one ``(exit_label, occurrence, slot)`` entry per
    photon. Cross terms between contributions of one outcome are weighted by the
    pump-coherence overlap of their common shifts and by ``cross_factor``.
    """

    outcomes: Mapping[tuple, tuple[Contribution, ...]]
    photon_count: int
    pump_coherence_time: float = math.inf
    cross_factor: float = 1.0

    def _weights(self, contribs) -> np.ndarray:
        s = np.array([c.shift for c in contribs])
        if math.isinf(self.pump_coherence_time):
            g = np.ones((len(s), len(s)))
        else:
            g = np.exp(-FOUR_LN2 * ((s[:, None] - s[None, :]) / self.pump_coherence_time) ** 2)
        off = ~np.eye(len(s), dtype=bool)
        g[off] *= self.cross_factor
        return g

    def probability(self, key) -> float:
        contribs = self.outcomes.get(key, ())
        if not contribs:
            return 0.0
        a = np.array([c.amplitude for c in contribs])
        if len(a) == 1:
            return float(abs(a[0]) ** 2)
        return float(np.real(a @ self._weights(contribs) @ a.conj()))

    def amplitude(self, key) -> complex:
        """Fully coherent sum of the contributions to ``key``."""
        return complex(sum(c.amplitude for c in self.outcomes.get(key, ())))

    @staticmethod
    def is_analyzed(key) -> bool:
        return all(part[0] == OUT for part in key)

    def analyzed_keys(self) -> list:
        return sorted(k for k in self.outcomes if self.is_analyzed(k))

    @property
    def lost_probability(self) -> float:
        return sum(self.probability(k) for k in self.outcomes if not self.is_analyzed(k))

    @property
    def analyzed_probability(self) -> float:
        return sum(self.probability(k) for k in self.analyzed_keys())

    @property
    def total_probability(self) -> float:
        return self.analyzed_probability + self.lost_probability


def _build_state(circuit: OpticalCircuit) -> TimeBinState:
    circuit.validate()
    n = circuit.photon_count
    per_photon = [propagate_photon(circuit, p) for p in range(n)]
    outcomes: dict[tuple, list[Contribution]] = {}
    if n == 1:
        for p in per_photon[0]:
            key = ((p.exit[0], p.exit[1], p.slot),)
            label = PathLabel((p.arms,), (p.delay,), (p.exit[0],), (p.slot,), (p.sp_times,))
            outcomes.setdefault(key, []).append(Contribution(label, p.amplitude, 0.0))
        return TimeBinState({k: tuple(v) for k, v in outcomes.items()}, 1)

    src = circuit.source
    for pa in per_photon[0]:
        for pb in per_photon[1]:
            sa, sb = pa.slot, pb.slot
            m = min(sa, sb)
            key = ((pa.exit[0], pa.exit[1], sa - m), (pb.exit[0], pb.exit[1], sb - m))
            label = PathLabel(
                (pa.arms, pb.arms),
                (pa.delay, pb.delay),
                (pa.exit[0], pb.exit[0]),
                (sa - m, sb - m),
                (pa.sp_times, pb.sp_times),
            )
            amp = pa.amplitude * pb.amplitude
            outcomes.setdefault(key, []).append(Contribution(label, amp, min(pa.delay, pb.delay)))
    return TimeBinState(
        {k: tuple(v) for k, v in outcomes.items()}, 2, pump_coherence_time=src.pump_coherence_time
    )


def evaluate(circuit: OpticalCircuit) -> TimeBinState:
    return _build_state(circuit)


def enumerate_paths(
    circuit: OpticalCircuit, photon_count: int, include_unanalyzed: bool = False
) -> list[tuple[PathLabel, complex]]:
    """Every path alternative with its exact amplitude.

    By default only paths ending at the analyzed port(s) are listed, ordered by
    arrival slots and then arm labels.
    """
    circuit.validate(photon_count)
    state = evaluate(circuit)
    rows = []
    for key, contribs in state.outcomes.items():
        if include_unanalyzed or state.is_analyzed(key):
            rows.extend((c.label, c.amplitude) for c in contribs)
    rows.sort(key=lambda r: (r[0].ports != (OUT,) * photon_count, r[0].slots, r[0].arms))
    return rows


def apply_path_mismatch(state: TimeBinState, mismatch: float, coherence_length: float) -> TimeBinState:
    """Damp interference cross terms by the Gaussian overlap of two wavepackets
    offset by ``mismatch`` (same length units as ``coherence_length``)."""
    if not coherence_length > 0:
        raise ValueError("coherence length must be positive")
    return replace(state, cross_factor=state.cross_factor * gaussian_overlap(mismatch, coherence_length))


# --- experiment-level quantities -------------------------------------------------


def _franson_interferometers(circuit: OpticalCircuit):
    if not isinstance(circuit.source, SpdcSource):
        raise CircuitError("Franson arrangement needs a photon-pair source", circuit.source.id)
    ifa = [c for c in circuit.components if isinstance(c, UnbalancedInterferometer) and c.photon == 0]
    ifb = [c for c in circuit.components if isinstance(c, UnbalancedInterferometer) and c.photon == 1]
    shared = [c for c in circuit.components if isinstance(c, UnbalancedInterferometer) and c.photon is None]
    if len(ifa) != 1 or len(ifb) != 1 or shared:
        raise CircuitError("Franson arrangement needs exactly one interferometer per photon")
    return ifa[0], ifb[0]


def franson_peaks(state: TimeBinState, circuit: OpticalCircuit) -> dict[str, int]:
    """Relative-delay slots (stop minus start) of the early, central and late peaks."""
    ifa, ifb = _franson_interferometers(circuit)
    ref = None
    for key in state.analyzed_keys():
        for c in state.outcomes[key]:
            if all(set(arms) <= {"S"} for arms in c.label.arms):
                ref = c.label.slots[1] - c.label.slots[0]
    if ref is None:
        raise CircuitError("no short-short path reaches the analyzed ports")
    return {"early": ref - to_slot(ifa.delay), "central": ref, "late": ref + to_slot(ifb.delay)}


def relative_delay_distribution(state: TimeBinState) -> dict[int, float]:
    """Probability that both photons reach the analyzed ports, by relative slot."""
    out: dict[int, float] = {}
    for key in state.analyzed_keys():
        rel = key[1][2] - key[0][2]
        out[rel] = out.get(rel, 0.0) + state.probability(key)
    return out


def franson_joint_probability(phi_a: float, phi_b: float, peak: str, circuit: OpticalCircuit,
                              mismatch: float = 0.0, coherence_length: float = math.inf) -> float:
    if peak not in ("early", "central", "late"):
        raise ValueError(f"peak must be early, central or late, got {peak!r}")
    ifa, ifb = _franson_interferometers(circuit)
    state = evaluate(circuit.with_phases({ifa.id: phi_a, ifb.id: phi_b}))
    if mismatch:
        state = apply_path_mismatch(state, mismatch, coherence_length)
    slot = franson_peaks(state, circuit)[peak]
    return relative_delay_distribution(state).get(slot, 0.0)


def _plugandplay_parts(circuit: OpticalCircuit):
    if not isinstance(circuit.source, PulsedSource):
        raise CircuitError("two-pass arrangement needs a pulsed source", circuit.source.id)
    ifms = circuit.interferometers()
    mirrors = [c for c in circuit.components if isinstance(c, FaradayMirror)]
    if len(ifms) != 1 or len(mirrors) != 1:
        raise CircuitError("two-pass arrangement needs one interferometer and one mirror")
    ifm = ifms[0]
    if sum(isinstance(c, PswChannel) for c in ifm.long_arm) != 1:
        raise CircuitError("the plasmon waveguide must sit exactly once in the long arm", ifm.id)
    return ifm, mirrors[0]


def interfering_slot(state: TimeBinState) -> tuple:
    """Analyzed outcome fed by more than one path (the short-long / long-short pair)."""
    keys = [k for k in state.analyzed_keys() if len(state.outcomes[k]) > 1]
    if len(keys) != 1:
        raise CircuitError(f"expected one interfering arrival slot, found {len(keys)}")
    return keys[0]


def plugandplay_detection_probability(phi: float, circuit: OpticalCircuit, efficiency: float = 1.0,
                                      dark_probability: float = 0.0) -> float:
    """Probability of at least one click in the interfering slot for one weak coherent pulse."""
    ifm, _ = _plugandplay_parts(circuit)
    state = evaluate(circuit.with_phases({ifm.id: phi}))
    key = interfering_slot(state)
    mean = circuit.source.mu * efficiency * state.probability(key)
    return 1.0 - math.exp(-mean - dark_probability)


def path_table(circuit: OpticalCircuit) -> list[dict]:
    rows = []
    for label, amp in enumerate_paths(circuit, circuit.photon_count):
        rows.append(
            {
                "path": label.name,
                "delay_ps": [round(d / SLOT, 3) for d in label.delays],
                "slot": label.slots,
                "port": "/".join(label.ports),
                "re": amp.real,
                "im": amp.imag,
                "prob": abs(amp) ** 2,
            }
        )
    return rows


def random_circuit(rng: np.random.Generator, photon_count: int | None = None) -> OpticalCircuit:
    """Randomized well-formed circuit, for conservation checks."""
    n = photon_count or int(rng.integers(1, 3))
    delay = lambda: float(rng.integers(1, 5000)) * SLOT  # noqa: E731
    trans = lambda: float(rng.uniform(0.0, 1.0))  # noqa: E731
    if n == 2:
        comps = [
            SpdcSource(Wavelength(773e-9), Wavelength(1546e-9),
                       pump_coherence_time=float(rng.choice([math.inf, rng.uniform(1e-10, 1e-8)]))),
            BraggFilterPair(Wavelength(1546e-9), 0.8e-9, Wavelength(773e-9), reflectivity=trans()),
        ]
        for p in (0, 1):
            comps.append(PswChannel(float(rng.uniform(1e-3, 2e-2)), trans(), id=f"psw{p}", photon=p))
            for j in range(int(rng.integers(1, 3))):
                comps.append(UnbalancedInterferometer(
                    delay(), float(rng.uniform(0, 2 * math.pi)), float(rng.uniform(0.05, 0.95)),
                    float(rng.uniform(0, 0.5)), float(rng.uniform(0, 0.5)),
                    id=f"if{p}{j}", photon=p))
            comps.append(Attenuator(trans(), delay(), id=f"att{p}", photon=p))
        return OpticalCircuit(tuple(comps))
    comps = [PulsedSource(Wavelength(1550e-9), mu=1.0), Coupler(trans())]
    for j in range(int(rng.integers(1, 3))):
        comps.append(UnbalancedInterferometer(
            delay(), float(rng.uniform(0, 2 * math.pi)), float(rng.uniform(0.05, 0.95)),
            float(rng.uniform(0, 0.5)), float(rng.uniform(0, 0.5)),
            long_arm=(PswChannel(0.01, trans(), id=f"psw{j}"),),
            phase_pass=str(rng.choice(["both", "forward", "return"])), id=f"if{j}"))
    comps.append(FiberSpool(float(rng.uniform(0, 5)), attenuation_db_per_km=float(rng.uniform(0, 1))))
    if rng.random() < 0.5:
        comps.append(FaradayMirror())
    return OpticalCircuit(tuple(comps))
