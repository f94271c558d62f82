"""Single-photon detector and timing-electronics models.

Click streams are plain sorted ``numpy`` arrays of times in seconds wrapped in
:class:`TimeTagStream`. All randomness comes from an explicit
``numpy.random.Generator``; nothing touches global state.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

MODES = ("passive", "gated")


@dataclass(frozen=True)
class DetectorParams:
    efficiency: float
    dark_rate: float = 0.0  # Hz (inside gates for gated detectors)
    dead_time: float = 0.0
    mode: str = "passive"
    gate_width: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.efficiency <= 1.0:
            raise ValueError("efficiency must lie in [0, 1]")
        if self.dark_rate < 0 or self.dead_time < 0:
            raise ValueError("dark rate and dead time must be non-negative")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.mode == "gated" and not self.gate_width > 0:
            raise ValueError("gated detector needs a positive gate width")

    @property
    def dark_probability_per_gate(self) -> float:
        return 1.0 - math.exp(-self.dark_rate * self.gate_width)


@dataclass(frozen=True)
class TimeTagStream:
    channel: str
    times: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if t.ndim != 1:
            raise ValueError("time tags must be one-dimensional")
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise ValueError(f"tags on channel {self.channel!r} are not strictly increasing")
        object.__setattr__(self, "times", t)

    def __len__(self):
        return self.times.size

    def rate(self, duration: float) -> float:
        return len(self) / duration

    def to_rows(self):
        return [(self.channel, int(round(t * 1e12))) for t in self.times]


def write_time_tags(path, streams) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["channel", "time_ps"])
        for s in streams:
            w.writerows(s.to_rows())


def read_time_tags(path) -> dict[str, TimeTagStream]:
    by_channel: dict[str, list[int]] = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            by_channel.setdefault(row["channel"], []).append(int(row["time_ps"]))
    return {
        ch: TimeTagStream(ch, np.sort(np.array(v, dtype=float)) * 1e-12)
        for ch, v in by_channel.items()
    }


def _as_arrivals(arrivals) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(arrivals, tuple) and len(arrivals) == 2 and np.ndim(arrivals[0]) == 1:
        times, probs = arrivals
    else:
        a = np.asarray(arrivals, dtype=float).reshape(-1, 2)
        times, probs = a[:, 0], a[:, 1]
    times = np.asarray(times, dtype=float)
    probs = np.broadcast_to(np.asarray(probs, dtype=float), times.shape)
    if np.any((probs < 0) | (probs > 1)):
        raise ValueError("detection probabilities must lie in [0, 1]")
    return times, probs


def apply_dead_time(tags: TimeTagStream, dead_time: float) -> TimeTagStream:
    """Greedy non-paralyzable filter: keep a tag iff it is at least ``dead_time``
    after the last kept tag."""
    if dead_time <= 0 or len(tags) < 2:
        return tags
    keep = []
    last = -math.inf
    for i, t in enumerate(tags.times.tolist()):
        if t - last >= dead_time:
            keep.append(i)
            last = t
    return TimeTagStream(tags.channel, tags.times[keep])


def _first_in_gates(times: np.ndarray, gate_starts: np.ndarray, width: float) -> np.ndarray:
    """Earliest event inside each gate; events outside every gate are dropped."""
    if times.size == 0 or gate_starts.size == 0:
        return np.empty(0)
    idx = np.searchsorted(gate_starts, times, side="right") - 1
    ok = idx >= 0
    ok[ok] = times[ok] < gate_starts[idx[ok]] + width
    times, idx = times[ok], idx[ok]
    _, first = np.unique(idx, return_index=True)
    return np.sort(times[first])


def detect(arrivals, params: DetectorParams, rng: np.random.Generator, *, span=None,
           gates=None, channel: str = "det") -> TimeTagStream:
    """Turn photon arrivals into detector clicks.

    ``arrivals`` is a sequence of ``(time, probability)`` pairs or a
    ``(times, probabilities)`` tuple of arrays, sorted by time. Each arrival
    clicks with probability ``efficiency * p``. Passive detectors add Poisson
    dark counts over ``span`` (defaults to the arrival time range); gated ones
    take gate opening times in ``gates`` and click at most once per gate.
    """
    times, probs = _as_arrivals(arrivals)
    clicks = times[rng.random(times.size) < params.efficiency * probs]

    if params.mode == "gated":
        if gates is None:
            raise ValueError("gated detector needs gate opening times")
        gates = np.asarray(gates, dtype=float)
        n_dark = rng.poisson(params.dark_rate * params.gate_width, size=gates.size)
        dark = np.repeat(gates, n_dark) + rng.random(int(n_dark.sum())) * params.gate_width
        events = np.sort(np.concatenate([clicks, dark]))
        out = _first_in_gates(events, gates, params.gate_width)
    else:
        if span is None:
            span = (times[0], times[-1]) if times.size else (0.0, 0.0)
        t0, t1 = span
        n_dark = rng.poisson(params.dark_rate * max(t1 - t0, 0.0))
        dark = t0 + rng.random(n_dark) * (t1 - t0)
        out = np.unique(np.concatenate([clicks, dark]))

    return apply_dead_time(TimeTagStream(channel, out), params.dead_time)


def gated_trigger_chain(start: TimeTagStream, stop_arrivals, params_stop: DetectorParams,
                        gate_delay: float, rng: np.random.Generator,
                        channel: str = "stop") -> TimeTagStream:
    """Gated stop detector armed by each start tag.

    One gate of ``params_stop.gate_width`` opens at ``start + gate_delay``; a
    negative delay stands for a compensating fibre delay in front of the stop
    detector.
    """
    if params_stop.mode != "gated":
        raise ValueError("trigger chain needs a gated stop detector")
    gates = start.times + gate_delay
    if gates.size == 0:
        return TimeTagStream(channel)
    return detect(stop_arrivals, params_stop, rng, gates=gates, channel=channel)


@dataclass(frozen=True)
class TacHistogram:
    bin_width: float
    range: tuple[float, float]
    counts: np.ndarray

    @property
    def edges(self) -> np.ndarray:
        lo = int(round(self.range[0] / self.bin_width))
        return (lo + np.arange(self.counts.size + 1)) * self.bin_width

    @property
    def centers(self) -> np.ndarray:
        e = self.edges
        return 0.5 * (e[:-1] + e[1:])

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["bin_center_ps", "count"])
            for c, n in zip(self.centers, self.counts):
                w.writerow([f"{c * 1e12:.6g}", int(n)])


def tac_histogram(start: TimeTagStream, stop: TimeTagStream, bin_width: float,
                  range: float) -> TacHistogram:
    """Start-stop histogram over ``[-range, range)``; each start is paired with
    the first stop at or after ``start - range``, if that stop is in range."""
    nhalf = range / bin_width
    if abs(nhalf - round(nhalf)) > 1e-9 or round(nhalf) < 1:
        raise ValueError("range must be a positive whole number of bins")
    nhalf = int(round(nhalf))
    counts = np.zeros(2 * nhalf, dtype=np.int64)
    if len(start) and len(stop):
        s = start.times
        j = np.searchsorted(stop.times, s - range, side="left")
        ok = j < len(stop)
        d = stop.times[j[ok]] - s[ok]
        b = np.floor(d / bin_width).astype(np.int64) + nhalf
        b = b[(b >= 0) & (b < 2 * nhalf)]
        counts += np.bincount(b, minlength=2 * nhalf)
    return TacHistogram(bin_width, (-nhalf * bin_width, nhalf * bin_width), counts)


def window_bins(hist: TacHistogram, center: float, half_width: float) -> np.ndarray:
    if not half_width > 0:
        raise ValueError("window half-width must be positive")
    lo, hi = center - half_width, center + half_width
    eps = 1e-9 * hist.bin_width
    if lo < hist.range[0] - eps or hi > hist.range[1] + eps:
        raise ValueError("window extends outside the histogram range")
    c = hist.centers
    return (c >= lo - eps) & (c <= hi + eps)


def select_window(hist: TacHistogram, center: float, half_width: float) -> int:
    return int(hist.counts[window_bins(hist, center, half_width)].sum())
