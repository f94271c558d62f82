"""Visibility estimation from fringe records.

The fit model is ``N(phi) = a * (1 + V cos(phi + phi0))``. It is linear in the
basis ``{1, cos phi, sin phi}``, so the weighted normal equations are solved
directly and uncertainties come from the parameter covariance.
"""
from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np


class FitError(ValueError):
    pass


@dataclass(frozen=True)
class FringeRecord:
    phase: float
    counts: float
    starts: float
    integration_s: float

    def __post_init__(self):
        if self.counts < 0:
            raise ValueError("counts must be non-negative")
        if self.counts > self.starts + 1e-9:
            raise ValueError("counts cannot exceed the number of starts")


def write_records(path, records) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["phase_rad", "counts", "starts", "integration_s"])
        for r in records:
            w.writerow([repr(r.phase), _num(r.counts), _num(r.starts), repr(r.integration_s)])


def _num(x):
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def read_records(path) -> list[FringeRecord]:
    with open(path, newline="") as fh:
        return [
            FringeRecord(float(r["phase_rad"]), float(r["counts"]), float(r["starts"]),
                         float(r["integration_s"]))
            for r in csv.DictReader(fh)
        ]


@dataclass(frozen=True)
class FringeFit:
    offset: float
    amplitude: float
    phase0: float
    visibility: float
    sigma_visibility: float
    sigma_offset: float
    sigma_phase0: float
    chi2_reduced: float
    n_points: int
    second_harmonic: float = 0.0  # relative amplitude of a residual 2nd harmonic

    def to_json(self) -> dict:
        return {
            "offset": self.offset,
            "amplitude": self.amplitude,
            "phase0_rad": self.phase0,
            "visibility": self.visibility,
            "sigma_visibility": self.sigma_visibility,
            "chi2_reduced": self.chi2_reduced,
            "n_points": self.n_points,
        }

    def write_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=2)

    def model(self, phase):
        return self.offset * (1.0 + self.visibility * np.cos(np.asarray(phase) + self.phase0))


def _design(phases: np.ndarray, harmonics: int = 1) -> np.ndarray:
    cols = [np.ones_like(phases)]
    for h in range(1, harmonics + 1):
        cols += [np.cos(h * phases), np.sin(h * phases)]
    return np.column_stack(cols)


def fit_fringe(records) -> FringeFit:
    """Weighted sinusoidal least squares with Poisson weights ``1/max(counts, 1)``."""
    records = list(records)
    if len(records) < 4:
        raise FitError(f"need at least 4 records, got {len(records)}")
    phi = np.array([r.phase for r in records], dtype=float)
    n = np.array([r.counts for r in records], dtype=float)

    wrapped = np.sort(np.mod(phi, 2 * np.pi))
    distinct = np.unique(np.round(wrapped, 12))
    if distinct.size < 3:
        raise FitError("degenerate design: fewer than 3 distinct phases modulo 2 pi")
    gaps = np.diff(np.concatenate([distinct, [distinct[0] + 2 * np.pi]]))
    if 2 * np.pi - gaps.max() <= np.pi:
        raise FitError("phases must span more than pi")

    w = 1.0 / np.maximum(n, 1.0)
    X = _design(phi)
    A = X.T @ (X * w[:, None])
    try:
        cov = np.linalg.inv(A)
    except np.linalg.LinAlgError as exc:
        raise FitError("degenerate design matrix") from exc
    beta = cov @ (X.T @ (w * n))
    a, bc, bs = beta
    if not a > 0:
        raise FitError(f"fitted offset is not positive ({a:.4g}); pathological data")

    b = math.hypot(bc, bs)
    V = b / a
    phase0 = math.atan2(-bs, bc)
    resid = n - X @ beta
    dof = len(n) - 3
    chi2r = float(np.sum(w * resid**2) / dof) if dof > 0 else float("nan")

    # dV/d(a, bc, bs)
    if b > 0:
        g = np.array([-b / a**2, bc / (a * b), bs / (a * b)])
        gphi = np.array([0.0, bs / b**2, -bc / b**2])
        sigma_phi = math.sqrt(max(gphi @ cov @ gphi, 0.0))
    else:
        # V is at the boundary; use the radial uncertainty of the amplitude
        g = np.array([0.0, 1.0 / a, 0.0])
        sigma_phi = math.pi
    sigma_V = math.sqrt(max(g @ cov @ g, 0.0))

    second = 0.0
    if len(n) >= 6:
        X2 = _design(phi, 2)
        beta2, *_ = np.linalg.lstsq(X2 * np.sqrt(w)[:, None], n * np.sqrt(w), rcond=None)
        second = float(math.hypot(beta2[3], beta2[4]) / beta2[0]) if beta2[0] > 0 else 0.0

    return FringeFit(
        offset=float(a),
        amplitude=float(b),
        phase0=float(phase0),
        visibility=float(V),
        sigma_visibility=float(sigma_V),
        sigma_offset=float(math.sqrt(cov[0, 0])),
        sigma_phase0=float(sigma_phi),
        chi2_reduced=chi2r,
        n_points=len(n),
        second_harmonic=second,
    )


def write_plot_data(path, records, fit: FringeFit) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["phase_rad", "counts", "fit_value"])
        for r in records:
            w.writerow([repr(r.phase), _num(r.counts), repr(float(fit.model(r.phase)))])


def visibility_from_extrema(nmax: float, nmin: float) -> float:
    if nmax < nmin or nmin < 0:
        raise ValueError("need nmax >= nmin >= 0")
    if nmax == 0:
        raise ValueError("visibility undefined for an all-zero fringe")
    return (nmax - nmin) / (nmax + nmin)


@dataclass(frozen=True)
class CorrectedVisibility:
    visibility: float
    raw: float
    clamped: bool


def accidental_corrected_visibility(v_fit: float, signal_rate: float,
                                    accidental_rate: float) -> CorrectedVisibility:
    """Undo the dilution of a fringe by a flat accidental background."""
    if signal_rate <= 0 or accidental_rate < 0:
        raise ValueError("need signal_rate > 0 and accidental_rate >= 0")
    raw = v_fit * (1.0 + accidental_rate / signal_rate)
    if raw > 1.0:
        warnings.warn(f"corrected visibility {raw:.4f} exceeds 1; clamped", stacklevel=2)
        return CorrectedVisibility(1.0, raw, True)
    return CorrectedVisibility(raw, raw, False)


@dataclass(frozen=True)
class Verdict:
    distance_sigma: float
    compatible: bool
    k: float

    def to_json(self):
        return asdict(self)


def compare_to_reference(fit: FringeFit | tuple[float, float], reference_v: float,
                         reference_sigma: float, k: float = 2.0) -> Verdict:
    """Distance between a fitted visibility and a reference value in combined sigmas.

    ``fit`` may be a :class:`FringeFit` or a plain ``(V, sigma_V)`` pair.
    """
    v, s = (fit.visibility, fit.sigma_visibility) if isinstance(fit, FringeFit) else fit
    combined = math.hypot(s, reference_sigma)
    if combined == 0:
        d = 0.0 if v == reference_v else math.inf
    else:
        d = abs(v - reference_v) / combined
    return Verdict(d, d <= k, k)
