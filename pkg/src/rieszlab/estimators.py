"""Monte Carlo estimators: pair correlations, number variance, the
logarithmic discrepancy term, and total-variation / Pinsker diagnostics.

Replica reductions are order-independent (numpy pairwise summation), so
serial and parallel folds agree to rounding.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _fast
from .core import (
    ArgumentError,
    DomainError,
    Kernel,
    NotApplicableError,
    PointConfiguration,
    Window,
    discrepancy,
    points_in_cube,
)
from .generators import ProcessModel, Seed, sample


@dataclass(frozen=True)
class GridSpec:
    """Uniform separation grid: signed [-v_max, v_max] in d=1 (n_bins even),
    radial [0, v_max] in the isotropic mode for d >= 2."""

    v_max: float
    n_bins: int

    def __post_init__(self) -> None:
        if not (self.v_max > 0.0 and self.n_bins >= 2):
            raise DomainError("grid spec requires v_max > 0 and n_bins >= 2")


@dataclass
class CorrelationEstimate:
    d: int
    centers: np.ndarray
    values: np.ndarray          # estimate of rho2(v) - 1 per bin
    stderr: np.ndarray
    n_replicas: int
    mode: str                   # "signed" or "radial"
    bin_width: float

    def to_csv(self, path) -> None:
        from ._io import write_csv

        write_csv(path, ("bin_center", "value", "stderr"),
                  zip(self.centers, self.values, self.stderr))


@dataclass
class VarianceCurve:
    entries: list[tuple[float, float, float]]  # (R, mean D_R^2, stderr)
    fitted_exponent: float
    exponent_ci: tuple[float, float]

    def to_csv(self, path) -> None:
        from ._io import write_csv

        write_csv(path, ("R", "var", "stderr"), self.entries)


@dataclass(frozen=True)
class TvReport:
    tv_lower: float
    pinsker_upper: float
    window_R: float
    satisfied: bool

    def to_json_dict(self) -> dict:
        return {
            "tv_lower": self.tv_lower,
            "pinsker_upper": self.pinsker_upper,
            "window_R": self.window_R,
            "satisfied": self.satisfied,
        }


@dataclass(frozen=True)
class IdentityCheck:
    """Both sides of the pair-integral / number-variance identity.

    ``lhs`` and ``rhs`` use the nominal intensity (background R^d); the
    identity holds exactly once the empirical mean count replaces the nominal
    one, which is what ``algebraic_gap`` reports (zero up to rounding).
    ``statistical_gap`` is the residual left by the intensity-1 assumption.
    """

    lhs: float
    rhs: float
    algebraic_gap: float
    statistical_gap: float

    @property
    def gap(self) -> float:
        return self.algebraic_gap


def estimate_rho2(samples: list[PointConfiguration], bins: GridSpec) -> CorrelationEstimate:
    """Tent-corrected estimate of ``rho2(v) - 1`` from replicas.

    Every ordered pair in the window contributes ``1 / (bin volume *
    prod_i (R - |v_i|))`` to the bin of its separation; the tent factor is
    the exact volume of translated pairs, so the estimator is unbiased
    bin-average-wise.  Standard errors are across replicas.
    """
    if len(samples) < 2:
        raise ArgumentError("at least 2 replicas are required for a standard error")
    d = samples[0].d
    R = samples[0].window.R
    for s in samples:
        if s.d != d or s.window.R != R:
            raise ArgumentError("replicas must share dimension and window size")
    if not bins.v_max < R:
        raise DomainError("v_max must be smaller than the window side R")

    n_rep = len(samples)
    if d == 1:
        n_bins = bins.n_bins + (bins.n_bins % 2)
        bw = 2.0 * bins.v_max / n_bins
        centers = -bins.v_max + bw * (np.arange(n_bins) + 0.5)
        per = np.empty((n_rep, n_bins))
        for i, s in enumerate(samples):
            x = np.ascontiguousarray(np.sort(points_in_cube(s, R)[:, 0]))
            acc = _fast.bin_pairs_signed(x, bins.v_max, n_bins, R)
            per[i] = acc / bw - 1.0
        mode = "signed"
    else:
        n_bins = bins.n_bins
        bw = bins.v_max / n_bins
        centers = bw * (np.arange(n_bins) + 0.5)
        edges = bw * np.arange(n_bins + 1)
        if d == 2:
            shell = math.pi * (edges[1:] ** 2 - edges[:-1] ** 2)
        else:
            shell = 4.0 * math.pi / 3.0 * (edges[1:] ** 3 - edges[:-1] ** 3)
        per = np.empty((n_rep, n_bins))
        for i, s in enumerate(samples):
            pts = np.ascontiguousarray(points_in_cube(s, R))
            acc = _fast.bin_pairs_radial(pts, bins.v_max, n_bins, R)
            per[i] = acc / shell - 1.0
        mode = "radial"

    values = per.mean(axis=0)
    stderr = per.std(axis=0, ddof=1) / math.sqrt(n_rep)
    return CorrelationEstimate(d, centers, values, stderr, n_rep, mode, bw)


def _squared_discrepancies(model: ProcessModel, R: float, n_replicas: int,
                           seed: Seed, offset: int) -> np.ndarray:
    window = Window(float(R), model.d)
    d2 = np.empty(n_replicas)
    for j in range(n_replicas):
        cfg = sample(model, window, Seed(seed.master, seed.replica + offset + j))
        d2[j] = (cfg.n - R**model.d) ** 2
    return d2


def number_variance_curve(model: ProcessModel, R_list, n_replicas: int,
                          seed: Seed) -> VarianceCurve:
    """Mean squared discrepancy per window size, with a log-log slope fit."""
    R_list = [float(R) for R in R_list]
    if len(R_list) < 4 or any(b <= a for a, b in zip(R_list, R_list[1:])):
        raise ArgumentError("R_list must be increasing with at least 4 values")
    if R_list[-1] < 10.0 * R_list[0]:
        raise ArgumentError("R_list should span at least one decade")
    entries = []
    for i, R in enumerate(R_list):
        d2 = _squared_discrepancies(model, R, n_replicas, seed, i * n_replicas)
        entries.append((R, float(d2.mean()),
                        float(d2.std(ddof=1) / math.sqrt(n_replicas))))
    exponent, ci = _fit_loglog_slope(entries)
    return VarianceCurve(entries, exponent, ci)


def _fit_loglog_slope(entries) -> tuple[float, tuple[float, float]]:
    pts = [(R, v) for R, v, _ in entries if v > 0.0]
    if len(pts) < 2:
        raise ArgumentError("degenerate fit: fewer than 2 positive variances")
    lx = np.log([p[0] for p in pts])
    ly = np.log([p[1] for p in pts])
    A = np.stack([lx, np.ones_like(lx)], axis=1)
    coef, res, *_ = np.linalg.lstsq(A, ly, rcond=None)
    slope = float(coef[0])
    n = len(pts)
    if n > 2 and res.size:
        sxx = float(np.sum((lx - lx.mean()) ** 2))
        se = math.sqrt(float(res[0]) / (n - 2) / sxx)
    else:
        se = 0.0
    return slope, (slope - 1.96 * se, slope + 1.96 * se)


def discrepancy_identity_check(samples: list[PointConfiguration], R: float) -> IdentityCheck:
    """Estimate both sides of the pair-integral identity from one sample set."""
    if len(samples) < 2:
        raise ArgumentError("at least 2 replicas are required")
    d = samples[0].d
    counts = np.array([discrepancy(s, R).n for s in samples], dtype=float)
    vol = float(R) ** d
    m1 = counts.mean()
    m2 = (counts**2).mean()
    lhs = m2 - m1 - vol * vol
    rhs = float(np.mean((counts - vol) ** 2)) - vol
    # same identity with the empirical mean as background: two different
    # expression trees for the same number
    lhs_c = float((counts * (counts - 1.0)).mean()) - m1 * m1
    rhs_c = float(np.mean((counts - m1) ** 2)) - m1
    return IdentityCheck(
        lhs=float(lhs),
        rhs=float(rhs),
        algebraic_gap=float(lhs_c - rhs_c),
        statistical_gap=float(lhs - rhs),
    )


@dataclass
class DlogCurve:
    entries: list[tuple[float, float, float]]  # (R, value, stderr)
    trend: str                                 # "bounded->0" | "bounded->positive" | "diverging"
    c_log: float

    def to_csv(self, path) -> None:
        from ._io import write_csv

        write_csv(path, ("R", "value", "stderr"), self.entries)


def dlog_estimate(model: ProcessModel, kernel: Kernel, R_list, n_replicas: int,
                  seed: Seed, c_log: float = 1.0) -> DlogCurve:
    """Sequence ``c_log * (E[D_R^2] / R^d) * log R`` with a trend classifier.

    The limsup of this sequence is the extra logarithmic term of the energy;
    only its finiteness or vanishing matters downstream, so the constant is a
    free parameter.  Classification: last-decade log-log slope above 0.1 is
    "diverging", below -0.1 is "bounded->0", otherwise "bounded->positive".
    """
    if not kernel.is_log:
        raise NotApplicableError("the logarithmic discrepancy term needs a log kernel")
    R_list = [float(R) for R in R_list]
    if any(b <= a for a, b in zip(R_list, R_list[1:])):
        raise ArgumentError("R_list must be increasing")
    entries = []
    for i, R in enumerate(R_list):
        d2 = _squared_discrepancies(model, R, n_replicas, seed, i * n_replicas)
        scale = c_log * math.log(R) / R**model.d
        entries.append((R, float(d2.mean()) * scale,
                        float(d2.std(ddof=1) / math.sqrt(n_replicas)) * scale))
    trend = _classify_trend(entries)
    return DlogCurve(entries, trend, c_log)


def _classify_trend(entries) -> str:
    R_last = entries[-1][0]
    decade = [(R, v) for R, v, _ in entries if R >= R_last / 10.0]
    if len(decade) < 2:
        decade = entries[-2:]
    if entries[-1][1] <= 1e-12:
        return "bounded->0"
    lx = np.log([max(p[0], 1e-300) for p in decade])
    ly = np.log([max(p[1], 1e-300) for p in decade])
    slope = float(np.polyfit(lx, ly, 1)[0])
    if slope > 0.1:
        return "diverging"
    if slope < -0.1:
        return "bounded->0"
    return "bounded->positive"


def _count_vectors(samples: list[PointConfiguration], R: float, tiles: int) -> dict[tuple, float]:
    edges = np.linspace(-R / 2.0, R / 2.0, tiles + 1)
    hist: dict[tuple, float] = {}
    w = 1.0 / len(samples)
    for s in samples:
        pts = points_in_cube(s, R)
        if pts.shape[0]:
            idx = np.clip(np.searchsorted(edges, pts[:, 0], side="right") - 1, 0, tiles - 1)
            key = tuple(np.bincount(idx, minlength=tiles).tolist())
        else:
            key = (0,) * tiles
        hist[key] = hist.get(key, 0.0) + w
    return hist


def tv_lower_bound(samples_p: list[PointConfiguration], samples_q: list[PointConfiguration],
                   window_R: float, tile_count: int) -> float:
    """Total variation between the count-vector laws over a tile partition.

    Counts are a measurable function of the restriction to the window, so
    this lower-bounds the total variation of the restricted processes; no
    density estimation is involved.  Tiles are slabs along the first axis.
    """
    if tile_count < 1:
        raise ArgumentError("tile_count must be at least 1")
    for s in list(samples_p) + list(samples_q):
        if s.window.R < window_R:
            raise DomainError("samples were drawn on a window smaller than requested")
    hp = _count_vectors(samples_p, window_R, tile_count)
    hq = _count_vectors(samples_q, window_R, tile_count)
    support = set(hp) | set(hq)
    n_min = min(len(samples_p), len(samples_q))
    if n_min < 10 * len(support):
        warnings.warn(
            f"count-vector histogram is sparse ({len(support)} cells, {n_min} samples); "
            "the TV estimate may be upward biased",
            RuntimeWarning,
            stacklevel=2,
        )
    return 0.5 * sum(abs(hp.get(k, 0.0) - hq.get(k, 0.0)) for k in support)


def pinsker_check(ers: float, tv_lower: float, R: float, d: int = 1) -> TvReport:
    """Compare a TV lower bound against the entropy-rate upper bound
    ``sqrt(ers / 2) * R^(d/2)`` for the window of side R."""
    if ers < 0.0:
        raise ArgumentError("the specific relative entropy is nonnegative")
    upper = math.sqrt(ers / 2.0) * float(R) ** (d / 2.0)
    return TvReport(tv_lower=float(tv_lower), pinsker_upper=upper,
                    window_R=float(R), satisfied=bool(tv_lower <= upper))
