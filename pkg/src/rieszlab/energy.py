"""Energy of stationary point processes: the per-volume interaction of a
configuration-minus-background against itself, computed along three routes.

``PairSumMC`` expands the window double integral into point-point,
point-background, and background-background terms and averages over sampled
replicas.  ``Rho2Quadrature`` integrates the tent-weighted pair correlation
deficit.  ``LatticeSeries`` evaluates the exact one-dimensional lattice
series.  Each route ends with Richardson extrapolation in 1/R and an honest
residual, never a bare limit claim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _fast, quadrature
from .core import (
    ArgumentError,
    DivergenceError,
    DomainError,
    Kernel,
    KernelFamily,
    NotApplicableError,
    PointConfiguration,
    SingularConfigurationError,
    Window,
    points_in_cube,
)
from .generators import ProcessModel, Rho2Analytic, Seed, sample


# ---------------------------------------------------------------------------
# extrapolation
# ---------------------------------------------------------------------------

def richardson(R_values, values, stderr=None, depth: int | None = None):
    """Neville extrapolation of ``values`` to 1/R -> 0.

    Returns ``(extrapolated, extrapolation_error, extrapolated_stderr)``.
    The error is the spread of the last diagonal entries; the propagated
    standard error assumes independent per-R noise.  ``depth`` caps the
    polynomial degree (keep it small for Monte Carlo inputs).
    """
    x = 1.0 / np.asarray(R_values, dtype=float)
    y = np.asarray(values, dtype=float)
    n = x.size
    if n < 2:
        return float(y[-1]), math.inf, 0.0 if stderr is None else float(stderr[-1])
    if depth is None:
        depth = n - 1
    depth = min(depth, n - 1)

    # track the diagonal of the Neville table as weight vectors, so the
    # extrapolated value stays an explicit linear functional of the inputs
    diags = []
    tbl: list = [np.eye(n)[i] for i in range(n)]
    diags.append(float(tbl[n - 1] @ y))
    weights = tbl[n - 1]
    for j in range(1, depth + 1):
        nxt: list = [None] * n
        for i in range(j, n):
            nxt[i] = (x[i - j] * tbl[i] - x[i] * tbl[i - 1]) / (x[i - j] - x[i])
        tbl = nxt
        weights = tbl[n - 1]
        diags.append(float(weights @ y))
    extrapolated = diags[-1]
    tail = diags[-3:] if len(diags) >= 3 else diags
    err = max(abs(extrapolated - t) for t in tail)
    sig = 0.0
    if stderr is not None:
        s = np.asarray(stderr, dtype=float)
        sig = float(np.sqrt(np.sum((weights * s) ** 2)))
    return extrapolated, err, sig


@dataclass
class EnergyReport:
    route: str                      # "PairSumMC" | "Rho2Quadrature" | "LatticeSeries"
    kernel: Kernel
    entries: list[tuple[float, float, float | None]]  # (R, value, stderr or None)
    extrapolated: float
    extrapolation_error: float
    extrapolated_stderr: float = 0.0
    n_discarded: int = 0

    def to_json_dict(self) -> dict:
        return {
            "route": self.route,
            "kernel": {
                "family": self.kernel.family.value,
                "d": self.kernel.d,
                "s": self.kernel.s,
            },
            "entries": [
                {"R": R, "value": v, "stderr": s} for R, v, s in self.entries
            ],
            "extrapolated": self.extrapolated,
            "extrapolation_error": self.extrapolation_error,
            "extrapolated_stderr": self.extrapolated_stderr,
        }

    def to_csv(self, path) -> None:
        from ._io import write_csv

        rows = [(R, v, 0.0 if s is None else s) for R, v, s in self.entries]
        write_csv(path, ("R", "value", "stderr"), rows)


@dataclass(frozen=True)
class BackgroundIntegrals:
    """Window integrals of the kernel: ``bb`` over both arguments, ``pb``
    against one point (a callable on window-relative coordinates)."""

    bb: float
    pb: object  # callable: (n, d) array -> (n,) array
    R: float
    kernel: Kernel


@lru_cache(maxsize=128)
def _bb_cached(family: KernelFamily, d: int, s: float | None, R: float) -> float:
    return quadrature.background_pair_integral(Kernel(family, d, s), R)


def background_integrals(kernel: Kernel, R: float) -> BackgroundIntegrals:
    bb = _bb_cached(kernel.family, kernel.d, kernel.s, float(R))

    def pb(pts):
        return quadrature.point_background(kernel, pts, float(R))

    return BackgroundIntegrals(bb=bb, pb=pb, R=float(R), kernel=kernel)


# ---------------------------------------------------------------------------
# per-configuration interaction energy
# ---------------------------------------------------------------------------

_FAMILY_CODE = {KernelFamily.LOG1D: _fast.FAMILY_LOG,
                KernelFamily.LOG2D: _fast.FAMILY_LOG,
                KernelFamily.RIESZ: _fast.FAMILY_RIESZ}


def hint_R(config: PointConfiguration, R: float, kernel: Kernel) -> float:
    """Window interaction of points minus unit background, diagonal excluded:
    ``sum_{p != q} g(p - q) - 2 sum_p pb(p) + bb`` over points in the
    centered cube of side R."""
    if kernel.d != config.d:
        raise ArgumentError("kernel and configuration dimensions differ")
    if R > config.window.R:
        raise DomainError("energy window exceeds the configuration window")
    pts = np.ascontiguousarray(points_in_cube(config, R))
    bg = background_integrals(kernel, R)
    if pts.shape[0] == 0:
        return bg.bb
    s = kernel.s if kernel.s is not None else 0.0
    pair_sum, min_r2 = _fast.pair_sum(pts, _FAMILY_CODE[kernel.family], s)
    if pts.shape[0] > 1 and min_r2 == 0.0:
        raise SingularConfigurationError("coincident points inside the energy window")
    return 2.0 * pair_sum - 2.0 * float(np.sum(bg.pb(pts))) + bg.bb


# ---------------------------------------------------------------------------
# route 1: Monte Carlo over replicas
# ---------------------------------------------------------------------------

def wint_monte_carlo(model: ProcessModel, kernel: Kernel, R_list, n_replicas: int,
                     seed: Seed) -> EnergyReport:
    """Per-volume mean window energy along an R ladder, extrapolated in 1/R.

    Replicas with coincident points are discarded and counted; more than 1%
    of them aborts the run.
    """
    R_list = [float(R) for R in R_list]
    if any(b <= a for a, b in zip(R_list, R_list[1:])):
        raise ArgumentError("R_list must be increasing")
    if n_replicas < 30:
        raise ArgumentError("at least 30 replicas are required")
    entries = []
    stderrs = []
    discarded = 0
    for i, R in enumerate(R_list):
        window = Window(R, model.d)
        vals = []
        for j in range(n_replicas):
            cfg = sample(model, window, Seed(seed.master, seed.replica + i * n_replicas + j))
            try:
                vals.append(hint_R(cfg, R, kernel) / R**model.d)
            except SingularConfigurationError:
                discarded += 1
                if discarded > 0.01 * n_replicas * len(R_list):
                    raise
        vals = np.asarray(vals)
        entries.append((R, float(vals.mean()),
                        float(vals.std(ddof=1) / math.sqrt(vals.size))))
        stderrs.append(entries[-1][2])
    ex, err, sig = richardson([e[0] for e in entries], [e[1] for e in entries],
                              stderr=stderrs, depth=2)
    return EnergyReport("PairSumMC", kernel, entries, ex, err, sig, discarded)


# ---------------------------------------------------------------------------
# route 2: quadrature against an analytic two-point function
# ---------------------------------------------------------------------------

def _head_convergence_check(rho2: Rho2Analytic, kernel: Kernel) -> None:
    # integrability of g * (rho2 - 1) near 0: the deficit density may blow up
    # like v**alpha with alpha = head_exponent < 0
    if kernel.is_log:
        return
    if kernel.s - rho2.head_exponent >= 1.0:
        raise DivergenceError(
            "pair deficit grows too fast at the origin: "
            f"s = {kernel.s}, head exponent = {rho2.head_exponent}"
        )


def _rho2_value_1d(rho2: Rho2Analytic, kernel: Kernel, R: float) -> float:
    nodes = rho2.nodes_upto(R)
    deficit = np.asarray(rho2.continuous_part(nodes), dtype=float) - 1.0
    total = quadrature.integrate_g_pwlinear(kernel, nodes, deficit, tent_R=R)
    atoms = rho2.atoms_upto(R)
    if atoms.size:
        total += float(np.sum(kernel.g(atoms[:, 0]) * (R - atoms[:, 0]) * atoms[:, 1]))
    return 2.0 * total / R


def _rho2_value_general(rho2: Rho2Analytic, kernel: Kernel, R: float) -> float:
    d = kernel.d

    def weight(*coords):
        tent = np.ones_like(coords[0])
        for c in coords:
            tent = tent * (R - np.abs(c))
        v = np.stack(coords, axis=-1)
        return (np.asarray(rho2.continuous_part(v), dtype=float).reshape(coords[0].shape) - 1.0) * tent

    lo = np.full(d, -R)
    hi = np.full(d, R)
    if rho2.atoms_upto(R * math.sqrt(d)).size:
        raise NotApplicableError("atomic two-point parts are supported in d = 1 only")
    total = quadrature.box_kernel_integral(kernel, lo, hi, weight=weight, order=24)
    return total / R**d


def wint_from_rho2(rho2: Rho2Analytic, kernel: Kernel, R_list) -> EnergyReport:
    """Tent-weighted quadrature of the pair-correlation deficit on an R ladder.

    In d = 1 the integrand is handled exactly (piecewise-linear profile times
    closed-form kernel moments).  A head check rejects deficits that are not
    integrable against the kernel; a ladder check flags non-convergence in R
    instead of fabricating a number.
    """
    R_list = [float(R) for R in R_list]
    if any(b <= a for a, b in zip(R_list, R_list[1:])):
        raise ArgumentError("R_list must be increasing")
    _head_convergence_check(rho2, kernel)
    if not rho2.tail_flat:
        raise DivergenceError("pair deficit has not decayed over the available grid")
    values = []
    for R in R_list:
        if kernel.d == 1:
            values.append(_rho2_value_1d(rho2, kernel, R))
        else:
            values.append(_rho2_value_general(rho2, kernel, R))
    if len(values) >= 3:
        steps = np.abs(np.diff(values))
        if steps[-1] > 4.0 * (steps[0] + 1e-15) and steps[-1] > 1e-9:
            raise DivergenceError(
                f"ladder increments grow with R: {list(map(float, steps))}"
            )
    entries = [(R, v, None) for R, v in zip(R_list, values)]
    ex, err, _ = richardson(R_list, values, depth=min(2, len(values) - 1))
    return EnergyReport("Rho2Quadrature", kernel, entries, ex, err, 0.0)


# ---------------------------------------------------------------------------
# route 3: exact lattice series in d = 1
# ---------------------------------------------------------------------------

def lattice_series_value(kernel: Kernel, R: float) -> float:
    """``sum_{k <= R} psi_R(k) - int_0^R psi_R`` for the unit lattice."""
    if kernel.d != 1:
        raise ArgumentError("the lattice series is one-dimensional")
    ks = np.arange(1.0, math.floor(R) + 1.0)
    series = (2.0 / R) * float(np.sum(kernel.g(ks) * (R - ks)))
    integral = quadrature.tent_kernel_integral_1d(kernel, R) / R
    return series - integral


def wint_lattice_series(kernel: Kernel, R_list) -> EnergyReport:
    R_list = [float(R) for R in R_list]
    if any(b <= a for a, b in zip(R_list, R_list[1:])):
        raise ArgumentError("R_list must be increasing")
    values = [lattice_series_value(kernel, R) for R in R_list]
    entries = [(R, v, None) for R, v in zip(R_list, values)]
    ex, err, _ = richardson(R_list, values, depth=min(4, len(values) - 1))
    return EnergyReport("LatticeSeries", kernel, entries, ex, err, 0.0)


# ---------------------------------------------------------------------------
# plain (tent-free) energy of a decaying pair deficit
# ---------------------------------------------------------------------------

def wbs_energy(rho2: Rho2Analytic, kernel: Kernel, v_max: float) -> float:
    """``int g(v) (rho2(v) - 1) dv`` without the tent weight (log kernels).

    Defined up to the additive normalization of the underlying periodic
    construction, which is fixed to zero here; only differences between
    processes are meaningful.  Requires the deficit to decay within v_max.
    """
    if not kernel.is_log:
        raise NotApplicableError("the tent-free energy is defined for log kernels")
    if kernel.d != 1:
        raise NotApplicableError("tent-free energy quadrature is implemented in d = 1")
    if not rho2.tail_flat:
        raise NotApplicableError("pair deficit has not decayed over the available grid")
    if rho2.support_radius > v_max:
        probe = np.linspace(0.9 * v_max, v_max, 64)
        dev = float(np.max(np.abs(np.asarray(rho2.continuous_part(probe)) - 1.0)))
        atoms_near_end = bool(np.any(rho2.atoms_upto(v_max)[:, 0] > 0.9 * v_max)) \
            if rho2.atoms_upto(v_max).size else False
        if dev > 1e-6 or atoms_near_end:
            raise NotApplicableError(
                f"pair deficit has not decayed by v_max={v_max} (residual {dev:.2e})"
            )
    nodes = rho2.nodes_upto(v_max)
    deficit = np.asarray(rho2.continuous_part(nodes), dtype=float) - 1.0
    total = quadrature.integrate_g_pwlinear(kernel, nodes, deficit, tent_R=None)
    atoms = rho2.atoms_upto(v_max)
    if atoms.size:
        total += float(np.sum(kernel.g(atoms[:, 0]) * atoms[:, 1]))
    return 2.0 * total
