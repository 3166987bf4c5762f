"""One-dimensional theory: k-th neighbor correlation functions, the
crystallization gap functional, renewal entropy rates, and free-energy
minimization over the Gamma renewal family.

The Gamma family is the working one-parameter testbed: shape 1 is the
memoryless process, shape -> infinity concentrates the gaps at 1, so both
asymptotic regimes of the free energy are reachable on one axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .core import (
    ArgumentError,
    DivergenceError,
    DomainError,
    Kernel,
    PointConfiguration,
    points_in_cube,
)
from .energy import wint_from_rho2
from .generators import GapLaw, GapLawKind, ProcessModel, Rho2GridSpec, rho2_analytic


@dataclass
class NeighborDensity:
    """Histogram density of the distance to the k-th neighbor on the right.

    Bin centers sit on ``j * step`` (binary steps keep integer gap locations
    exactly on centers); values integrate to ``total_mass``, which approaches
    1 from below as ``x_max`` grows.
    """

    k: int
    centers: np.ndarray
    values: np.ndarray
    stderr: np.ndarray
    step: float
    total_mass: float
    n_replicas: int

    def mean_position(self) -> float:
        return float(np.sum(self.centers * self.values) * self.step)

    def variance(self) -> float:
        m = self.mean_position() / max(self.total_mass, 1e-300)
        return float(np.sum((self.centers - m) ** 2 * self.values) * self.step)

    def to_csv(self, path) -> None:
        from ._io import write_csv

        write_csv(path, ("x", "density", "stderr"),
                  zip(self.centers, self.values, self.stderr))


@dataclass(frozen=True)
class GapFunctionalValue:
    """Quadratic-displacement functional of the neighbor densities; zero
    exactly on lattice inputs, strictly positive otherwise.  The overall
    constant of the underlying bound is unknown, so only orderings and joint
    vanishing are meaningful."""

    s_exponent: float
    k_max: int
    value: float
    truncation_bound: float


@dataclass
class FreeEnergyScan:
    beta: float
    family: str
    entries: list[tuple[float, float, float, float, bool]]  # (theta, w, ers, f, feasible)
    argmin_theta: float
    bracket: tuple[float, float]

    def to_csv(self, path) -> None:
        from ._io import write_csv

        rows = [(t, w, e, f) for t, w, e, f, ok in self.entries if ok]
        write_csv(path, ("theta", "wint", "ers", "f"), rows)

    def to_json_dict(self) -> dict:
        return {
            "beta": self.beta,
            "family": self.family,
            "argmin_theta": self.argmin_theta,
            "bracket": list(self.bracket),
        }


def kth_neighbor_density(samples: list[PointConfiguration], k: int, L: float,
                         x_max: float, step: float = 1.0 / 32.0) -> NeighborDensity:
    """Edge-corrected histogram of k-th neighbor distances in [-L/2, L/2].

    A point y is the k-th neighbor of x when x < y and [x, y] contains
    exactly k + 1 points; restricting to the window is exact because [x, y]
    is contained in it.  Each pair is weighted by ``1 / (L (1 - x/L))``,
    which removes the boundary bias of the window.
    """
    if k < 1:
        raise ArgumentError("neighbor order k must be at least 1")
    if not x_max < L:
        raise DomainError("x_max must be smaller than the window length L")
    n_bins = int(round(x_max / step)) + 1
    centers = step * np.arange(n_bins)
    per = np.empty((len(samples), n_bins))
    for i, s in enumerate(samples):
        if s.d != 1:
            raise ArgumentError("neighbor densities are one-dimensional")
        x = np.sort(points_in_cube(s, L)[:, 0])
        acc = np.zeros(n_bins)
        if x.size > k:
            gaps = x[k:] - x[:-k]
            gaps = gaps[gaps < min(x_max + step / 2.0, L)]
            idx = np.clip(np.rint(gaps / step).astype(np.int64), 0, n_bins - 1)
            w = 1.0 / (L * (1.0 - gaps / L) * step)
            np.add.at(acc, idx, w)
        per[i] = acc
    values = per.mean(axis=0)
    stderr = per.std(axis=0, ddof=1) / math.sqrt(len(per)) if len(per) > 1 else np.zeros(n_bins)
    return NeighborDensity(
        k=k, centers=centers, values=values, stderr=stderr, step=step,
        total_mass=float(values.sum() * step), n_replicas=len(samples),
    )


def crystallization_gap(densities: list[NeighborDensity], s_exponent: float,
                        k_max: int) -> GapFunctionalValue:
    """Sum over neighbor orders of ``int min((x - k)^2 / k^(s+2), 1)`` against
    the k-th neighbor density, the quantitative distance to the lattice."""
    if not 0.0 <= s_exponent < 1.0:
        raise DomainError("s_exponent must lie in [0, 1)")
    by_k = {d.k: d for d in densities}
    missing = [k for k in range(1, k_max + 1) if k not in by_k]
    if missing:
        raise ArgumentError(f"missing neighbor densities for k = {missing}")
    total = 0.0
    for k in range(1, k_max + 1):
        d = by_k[k]
        phi = np.minimum((d.centers - k) ** 2 / k ** (s_exponent + 2.0), 1.0)
        total += float(np.sum(phi * d.values) * d.step)
    spread = max(by_k[k_max].variance(), 0.0)
    trunc = spread / ((s_exponent + 1.0) * k_max ** (s_exponent + 1.0))
    return GapFunctionalValue(s_exponent=s_exponent, k_max=k_max,
                              value=total, truncation_bound=trunc)


def renewal_entropy_rate(gap: GapLaw) -> float:
    """Per-gap relative entropy ``int f log f + 1`` against memoryless gaps.

    Nonnegative, zero exactly at the exponential law; grows like ``log k``
    for the narrow triangular laws, matching the blow-up of the entropy of
    the underlying displacement noise.
    """
    if gap.kind is GapLawKind.UNIFORM_HAT:
        lo, hi = 1.0 - 2.0 / gap.k, 1.0 + 2.0 / gap.k
    else:
        lo, hi = 0.0, math.inf

    def f_log_f(x):
        fx = gap.density(np.array([x]))[0]
        return fx * math.log(fx) if fx > 0.0 else 0.0

    def x_f(x):
        return x * gap.density(np.array([x]))[0]

    def piece(fn, a, b):
        if a == 0.0:
            # substitute x = t^2 to soften singular heads at the origin
            val, _ = integrate.quad(lambda t: 2.0 * t * fn(t * t),
                                    0.0, math.sqrt(b), limit=200)
            return val
        val, _ = integrate.quad(fn, a, b, limit=200)
        return val

    pieces = [(lo, 1.0), (1.0, hi)] if hi > 1.0 else [(lo, hi)]
    mean = sum(piece(x_f, a, b) for a, b in pieces)
    if abs(mean - 1.0) > 1e-8:
        raise ArgumentError(f"gap law has mean {mean:.12f}, expected 1")
    val = sum(piece(f_log_f, a, b) for a, b in pieces)
    return val + 1.0


@dataclass(frozen=True)
class ScanOptions:
    R_list: tuple = (128.0, 256.0, 512.0, 1024.0)
    grid: Rho2GridSpec = field(default_factory=Rho2GridSpec)
    refine_tol: float = 0.02


def _golden_section(fn, lo: float, hi: float, tol: float) -> tuple[float, float, float]:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fn(c), fn(d)
    while (b - a) > tol * max(1.0, abs(a) + abs(b)) / 2.0:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fn(d)
    return 0.5 * (a + b), a, b


def free_energy_scan(beta: float, kernel: Kernel, theta_grid,
                     options: ScanOptions | None = None) -> FreeEnergyScan:
    """Scan ``beta * energy + entropy rate`` over Gamma gap shapes and refine
    the minimizer by golden section inside the bracketing grid interval.

    Shapes whose energy quadrature diverges (too much clustering for the
    kernel) are marked infeasible and excluded from the minimization.
    """
    if not beta > 0.0:
        raise DomainError("beta must be positive")
    thetas = [float(t) for t in theta_grid]
    if any(b <= a for a, b in zip(thetas, thetas[1:])):
        raise ArgumentError("theta_grid must be increasing")
    if not any(t == 1.0 for t in thetas):
        raise ArgumentError("theta_grid must include theta = 1")
    opts = options or ScanOptions()

    cache: dict[float, tuple[float, float] | None] = {}

    def parts(theta: float):
        if theta not in cache:
            gap = GapLaw.exponential() if theta == 1.0 else GapLaw.gamma(theta)
            try:
                rep = wint_from_rho2(
                    rho2_analytic(ProcessModel.renewal(gap), opts.grid),
                    kernel, list(opts.R_list),
                )
                cache[theta] = (rep.extrapolated, renewal_entropy_rate(gap))
            except DivergenceError:
                cache[theta] = None
        return cache[theta]

    entries = []
    feas = []
    for t in thetas:
        p = parts(t)
        if p is None:
            entries.append((t, math.nan, math.nan, math.nan, False))
        else:
            w, e = p
            entries.append((t, w, e, beta * w + e, True))
            feas.append((beta * w + e, t))
    if not feas:
        raise DivergenceError("no feasible shape in the scan grid")
    _, t_best = min(feas)
    idx = thetas.index(t_best)

    def f_of(theta: float) -> float:
        p = parts(theta)
        return math.inf if p is None else beta * p[0] + p[1]

    if idx == len(thetas) - 1 or not entries[idx + 1][4]:
        argmin, bracket = thetas[idx], (thetas[max(idx - 1, 0)], thetas[idx])
    elif idx == 0 or not entries[idx - 1][4]:
        argmin, bracket = thetas[idx], (thetas[idx], thetas[idx + 1])
    else:
        argmin, lo, hi = _golden_section(f_of, thetas[idx - 1], thetas[idx + 1],
                                         opts.refine_tol)
        bracket = (lo, hi)
    return FreeEnergyScan(beta=beta, family="gamma", entries=entries,
                          argmin_theta=argmin, bracket=bracket)
