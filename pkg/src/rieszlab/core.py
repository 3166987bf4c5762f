"""Kernels, windows, point configurations, and elementary statistics.

The pairwise interaction is ``-log|x|`` in dimension 1 or 2, or the inverse
power ``|x|**-s`` with ``max(0, d-2) <= s < d``.  Every other module consumes
the types defined here.  All operations are pure functions of their
arguments, so they are safe under any parallel execution scheme.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class ArgumentError(ValueError):
    """An argument is malformed (wrong shape, missing field, bad pairing)."""


class DomainError(ValueError):
    """A numeric argument lies outside the documented domain."""


class SingularityError(DomainError):
    """The kernel was evaluated at the origin."""


class SingularConfigurationError(ValueError):
    """A configuration contains coincident points, making the energy infinite."""


class NotApplicableError(ValueError):
    """The requested quantity is undefined for this kernel family."""


class DivergenceError(RuntimeError):
    """A quadrature or limit was diagnosed as divergent; no value is reported."""


class KernelFamily(Enum):
    LOG1D = "log1d"
    LOG2D = "log2d"
    RIESZ = "riesz"


@dataclass(frozen=True)
class Kernel:
    """Radial interaction kernel.

    ``LOG1D``/``LOG2D`` are the logarithmic kernels in d=1 and d=2; ``RIESZ``
    is ``|x|**-s`` and requires ``max(0, d-2) <= s < d`` with ``s > 0`` in
    dimensions 1 and 2 (``s = 0`` is not a synonym for the log kernels here).
    """

    family: KernelFamily
    d: int
    s: float | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.d, int) or not (1 <= self.d <= 3):
            raise ArgumentError(f"dimension must be an integer in [1, 3], got {self.d!r}")
        if self.family is KernelFamily.LOG1D:
            if self.d != 1:
                raise ArgumentError("log kernel in variant LOG1D requires d = 1")
            if self.s is not None:
                raise ArgumentError("log kernels carry no exponent")
        elif self.family is KernelFamily.LOG2D:
            if self.d != 2:
                raise ArgumentError("log kernel in variant LOG2D requires d = 2")
            if self.s is not None:
                raise ArgumentError("log kernels carry no exponent")
        else:
            if self.s is None:
                raise ArgumentError("Riesz kernel requires an exponent s")
            lo = max(0.0, self.d - 2.0)
            if not (lo <= self.s < self.d):
                raise DomainError(
                    f"Riesz exponent must satisfy max(0, d-2) <= s < d, got s={self.s}, d={self.d}"
                )
            if self.d <= 2 and self.s <= 0.0:
                raise DomainError("Riesz exponent must be positive in dimensions 1 and 2")

    @property
    def is_log(self) -> bool:
        return self.family is not KernelFamily.RIESZ

    def g(self, r):
        """Evaluate the kernel at radius ``r`` (vectorized, r > 0 assumed)."""
        r = np.asarray(r, dtype=float)
        if self.is_log:
            return -np.log(r)
        return r ** (-self.s)


def log_kernel(d: int = 1) -> Kernel:
    return Kernel(KernelFamily.LOG1D if d == 1 else KernelFamily.LOG2D, d)


def riesz_kernel(s: float, d: int = 1) -> Kernel:
    return Kernel(KernelFamily.RIESZ, d, float(s))


@dataclass(frozen=True)
class Window:
    """Hypercube observation window of side ``R`` centered at ``center``."""

    R: float
    d: int
    center: tuple = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if not self.R > 0:
            raise DomainError(f"window side must be positive, got {self.R}")
        if not isinstance(self.d, int) or not (1 <= self.d <= 3):
            raise ArgumentError(f"dimension must be an integer in [1, 3], got {self.d!r}")
        c = self.center
        if c is None:
            c = (0.0,) * self.d
        else:
            c = tuple(float(x) for x in np.atleast_1d(c))
            if len(c) != self.d:
                raise ArgumentError("window center must have one coordinate per dimension")
        object.__setattr__(self, "center", c)

    @property
    def volume(self) -> float:
        return self.R**self.d


class PointConfiguration:
    """Finite point set inside a hypercube window.

    Points are stored as an ``(n, d)`` float64 array.  Window membership is
    checked with closed intervals and exact comparison; duplicate points are
    permitted at construction but make any pair energy infinite, so they are
    detected lazily by :meth:`has_coincident`.
    """

    __slots__ = ("window", "points")

    def __init__(self, points, window: Window):
        pts = np.asarray(points, dtype=float)
        if pts.size == 0:
            pts = pts.reshape(0, window.d)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[1] != window.d:
            raise ArgumentError(
                f"points must have shape (n, {window.d}), got {np.shape(points)}"
            )
        if np.isnan(pts).any():
            raise ArgumentError("points contain NaN coordinates")
        c = np.asarray(window.center)
        half = window.R / 2.0
        rel = pts - c
        if pts.size and (np.abs(rel) > half).any():
            raise DomainError("points fall outside the window")
        self.window = window
        self.points = np.ascontiguousarray(pts)

    @property
    def d(self) -> int:
        return self.window.d

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def x(self) -> np.ndarray:
        """Flat coordinate vector; only meaningful for d = 1."""
        if self.d != 1:
            raise ArgumentError("flat coordinates are defined for d = 1 only")
        return self.points[:, 0]

    def relative(self) -> np.ndarray:
        """Coordinates relative to the window center."""
        return self.points - np.asarray(self.window.center)

    def translate(self, shift) -> "PointConfiguration":
        shift = np.atleast_1d(np.asarray(shift, dtype=float))
        new_center = tuple(np.asarray(self.window.center) + shift)
        return PointConfiguration(
            self.points + shift, Window(self.window.R, self.d, new_center)
        )

    def has_coincident(self) -> bool:
        if self.n < 2:
            return False
        order = np.lexsort(self.points.T)
        diffs = np.diff(self.points[order], axis=0)
        return bool(np.any(np.all(diffs == 0.0, axis=1)))

    def __repr__(self) -> str:  # pragma: no cover
        return f"PointConfiguration(n={self.n}, d={self.d}, R={self.window.R})"


@dataclass(frozen=True)
class DiscrepancyStat:
    """Point count in a centered cube of side R and its deviation from R^d."""

    R: float
    n: int
    discrepancy: float


def kernel_eval(kernel: Kernel, v) -> float:
    """Kernel value at separation vector ``v`` (scalar accepted for d = 1)."""
    vv = np.atleast_1d(np.asarray(v, dtype=float))
    if vv.shape != (kernel.d,):
        raise ArgumentError(f"separation must have {kernel.d} coordinates, got {vv.shape}")
    r = float(np.sqrt(np.sum(vv * vv)))
    if r == 0.0:
        raise SingularityError("kernel is singular at the origin")
    if kernel.is_log:
        return -math.log(r)
    return r ** (-kernel.s)


def tent_weight(v, R: float) -> float:
    """Product ``prod_i (R - |v_i|)``, the volume factor of translated pairs.

    The value is ``R**d`` at the origin, vanishes when any ``|v_i| = R``, and
    is symmetric under sign flips and coordinate permutations.
    """
    vv = np.atleast_1d(np.asarray(v, dtype=float))
    a = np.abs(vv)
    if (a > R).any():
        raise DomainError("separation exceeds the tent support [-R, R]^d")
    return float(np.prod(R - a))


def psi_weight(kernel: Kernel, x: float, R: float) -> float:
    """One-dimensional boundary-weighted kernel ``(2/R) g(x) (R - x)``."""
    if kernel.d != 1:
        raise ArgumentError("psi_weight is defined for one-dimensional kernels only")
    if not (0.0 < x <= R):
        raise DomainError(f"argument must lie in (0, R], got x={x}, R={R}")
    return (2.0 / R) * float(kernel.g(x)) * (R - x)


def points_in_cube(config: PointConfiguration, R: float) -> np.ndarray:
    """Points of ``config`` inside the centered cube of side R (closed faces)."""
    if R > config.window.R:
        raise DomainError("cube side exceeds the configuration window")
    rel = config.relative()
    if config.n == 0:
        return rel
    mask = np.all(np.abs(rel) <= R / 2.0, axis=1)
    return rel[mask]


def discrepancy(config: PointConfiguration, R: float) -> DiscrepancyStat:
    """Count points in the centered cube of side R and subtract its volume."""
    pts = points_in_cube(config, R)
    n = int(pts.shape[0])
    return DiscrepancyStat(R=float(R), n=n, discrepancy=n - float(R) ** config.d)
