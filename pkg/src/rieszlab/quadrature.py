"""Deterministic quadrature helpers for singular radial kernels.

Everything here is exact or spectrally accurate, and deterministic: closed
forms in d=1, a corner antiderivative for the planar log kernel, and a
corner-mapped (Duffy) Gauss-Legendre scheme for boxes that touch the origin
in d = 2, 3.  The one-dimensional energy routes integrate products
``g(v) * q(v)`` with ``q`` piecewise quadratic, which is exact through the
moment formulas below.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .core import ArgumentError, Kernel, KernelFamily


# ---------------------------------------------------------------------------
# closed-form moments of g on [a, b] subset [0, inf), d = 1
# ---------------------------------------------------------------------------

def _log_moment_primitive(v: np.ndarray, j: int) -> np.ndarray:
    # primitive of (-log v) v^j, continuous at 0
    p = j + 1.0
    out = np.zeros_like(v)
    pos = v > 0.0
    vp = v[pos]
    out[pos] = vp**p * (1.0 / (p * p) - np.log(vp) / p)
    return out


def g_moments(kernel: Kernel, a, b, jmax: int = 2) -> list[np.ndarray]:
    """Moments ``int_a^b g(v) v^j dv`` for j = 0..jmax, vectorized over cells."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = []
    if kernel.is_log:
        for j in range(jmax + 1):
            out.append(_log_moment_primitive(b, j) - _log_moment_primitive(a, j))
        return out
    s = kernel.s
    for j in range(jmax + 1):
        e = j + 1.0 - s
        # e = 0 cannot occur for the supported (d, s) ranges used in d = 1
        out.append((b**e - a**e) / e)
    return out


# ---------------------------------------------------------------------------
# d = 1 closed forms for point-background and background-background integrals
# ---------------------------------------------------------------------------

def point_background_1d(kernel: Kernel, p, R: float) -> np.ndarray:
    """``int_{-R/2}^{R/2} g(p - y) dy`` for points p in the closed interval."""
    p = np.asarray(p, dtype=float)
    a = R / 2.0 + p
    b = R / 2.0 - p
    if kernel.is_log:
        def prim(t):
            out = np.zeros_like(t)
            pos = t > 0.0
            out[pos] = t[pos] * (1.0 - np.log(t[pos]))
            return out
    else:
        s = kernel.s

        def prim(t):
            return t ** (1.0 - s) / (1.0 - s)

    return prim(a) + prim(b)


def tent_kernel_integral_1d(kernel: Kernel, R: float) -> float:
    """``int_{-R}^{R} g(v) (R - |v|) dv`` in closed form."""
    if kernel.is_log:
        return R * R * (1.5 - np.log(R))
    s = kernel.s
    return 2.0 * R ** (2.0 - s) / ((1.0 - s) * (2.0 - s))


# ---------------------------------------------------------------------------
# planar log kernel: corner antiderivative of  iint log|v| dv
# ---------------------------------------------------------------------------

def _corner_log(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # mixed primitive G with d2G/dxdy = log sqrt(x^2 + y^2); odd in x and y,
    # continuous (and zero) on both axes
    out = np.zeros(x.shape)
    nz = (x != 0.0) & (y != 0.0)
    xs = x[nz]
    ys = y[nz]
    out[nz] = (
        0.5 * xs * ys * np.log(xs * xs + ys * ys)
        - 1.5 * xs * ys
        + 0.5 * xs * xs * np.arctan(ys / xs)
        + 0.5 * ys * ys * np.arctan(xs / ys)
    )
    return out


def log_box_integral_2d(lo, hi) -> float:
    """``iint_box log|v| dv`` over an axis-aligned box, origin allowed inside."""
    xs = np.array([hi[0], lo[0], hi[0], lo[0]], dtype=float)
    ys = np.array([hi[1], hi[1], lo[1], lo[1]], dtype=float)
    sgn = np.array([1.0, -1.0, -1.0, 1.0])
    return float(np.sum(sgn * _corner_log(xs, ys)))


# ---------------------------------------------------------------------------
# corner-mapped Gauss-Legendre for boxes touching the origin, d = 2, 3
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _gl_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w  # on [0, 1]


def _power_map(kernel: Kernel, extra: float) -> int:
    # t-exponent of the mapped integrand is extra - s (Riesz); pick a power
    # substitution making it at least cubic so Gauss-Legendre converges fast
    if kernel.is_log:
        return 3
    gap = extra + 1.0 - kernel.s
    m = int(np.ceil(4.0 / max(gap, 0.25)))
    return max(2, min(m, 12))


def _orthant_integral(kernel: Kernel, edges: np.ndarray, signs: np.ndarray, weight, order: int) -> float:
    """Integral of g(|v|) * weight(v) over the orthant box [0, e1] x ... with
    the origin at a corner, evaluated in original (signed) coordinates."""
    d = edges.size
    t, wt = _gl_nodes(order)
    m = _power_map(kernel, float(d - 1))
    tau = t**m
    jac_t = m * t ** (m - 1)
    if d == 2:
        total = 0.0
        a, b = edges
        u, wu = _gl_nodes(order)
        # two triangles: x-major and y-major
        for (ea, eb, swap) in ((a, b, False), (b, a, True)):
            TT, UU = np.meshgrid(tau, u, indexing="ij")
            X = ea * TT
            Y = eb * TT * UU
            r = TT * np.sqrt(ea * ea + (eb * UU) ** 2)
            gv = kernel.g(np.where(r > 0, r, 1.0))
            if swap:
                vx, vy = Y, X
            else:
                vx, vy = X, Y
            f = gv * ea * eb * TT
            if weight is not None:
                f = f * weight(signs[0] * vx, signs[1] * vy)
            f = f * (jac_t[:, None] * wt[:, None]) * wu[None, :]
            total += float(f.sum())
        return total
    if d == 3:
        total = 0.0
        u, wu = _gl_nodes(order)
        v, wv = _gl_nodes(order)
        for perm in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            ea, eb, ec = edges[list(perm)]
            TT = tau[:, None, None]
            UU = u[None, :, None]
            VV = v[None, None, :]
            A = ea * TT
            B = eb * TT * UU
            C = ec * TT * VV
            r = TT * np.sqrt(ea * ea + (eb * UU) ** 2 + (ec * VV) ** 2)
            gv = kernel.g(np.where(r > 0, r, 1.0))
            coords = [None, None, None]
            coords[perm[0]], coords[perm[1]], coords[perm[2]] = A, B, C
            f = gv * ea * eb * ec * TT * TT
            if weight is not None:
                f = f * weight(
                    signs[0] * coords[0], signs[1] * coords[1], signs[2] * coords[2]
                )
            f = (
                f
                * (jac_t[:, None, None] * wt[:, None, None])
                * wu[None, :, None]
                * wv[None, None, :]
            )
            total += float(f.sum())
        return total
    raise ArgumentError("corner-mapped quadrature supports d = 2 or 3")


def _plain_box(kernel: Kernel, lo: np.ndarray, hi: np.ndarray, weight, order: int) -> float:
    # origin-free box: tensor Gauss-Legendre
    d = lo.size
    t, w = _gl_nodes(order)
    axes = [lo[a] + (hi[a] - lo[a]) * t for a in range(d)]
    wts = [(hi[a] - lo[a]) * w for a in range(d)]
    grids = np.meshgrid(*axes, indexing="ij")
    r = np.sqrt(sum(g * g for g in grids))
    f = kernel.g(r)
    if weight is not None:
        f = f * weight(*grids)
    wprod = wts[0]
    for a in range(1, d):
        wprod = np.multiply.outer(wprod, wts[a])
    return float((f * wprod).sum())


def box_kernel_integral(kernel: Kernel, lo, hi, weight=None, order: int = 32) -> float:
    """``int_box g(|v|) weight(v) dv`` for an axis-aligned box in d = 2 or 3.

    The box is split along the coordinate hyperplanes; pieces with the origin
    at a corner use the power-mapped corner scheme, the rest plain tensor
    Gauss-Legendre.  ``weight`` is called with one array per coordinate.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    d = lo.size
    pieces = [(lo, hi)]
    for a in range(d):
        nxt = []
        for plo, phi in pieces:
            if plo[a] < 0.0 < phi[a]:
                left_hi = phi.copy()
                left_hi[a] = 0.0
                right_lo = plo.copy()
                right_lo[a] = 0.0
                nxt.append((plo, left_hi))
                nxt.append((right_lo, phi))
            else:
                nxt.append((plo, phi))
        pieces = nxt
    total = 0.0
    for plo, phi in pieces:
        if np.any(phi - plo <= 0.0):
            continue
        touches = np.all((plo == 0.0) | (phi == 0.0))
        if touches:
            signs = np.where(phi > 0.0, 1.0, -1.0)
            edges = np.maximum(np.abs(plo), np.abs(phi))
            total += _orthant_integral(kernel, edges, signs, weight, order)
        else:
            total += _plain_box(kernel, plo, phi, weight, order)
    return total


# ---------------------------------------------------------------------------
# background integrals for any supported (kernel, d)
# ---------------------------------------------------------------------------

def background_pair_integral(kernel: Kernel, R: float, order: int = 48) -> float:
    """``iint_{C_R^2} g(x - y) dx dy``, computed as the tent-weighted integral
    ``int_{[-R, R]^d} g(v) prod_i (R - |v_i|) dv``."""
    d = kernel.d
    if d == 1:
        return tent_kernel_integral_1d(kernel, R)

    if d == 2:
        def tent(vx, vy):
            return (R - np.abs(vx)) * (R - np.abs(vy))
    else:
        def tent(vx, vy, vz):
            return (R - np.abs(vx)) * (R - np.abs(vy)) * (R - np.abs(vz))

    lo = np.full(d, -R)
    hi = np.full(d, R)
    return box_kernel_integral(kernel, lo, hi, weight=tent, order=order)


def point_background(kernel: Kernel, pts: np.ndarray, R: float, order: int = 32) -> np.ndarray:
    """``int_{C_R} g(p - y) dy`` for each point p (coordinates window-relative)."""
    d = kernel.d
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    if d == 1:
        return point_background_1d(kernel, pts[:, 0], R)
    if kernel.family is KernelFamily.LOG2D:
        out = np.empty(pts.shape[0])
        for i, p in enumerate(pts):
            lo = -R / 2.0 - p
            hi = R / 2.0 - p
            out[i] = -log_box_integral_2d(lo, hi)
        return out
    out = np.empty(pts.shape[0])
    for i, p in enumerate(pts):
        lo = -R / 2.0 - p
        hi = R / 2.0 - p
        out[i] = box_kernel_integral(kernel, lo, hi, weight=None, order=order)
    return out


# ---------------------------------------------------------------------------
# exact integration of g against piecewise-linear profiles in d = 1
# ---------------------------------------------------------------------------

def integrate_g_pwlinear(kernel: Kernel, nodes: np.ndarray, values: np.ndarray,
                         tent_R: float | None = None) -> float:
    """``int g(v) L(v) w(v) dv`` over [nodes[0], nodes[-1]] with L the piecewise
    linear interpolant of ``values`` and ``w(v) = (tent_R - v)`` or 1.

    Exact up to rounding: per cell the product L*w is a quadratic polynomial
    and the kernel moments have closed forms, including cells touching 0.
    """
    nodes = np.asarray(nodes, dtype=float)
    values = np.asarray(values, dtype=float)
    if nodes.ndim != 1 or nodes.shape != values.shape or nodes.size < 2:
        raise ArgumentError("nodes and values must be matching 1d arrays, length >= 2")
    if np.any(np.diff(nodes) <= 0.0) or nodes[0] < 0.0:
        raise ArgumentError("nodes must be strictly increasing and nonnegative")
    a = nodes[:-1]
    b = nodes[1:]
    ya = values[:-1]
    yb = values[1:]
    slope = (yb - ya) / (b - a)
    c0 = ya - slope * a
    c1 = slope
    if tent_R is None:
        q0, q1, q2 = c0, c1, np.zeros_like(c0)
    else:
        q0 = c0 * tent_R
        q1 = c1 * tent_R - c0
        q2 = -c1
    M0, M1, M2 = g_moments(kernel, a, b, jmax=2)
    return float(np.sum(q0 * M0 + q1 * M1 + q2 * M2))
