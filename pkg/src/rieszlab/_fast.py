"""Hot numeric loops: pairwise kernel sums and tent-weighted pair binning.

Each operation has a numba ``@njit`` implementation and a vectorized numpy
fallback.  The active one is picked at import time (see ``_accel``); both are
kept importable so the benchmark and the backend tests can compare them.
Family codes: 0 = logarithmic kernel, 1 = Riesz kernel with exponent ``s``.
"""

from __future__ import annotations

import numpy as np

from ._accel import HAVE_NUMBA, njit

FAMILY_LOG = 0
FAMILY_RIESZ = 1

_CHUNK = 256  # rows per block in the numpy fallbacks


def _g_of_sq(r2: np.ndarray, family: int, s: float) -> np.ndarray:
    # works on squared distances to avoid sqrt in both families
    if family == FAMILY_LOG:
        return -0.5 * np.log(r2)
    return r2 ** (-0.5 * s)


def pair_sum_numpy(pts: np.ndarray, family: int, s: float) -> tuple[float, float]:
    """Sum of g over unordered pairs and the minimal squared pair distance."""
    n = pts.shape[0]
    total = 0.0
    min_r2 = np.inf
    for i0 in range(0, n - 1, _CHUNK):
        i1 = min(i0 + _CHUNK, n - 1)
        for i in range(i0, i1):
            diff = pts[i + 1 :] - pts[i]
            r2 = np.einsum("ij,ij->i", diff, diff)
            m = r2.min() if r2.size else np.inf
            if m < min_r2:
                min_r2 = m
            if m > 0.0:
                total += float(_g_of_sq(r2, family, s).sum())
            elif r2.size:
                good = r2 > 0.0
                total += float(_g_of_sq(r2[good], family, s).sum())
    return total, float(min_r2)


@njit(cache=True)
def pair_sum_numba(pts, family, s):  # pragma: no cover - exercised via dispatch
    n = pts.shape[0]
    d = pts.shape[1]
    total = 0.0
    min_r2 = np.inf
    for i in range(n - 1):
        for j in range(i + 1, n):
            r2 = 0.0
            for a in range(d):
                diff = pts[i, a] - pts[j, a]
                r2 += diff * diff
            if r2 < min_r2:
                min_r2 = r2
            if r2 > 0.0:
                if family == FAMILY_LOG:
                    total += -0.5 * np.log(r2)
                else:
                    total += r2 ** (-0.5 * s)
    return total, min_r2


def bin_pairs_signed_numpy(x: np.ndarray, v_max: float, n_bins: int, R: float) -> np.ndarray:
    """Tent-corrected weights of signed 1d separations, both pair orders."""
    acc = np.zeros(n_bins)
    bw = 2.0 * v_max / n_bins
    n = x.shape[0]
    for i0 in range(0, n - 1, _CHUNK):
        i1 = min(i0 + _CHUNK, n - 1)
        for i in range(i0, i1):
            v = x[i + 1 :] - x[i]
            a = np.abs(v)
            keep = a < v_max
            if not keep.any():
                continue
            v = v[keep]
            w = 1.0 / (R - np.abs(v))
            idx = np.floor((v + v_max) / bw).astype(np.int64)
            np.clip(idx, 0, n_bins - 1, out=idx)
            np.add.at(acc, idx, w)
            np.add.at(acc, n_bins - 1 - idx, w)
    return acc


@njit(cache=True)
def bin_pairs_signed_numba(x, v_max, n_bins, R):  # pragma: no cover
    acc = np.zeros(n_bins)
    bw = 2.0 * v_max / n_bins
    n = x.shape[0]
    for i in range(n - 1):
        for j in range(i + 1, n):
            v = x[j] - x[i]
            a = abs(v)
            if a >= v_max:
                continue
            w = 1.0 / (R - a)
            idx = int((v + v_max) / bw)
            if idx < 0:
                idx = 0
            elif idx >= n_bins:
                idx = n_bins - 1
            acc[idx] += w
            acc[n_bins - 1 - idx] += w
    return acc


def bin_pairs_radial_numpy(pts: np.ndarray, v_max: float, n_bins: int, R: float) -> np.ndarray:
    """Tent-corrected radial pair weights for d >= 2 (ordered pairs)."""
    acc = np.zeros(n_bins)
    bw = v_max / n_bins
    n = pts.shape[0]
    for i0 in range(0, n - 1, _CHUNK):
        i1 = min(i0 + _CHUNK, n - 1)
        for i in range(i0, i1):
            diff = pts[i + 1 :] - pts[i]
            r = np.sqrt(np.einsum("ij,ij->i", diff, diff))
            keep = (r < v_max) & (r > 0.0)
            if not keep.any():
                continue
            tent = np.prod(R - np.abs(diff[keep]), axis=1)
            idx = np.floor(r[keep] / bw).astype(np.int64)
            np.clip(idx, 0, n_bins - 1, out=idx)
            np.add.at(acc, idx, 2.0 / tent)
    return acc


@njit(cache=True)
def bin_pairs_radial_numba(pts, v_max, n_bins, R):  # pragma: no cover
    acc = np.zeros(n_bins)
    bw = v_max / n_bins
    n = pts.shape[0]
    d = pts.shape[1]
    for i in range(n - 1):
        for j in range(i + 1, n):
            r2 = 0.0
            tent = 1.0
            for a in range(d):
                diff = pts[i, a] - pts[j, a]
                r2 += diff * diff
                tent *= R - abs(diff)
            r = np.sqrt(r2)
            if r >= v_max or r <= 0.0:
                continue
            idx = int(r / bw)
            if idx >= n_bins:
                idx = n_bins - 1
            acc[idx] += 2.0 / tent
    return acc


if HAVE_NUMBA:
    pair_sum = pair_sum_numba
    bin_pairs_signed = bin_pairs_signed_numba
    bin_pairs_radial = bin_pairs_radial_numba
else:
    pair_sum = pair_sum_numpy
    bin_pairs_signed = bin_pairs_signed_numpy
    bin_pairs_radial = bin_pairs_radial_numpy
