"""Segment-pair intersection scan: numba kernel with a pure-numpy fallback.

This is the only O(grid^2) loop in the package.  The numba path is used when
the package is importable and FOURIERKNOT_NO_NUMBA is unset; setting that
environment variable to a truthy value ("1", "true", ...) forces the numpy
path.  Both backends return identical candidate sets.
"""

from __future__ import annotations

import os

import numpy as np

_PARALLEL_EPS = 1e-14


def _scan_loop(px, py):
    # Scalar double loop over non-adjacent segment pairs of the closed
    # polyline (px, py) with px[n] == px[0].  Two passes: count, then fill,
    # so the output allocation is exact.  This body is what numba compiles.
    n = px.shape[0] - 1
    count = 0
    for i in range(n):
        ax = px[i]
        ay = py[i]
        rx = px[i + 1] - ax
        ry = py[i + 1] - ay
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            qx = px[j + 1] - px[j]
            qy = py[j + 1] - py[j]
            denom = rx * qy - ry * qx
            if denom < _PARALLEL_EPS and denom > -_PARALLEL_EPS:
                continue
            ex = px[j] - ax
            ey = py[j] - ay
            s = (ex * qy - ey * qx) / denom
            if s <= 0.0 or s >= 1.0:
                continue
            u = (ex * ry - ey * rx) / denom
            if u <= 0.0 or u >= 1.0:
                continue
            count += 1
    ii = np.empty(count, np.int64)
    jj = np.empty(count, np.int64)
    ss = np.empty(count, np.float64)
    uu = np.empty(count, np.float64)
    m = 0
    for i in range(n):
        ax = px[i]
        ay = py[i]
        rx = px[i + 1] - ax
        ry = py[i + 1] - ay
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            qx = px[j + 1] - px[j]
            qy = py[j + 1] - py[j]
            denom = rx * qy - ry * qx
            if denom < _PARALLEL_EPS and denom > -_PARALLEL_EPS:
                continue
            ex = px[j] - ax
            ey = py[j] - ay
            s = (ex * qy - ey * qx) / denom
            if s <= 0.0 or s >= 1.0:
                continue
            u = (ex * ry - ey * rx) / denom
            if u <= 0.0 or u >= 1.0:
                continue
            ii[m] = i
            jj[m] = j
            ss[m] = s
            uu[m] = u
            m += 1
    return ii, jj, ss, uu


def scan_pairs_numpy(px, py, block: int = 256):
    """Vectorized fallback: same candidates as the loop kernel, blocked rows."""
    px = np.asarray(px, dtype=np.float64)
    py = np.asarray(py, dtype=np.float64)
    n = px.shape[0] - 1
    ax = px[:-1]
    ay = py[:-1]
    rx = np.diff(px)
    ry = np.diff(py)
    out_i, out_j, out_s, out_u = [], [], [], []
    cols = np.arange(n)
    for start in range(0, n, block):
        stop = min(start + block, n)
        rows = np.arange(start, stop)
        # pair mask: j >= i+2 and not the wrap-adjacent pair (0, n-1)
        mask = cols[None, :] >= rows[:, None] + 2
        if start == 0:
            mask[0, n - 1] = False
        rxb = rx[rows][:, None]
        ryb = ry[rows][:, None]
        qx = rx[None, :]
        qy = ry[None, :]
        denom = rxb * qy - ryb * qx
        ex = ax[None, :] - ax[rows][:, None]
        ey = ay[None, :] - ay[rows][:, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            s = (ex * qy - ey * qx) / denom
            u = (ex * ryb - ey * rxb) / denom
        mask &= np.abs(denom) >= _PARALLEL_EPS
        mask &= (s > 0.0) & (s < 1.0) & (u > 0.0) & (u < 1.0)
        ib, jb = np.nonzero(mask)
        if ib.size:
            out_i.append(rows[ib])
            out_j.append(cols[jb])
            out_s.append(s[ib, jb])
            out_u.append(u[ib, jb])
    if not out_i:
        e = np.empty(0)
        return e.astype(np.int64), e.astype(np.int64), e, e
    return (
        np.concatenate(out_i),
        np.concatenate(out_j),
        np.concatenate(out_s),
        np.concatenate(out_u),
    )


def _env_truthy(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


_scan_jit = None
if not _env_truthy("FOURIERKNOT_NO_NUMBA"):
    try:
        from numba import njit

        _scan_jit = njit(cache=True)(_scan_loop)
    except ImportError:  # pragma: no cover - exercised via the env flag instead
        _scan_jit = None


def backend() -> str:
    """Name of the active scan backend: "numba" or "numpy"."""
    return "numba" if _scan_jit is not None else "numpy"


def scan_segment_pairs(px, py):
    """Candidate crossing cells: (i, j, s, u) per properly intersecting pair.

    i, j index segments of the closed polyline; s, u are the intersection
    parameters inside segment i and j respectively.
    """
    px = np.ascontiguousarray(px, dtype=np.float64)
    py = np.ascontiguousarray(py, dtype=np.float64)
    if _scan_jit is not None:
        return _scan_jit(px, py)
    return scan_pairs_numpy(px, py)
