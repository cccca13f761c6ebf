"""Hard and fuzzy c-means on the spectral embedding, for comparison with ECM.

Both reuse the seeded farthest-point initialisation and restart policy of
:func:`credal_communities.ecm.ecm_cluster`.
"""

from __future__ import annotations

import numpy as np

from .ecm import farthest_point_init, restart_rng, as_points
from .errors import DegeneratePartitionError, InputError


def _sq_dist(x, v):
    diff = x[:, None, :] - v[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def baseline_cm(points, c: int, seed: int, restarts: int = 10, max_iter: int = 300) -> np.ndarray:
    """Lloyd's c-means; returns the labels of the lowest-SSE restart."""
    x = as_points(points)
    if x.shape[0] < c:
        raise InputError(f"need at least c={c} points, got {x.shape[0]}")
    best, best_sse, last_err = None, np.inf, None
    for r in range(restarts):
        try:
            v = farthest_point_init(x, c, restart_rng(seed, r))
        except DegeneratePartitionError as exc:
            last_err = exc
            continue
        labels = None
        failed = False
        for _ in range(max_iter):
            new = np.argmin(_sq_dist(x, v), axis=1)
            if labels is not None and np.array_equal(new, labels):
                break
            labels = new
            counts = np.bincount(labels, minlength=c)
            if np.any(counts == 0):
                last_err = DegeneratePartitionError("empty cluster in c-means",
                                                    cluster=int(np.flatnonzero(counts == 0)[0]))
                failed = True
                break
            v = np.stack([x[labels == k].mean(axis=0) for k in range(c)])
        if failed:
            continue
        sse = float(np.sum((x - v[labels]) ** 2))
        if sse < best_sse:
            best, best_sse = labels, sse
    if best is None:
        raise last_err or DegeneratePartitionError("c-means failed on every restart")
    return best


def fcm_memberships(points, prototypes, fuzzifier: float = 2.0) -> np.ndarray:
    """Memberships for fixed prototypes; a point on a prototype gets all of it."""
    x = as_points(points)
    v = np.asarray(prototypes, dtype=float)
    d2 = _sq_dist(x, v)
    u = np.zeros_like(d2)
    zero = d2 == 0
    hit = zero.any(axis=1)
    if np.any(~hit):
        w = d2[~hit] ** (-1.0 / (fuzzifier - 1.0))
        u[~hit] = w / w.sum(axis=1, keepdims=True)
    u[hit] = zero[hit] / zero[hit].sum(axis=1, keepdims=True)
    return u


def baseline_fcm(points, c: int, fuzzifier: float = 2.0, seed: int = 42, restarts: int = 10,
                 max_iter: int = 500, tol: float = 1e-8) -> np.ndarray:
    if not fuzzifier > 1:
        raise InputError(f"fuzzifier must be > 1, got {fuzzifier}")
    x = as_points(points)
    if x.shape[0] < c:
        raise InputError(f"need at least c={c} points, got {x.shape[0]}")
    best, best_j, last_err = None, np.inf, None
    for r in range(restarts):
        try:
            v = farthest_point_init(x, c, restart_rng(seed, r))
        except DegeneratePartitionError as exc:
            last_err = exc
            continue
        u = fcm_memberships(x, v, fuzzifier)
        j_old = np.inf
        for _ in range(max_iter):
            um = u ** fuzzifier
            v = (um.T @ x) / um.sum(axis=0)[:, None]
            u = fcm_memberships(x, v, fuzzifier)
            j = float(np.sum(u ** fuzzifier * _sq_dist(x, v)))
            if j == 0 or abs(j_old - j) / j < tol:
                break
            j_old = j
        if not np.all(np.isfinite(u)):
            last_err = DegeneratePartitionError("non-finite fuzzy memberships")
            continue
        if j < best_j:
            best, best_j = u, j
    if best is None:
        raise last_err or DegeneratePartitionError("fuzzy c-means failed on every restart")
    return best


def threshold_memberships(u, lam: float) -> list[tuple[int, ...]]:
    """Communities whose membership exceeds ``lam``, per node (0-based)."""
    if not 0 < lam < 1:
        raise InputError(f"threshold must lie in (0, 1), got {lam}")
    u = np.asarray(u)
    return [tuple(int(k) for k in np.flatnonzero(row > lam)) for row in u]
