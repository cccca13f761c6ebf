"""Hard, fuzzy and evidential modularity of a graph partition."""

from __future__ import annotations

import numpy as np

from .belief import CredalPartition, contour
from .errors import InputError
from .graph import Graph, modularity_matrix, stats


def _bilinear(g: Graph, u: np.ndarray) -> float:
    # trace(U^T B U) / ||W||, U is n x c
    b = modularity_matrix(g)
    return float(np.einsum("ik,ik->", u, b @ u) / stats(g).total_weight)


def hard_modularity(g: Graph, labels) -> float:
    labels = np.asarray(labels, dtype=int)
    if labels.shape != (g.n,):
        raise InputError(f"expected {g.n} labels, got shape {labels.shape}")
    if labels.min() < 0:
        raise InputError("labels must be non-negative")
    c = int(labels.max()) + 1
    onehot = np.zeros((g.n, c))
    onehot[np.arange(g.n), labels] = 1.0
    return _bilinear(g, onehot)


def fuzzy_modularity(g: Graph, u) -> float:
    u = np.asarray(u, dtype=float)
    if u.ndim != 2 or u.shape[0] != g.n:
        raise InputError(f"membership matrix must be {g.n} x c, got {u.shape}")
    if np.any(u < -1e-12) or np.any(np.abs(u.sum(axis=1) - 1.0) > 1e-9):
        raise InputError("membership rows must be non-negative and sum to 1")
    return _bilinear(g, u)


def evidential_modularity(g: Graph, p: CredalPartition, normalized: bool = False) -> float:
    """Modularity evaluated on the plausibilities of singleton communities.

    Raw plausibilities are used unless ``normalized`` is set, in which case each
    node's contour is divided by ``1 - m(empty)``.
    """
    if p.n != g.n:
        raise InputError(f"partition has {p.n} rows, graph has {g.n} nodes")
    return _bilinear(g, contour(p, normalized=normalized))
