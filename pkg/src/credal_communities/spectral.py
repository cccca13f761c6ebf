"""Spectral mapping of nodes through the eigensystem ``A x = lambda D x``."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import EigensolverError, InputError
from .graph import Graph, n_components, stats


@dataclass(frozen=True)
class Embedding:
    """Node coordinates (n x (c-1)) and the top ``c`` eigenvalues, descending.

    ``eigenvalues[0]`` belongs to the discarded leading eigenvector.
    """

    coords: np.ndarray
    eigenvalues: np.ndarray

    @property
    def dim(self) -> int:
        return self.coords.shape[1]


def generalized_eigs(g: Graph, k: int):
    """Top-``k`` solutions of ``A x = lambda D x``.

    Solved through the symmetric reduction ``D^-1/2 A D^-1/2 y = lambda y``
    with ``x = D^-1/2 y``. Eigenvectors are D-normalised (``x^T D x = 1``)
    and signed so that their largest-magnitude entry is positive.
    """
    n = g.n
    if not 1 <= k <= n:
        raise InputError(f"requested {k} eigenvectors of a {n}-node graph")
    deg = stats(g).degrees
    s = 1.0 / np.sqrt(deg)
    sym = g.weights * s[:, None] * s[None, :]
    sym = 0.5 * (sym + sym.T)
    try:
        vals, vecs = np.linalg.eigh(sym)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"symmetric eigensolver failed: {exc}") from None
    order = np.argsort(-vals, kind="stable")[:k]
    vals = vals[order]
    x = vecs[:, order] * s[:, None]
    # eigh returns orthonormal y, so x^T D x = 1 already; renormalise anyway
    x /= np.sqrt(np.einsum("ij,i,ij->j", x, deg, x))
    pivot = np.argmax(np.abs(x), axis=0)
    signs = np.sign(x[pivot, np.arange(k)])
    signs[signs == 0] = 1.0
    x *= signs
    return vals, x


def residuals(g: Graph, vals: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    """Relative residuals ``||A x - lambda D x|| / ||A x||`` per column."""
    deg = stats(g).degrees
    ax = g.weights @ vecs
    r = ax - (deg[:, None] * vecs) * vals[None, :]
    denom = np.linalg.norm(ax, axis=0)
    denom[denom == 0] = 1.0
    return np.linalg.norm(r, axis=0) / denom


def embed(g: Graph, c: int) -> Embedding:
    if not 2 <= c <= g.n:
        raise InputError(f"community count c={c} must satisfy 2 <= c <= n={g.n}")
    ncomp = n_components(g)
    if ncomp > 1:
        warnings.warn(f"graph has {ncomp} connected components; leading eigenvalue is degenerate",
                      stacklevel=2)
    vals, vecs = generalized_eigs(g, c)
    coords = np.ascontiguousarray(vecs[:, 1:])
    coords.setflags(write=False)
    vals.setflags(write=False)
    return Embedding(coords=coords, eigenvalues=vals)


def rescale_columns(coords: np.ndarray) -> np.ndarray:
    """Scale each column to unit max absolute value (zero columns untouched)."""
    peak = np.max(np.abs(coords), axis=0)
    peak[peak == 0] = 1.0
    return coords / peak
