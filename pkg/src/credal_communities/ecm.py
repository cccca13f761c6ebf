"""Evidential c-means: alternating minimisation of the ECM objective.

The objective for points ``x_i`` and a credal partition ``m`` is::

    J = sum_i sum_{A_j != {}} |A_j|^alpha m_ij^beta ||x_i - v_j||^2
        + sum_i delta^2 m_i({})^beta

where ``v_j`` is the mean of the singleton prototypes of the members of
``A_j``. Masses of every node sum to one (empty set included).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .belief import CredalPartition, FocalSetCatalog
from .errors import DegeneratePartitionError, InputError

MAX_FULL_FRAME = 8


@dataclass(frozen=True)
class EcmParams:
    alpha: float = 1.0
    beta: float = 2.0
    delta: float = 10.0
    max_iter: int = 500
    tol: float = 1e-8
    restarts: int = 10
    seed: int = 42

    def __post_init__(self):
        if self.alpha < 0:
            raise InputError(f"alpha must be >= 0, got {self.alpha}")
        if not self.beta > 1:
            raise InputError(f"beta must be > 1, got {self.beta}")
        if not self.delta > 0:
            raise InputError(f"delta must be > 0, got {self.delta}")
        if not self.tol > 0:
            raise InputError(f"tol must be > 0, got {self.tol}")
        if self.max_iter < 1:
            raise InputError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.restarts < 1:
            raise InputError(f"restarts must be >= 1, got {self.restarts}")


@dataclass(frozen=True)
class Barycenters:
    """Reference points of the nonempty focal sets (row j <-> catalog set j+1)."""

    catalog: FocalSetCatalog
    prototypes: np.ndarray
    centers: np.ndarray


@dataclass(frozen=True)
class EcmResult:
    partition: CredalPartition
    prototypes: np.ndarray
    objective: float
    iterations: int
    objective_trace: np.ndarray
    converged: bool
    restart: int = 0
    restart_objectives: tuple = field(default=())


def barycenters(prototypes: np.ndarray, catalog: FocalSetCatalog) -> Barycenters:
    v = np.asarray(prototypes, dtype=float)
    if v.ndim != 2 or v.shape[0] != catalog.c:
        raise InputError(f"expected {catalog.c} prototypes, got array of shape {v.shape}")
    memb = catalog.membership[1:].astype(float)
    centers = (memb @ v) / catalog.cardinalities[1:, None]
    # singletons must reproduce their prototype exactly
    for k, j in enumerate(catalog.singleton_indices()):
        centers[j - 1] = v[k]
    return Barycenters(catalog=catalog, prototypes=v, centers=centers)


def _sq_distances(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centers[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def as_points(points, d=None) -> np.ndarray:
    x = np.asarray(points, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise InputError(f"points must be an n x d matrix, got shape {x.shape}")
    if d is not None and x.shape[1] != d:
        raise InputError(f"points have dimension {x.shape[1]}, prototypes {d}")
    return x


def ecm_objective(points, partition: CredalPartition, prototypes, params: EcmParams) -> float:
    cat = partition.catalog
    v = np.asarray(prototypes, dtype=float)
    x = as_points(points, v.shape[1] if v.ndim == 2 else None)
    if x.shape[0] != partition.n:
        raise InputError(f"{x.shape[0]} points but {partition.n} mass rows")
    bary = barycenters(v, cat)
    d2 = _sq_distances(x, bary.centers)
    m = partition.masses
    card = cat.cardinalities[1:].astype(float)
    focal = np.sum(card ** params.alpha * m[:, 1:] ** params.beta * d2)
    empty = params.delta ** 2 * np.sum(m[:, 0] ** params.beta)
    return float(focal + empty)


def update_masses(points, bary: Barycenters, params: EcmParams) -> CredalPartition:
    """Optimal masses for fixed barycenters (closed form of the Lagrangian)."""
    cat = bary.catalog
    x = as_points(points, bary.centers.shape[1])
    d2 = _sq_distances(x, bary.centers)
    card = cat.cardinalities[1:].astype(float)
    expo = -1.0 / (params.beta - 1.0)
    n = x.shape[0]
    masses = np.zeros((n, len(cat)))

    zero = d2 == 0
    hit = zero.any(axis=1)
    regular = ~hit
    if np.any(regular):
        cost = card[None, :] ** params.alpha * d2[regular]
        logs = np.empty((cost.shape[0], cost.shape[1] + 1))
        logs[:, 0] = expo * np.log(params.delta ** 2)
        logs[:, 1:] = expo * np.log(cost)
        logs -= logs.max(axis=1, keepdims=True)
        w = np.exp(logs)
        masses[regular] = w / w.sum(axis=1, keepdims=True)
    for i in np.flatnonzero(hit):
        cand = np.flatnonzero(zero[i])
        cand = cand[card[cand] == card[cand].min()]
        masses[i, 1 + cand] = 1.0 / cand.size
    return CredalPartition(cat, masses)


def update_prototypes(points, partition: CredalPartition, params: EcmParams) -> np.ndarray:
    """Prototypes minimising J for fixed masses, via the ``c x c`` system ``H V = R``."""
    cat = partition.catalog
    x = as_points(points)
    if x.shape[0] != partition.n:
        raise InputError(f"{x.shape[0]} points but {partition.n} mass rows")
    memb = cat.membership[1:].astype(float)
    card = cat.cardinalities[1:].astype(float)
    mb = partition.masses[:, 1:] ** params.beta
    per_set = mb.sum(axis=0)
    h = memb.T @ ((card ** (params.alpha - 2.0) * per_set)[:, None] * memb)
    r = (memb.T * card ** (params.alpha - 1.0)) @ (mb.T @ x)
    diag = np.diag(h)
    empty = np.flatnonzero(diag <= 1e-300)
    if empty.size:
        raise DegeneratePartitionError("no mass on any focal set containing a cluster",
                                       cluster=int(empty[0]))
    try:
        v = np.linalg.solve(h, r)
    except np.linalg.LinAlgError:
        raise DegeneratePartitionError("singular prototype system") from None
    if not np.all(np.isfinite(v)):
        raise DegeneratePartitionError("non-finite prototypes")
    return v


def farthest_point_init(points: np.ndarray, c: int, rng: np.random.Generator) -> np.ndarray:
    """Seeded greedy sweep: random first row, then the row farthest from those chosen."""
    x = as_points(points)
    n = x.shape[0]
    chosen = [int(rng.integers(n))]
    dmin = np.sum((x - x[chosen[0]]) ** 2, axis=1)
    for k in range(1, c):
        nxt = int(np.argmax(dmin))
        if dmin[nxt] <= 0:
            raise DegeneratePartitionError(f"fewer than {c} distinct points for initialisation",
                                           cluster=k)
        chosen.append(nxt)
        dmin = np.minimum(dmin, np.sum((x - x[nxt]) ** 2, axis=1))
    return x[chosen].copy()


def restart_rng(seed: int, restart: int) -> np.random.Generator:
    return np.random.default_rng([int(seed) & 0xFFFFFFFFFFFFFFFF, restart])


def _run_once(x, catalog, params, rng) -> EcmResult:
    v = farthest_point_init(x, catalog.c, rng)
    part = update_masses(x, barycenters(v, catalog), params)
    j = ecm_objective(x, part, v, params)
    trace = [j]
    converged = False
    it = 0
    for it in range(1, params.max_iter + 1):
        v = update_prototypes(x, part, params)
        part = update_masses(x, barycenters(v, catalog), params)
        j_new = ecm_objective(x, part, v, params)
        trace.append(j_new)
        change = abs(j - j_new)
        j = j_new
        if j == 0 or change / j < params.tol:
            converged = True
            break
    return EcmResult(partition=part, prototypes=v, objective=j, iterations=it,
                     objective_trace=np.array(trace), converged=converged)


def check_catalog(c: int, catalog: FocalSetCatalog):
    if catalog.c != c:
        raise InputError(f"catalog frame size {catalog.c} does not match c={c}")
    if catalog.is_full and c > MAX_FULL_FRAME:
        raise InputError(f"full power-set catalog is limited to c <= {MAX_FULL_FRAME} "
                         f"(got c={c}); use a cardinality cap such as max_card=2")


def ecm_cluster(points, c: int, catalog: FocalSetCatalog, params: EcmParams) -> EcmResult:
    """Run ECM from ``params.restarts`` seeded starts and keep the lowest objective."""
    x = as_points(points)
    check_catalog(c, catalog)
    if x.shape[0] < c:
        raise InputError(f"need at least c={c} points, got {x.shape[0]}")
    best = None
    objectives = []
    last_err = None
    for r in range(params.restarts):
        try:
            res = _run_once(x, catalog, params, restart_rng(params.seed, r))
        except DegeneratePartitionError as exc:
            last_err = exc
            objectives.append(float("nan"))
            continue
        objectives.append(res.objective)
        if best is None or res.objective < best[0].objective:
            best = (res, r)
    if best is None:
        raise last_err
    res, r = best
    return EcmResult(partition=res.partition, prototypes=res.prototypes, objective=res.objective,
                     iterations=res.iterations, objective_trace=res.objective_trace,
                     converged=res.converged, restart=r, restart_objectives=tuple(objectives))
