"""Sweep the community count: embed, run ECM, score, and pick the best ``c``."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import belief
from .baselines import baseline_cm, baseline_fcm, threshold_memberships
from .belief import CredalPartition, FocalSetCatalog
from .ecm import EcmParams, EcmResult, check_catalog, ecm_cluster
from .errors import CredalError, InputError
from .graph import Graph
from .modularity import evidential_modularity, fuzzy_modularity, hard_modularity
from .spectral import Embedding, embed, rescale_columns

log = logging.getLogger(__name__)

BASELINES = ("cm", "fcm")


@dataclass(frozen=True)
class SweepConfig:
    c_min: int = 2
    c_max: int = 6
    ecm: EcmParams = field(default_factory=EcmParams)
    max_card: int | None = None  # None: full power set
    pl_normalized: bool = False
    baselines: tuple = ()
    fcm_fuzzifier: float = 2.0
    fcm_threshold: float = 0.25
    outlier_threshold: float = 0.5
    rescale: bool = True

    def __post_init__(self):
        if self.c_min < 2:
            raise InputError(f"c_min must be >= 2, got {self.c_min}")
        if self.c_max < self.c_min:
            raise InputError(f"c_max={self.c_max} is below c_min={self.c_min}")
        if not 0 < self.fcm_threshold < 1:
            raise InputError(f"fcm threshold must lie in (0, 1), got {self.fcm_threshold}")
        if not self.fcm_fuzzifier > 1:
            raise InputError(f"fcm fuzzifier must be > 1, got {self.fcm_fuzzifier}")
        unknown = set(self.baselines) - set(BASELINES)
        if unknown:
            raise InputError(f"unknown baseline(s): {sorted(unknown)}")
        if self.max_card is not None and self.max_card < 1:
            raise InputError(f"max_card must be >= 1, got {self.max_card}")

    def catalog(self, c: int) -> FocalSetCatalog:
        cat = FocalSetCatalog.build(c, self.max_card)
        check_catalog(c, cat)
        return cat

    def validate_for(self, g: Graph):
        if self.c_max > g.n - 1:
            raise InputError(f"c_max={self.c_max} must be at most n-1={g.n - 1}")
        for c in range(self.c_min, self.c_max + 1):
            self.catalog(c)


@dataclass(frozen=True)
class BaselineResult:
    cm_labels: np.ndarray | None = None
    cm_modularity: float | None = None
    fcm_memberships: np.ndarray | None = None
    fcm_labels: np.ndarray | None = None
    fcm_modularity: float | None = None
    fcm_hard_modularity: float | None = None
    fcm_multi: list | None = None


@dataclass(frozen=True)
class CommunityResult:
    c: int
    q_evidential: float
    q_hard: float
    q_fuzzy: float
    partition: CredalPartition
    contour: np.ndarray
    pignistic: np.ndarray
    pignistic_labels: np.ndarray
    hard_credal: belief.HardCredalAssignment
    outliers: np.ndarray
    ecm: EcmResult
    embedding: Embedding
    points: np.ndarray
    baselines: BaselineResult | None = None

    @property
    def outlier_count(self) -> int:
        return int(self.outliers.sum())


@dataclass(frozen=True)
class DetectionReport:
    per_c: tuple
    best_c: int

    def result(self, c: int) -> CommunityResult:
        for r in self.per_c:
            if r.c == c:
                return r
        raise KeyError(f"c={c} not in report (have {[r.c for r in self.per_c]})")

    @property
    def best(self) -> CommunityResult:
        return self.result(self.best_c)

    def curve(self) -> list[tuple[int, float, float, float]]:
        return [(r.c, r.q_evidential, r.q_hard, r.q_fuzzy) for r in self.per_c]


def select_best(per_c) -> int:
    best = per_c[0]
    for r in per_c[1:]:
        if r.q_evidential > best.q_evidential:
            best = r
    return best.c


def _run_baselines(g, x, c, cfg: SweepConfig) -> BaselineResult:
    out = {}
    seed, restarts = cfg.ecm.seed, cfg.ecm.restarts
    if "cm" in cfg.baselines:
        labels = baseline_cm(x, c, seed, restarts=restarts)
        out.update(cm_labels=labels, cm_modularity=hard_modularity(g, labels))
    if "fcm" in cfg.baselines:
        u = baseline_fcm(x, c, cfg.fcm_fuzzifier, seed, restarts=restarts)
        labels = np.argmax(u, axis=1)
        out.update(fcm_memberships=u, fcm_labels=labels,
                   fcm_modularity=fuzzy_modularity(g, u),
                   fcm_hard_modularity=hard_modularity(g, labels),
                   fcm_multi=threshold_memberships(u, cfg.fcm_threshold))
    return BaselineResult(**out)


def detect_one(g: Graph, c: int, cfg: SweepConfig) -> CommunityResult:
    emb = embed(g, c)
    x = rescale_columns(emb.coords) if cfg.rescale else np.array(emb.coords)
    res = ecm_cluster(x, c, cfg.catalog(c), cfg.ecm)
    part = res.partition
    pign = belief.pignistic(part)
    labels = np.argmax(pign, axis=1)
    result = CommunityResult(
        c=c,
        q_evidential=evidential_modularity(g, part, normalized=cfg.pl_normalized),
        q_hard=hard_modularity(g, labels),
        q_fuzzy=fuzzy_modularity(g, pign),
        partition=part,
        contour=belief.contour(part, normalized=cfg.pl_normalized),
        pignistic=pign,
        pignistic_labels=labels,
        hard_credal=belief.hard_credal_assignment(part),
        outliers=belief.outlier_flags(part, cfg.outlier_threshold),
        ecm=res,
        embedding=emb,
        points=x,
        baselines=_run_baselines(g, x, c, cfg) if cfg.baselines else None,
    )
    log.info("c=%d Q_e=%.6f Q_h=%.6f iterations=%d", c, result.q_evidential, result.q_hard,
             res.iterations)
    return result


def detect(g: Graph, cfg: SweepConfig) -> DetectionReport:
    cfg.validate_for(g)
    per_c = []
    for c in range(cfg.c_min, cfg.c_max + 1):
        try:
            per_c.append(detect_one(g, c, cfg))
        except CredalError as exc:
            exc.args = (f"c={c}: {exc}",) + exc.args[1:]
            raise
    return DetectionReport(per_c=tuple(per_c), best_c=select_best(per_c))
