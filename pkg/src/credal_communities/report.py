"""JSON report: ``{config, graph_summary, per_c, best_c, baselines}``.

Mass matrices are keyed by the focal-set string (``"{1,3}"``) and hold one
value per node, in the order of ``graph_summary.nodes``.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .belief import CredalPartition, FocalSetCatalog, format_set, parse_set
from .graph import Graph, stats
from .pipeline import DetectionReport, CommunityResult


def _floats(a) -> list:
    return [float(v) for v in np.asarray(a, dtype=float).ravel()]


def _rows(a) -> list:
    return [_floats(row) for row in np.asarray(a, dtype=float)]


def _label(x):
    return int(x) if isinstance(x, (int, np.integer)) else str(x)


def _per_c(r: CommunityResult, labels) -> dict:
    cat = r.partition.catalog
    sets = cat.labels()
    idx = r.hard_credal.indices
    out = {
        "c": r.c,
        "Q_e": r.q_evidential,
        "Q_h": r.q_hard,
        "Q_fuzzy": r.q_fuzzy,
        "focal_sets": sets,
        "masses": {s: _floats(r.partition.masses[:, j]) for j, s in enumerate(sets)},
        "contour": _rows(r.contour),
        "pignistic": _rows(r.pignistic),
        "pignistic_labels": [int(k) + 1 for k in r.pignistic_labels],
        "hard_credal": [sets[j] for j in idx],
        "imprecise": [labels[i] for i in np.flatnonzero(r.hard_credal.imprecise)],
        "outliers": [labels[i] for i in np.flatnonzero(r.outliers)],
        "outlier_count": r.outlier_count,
        "ecm": {
            "objective": r.ecm.objective,
            "iterations": r.ecm.iterations,
            "converged": r.ecm.converged,
            "restart": r.ecm.restart,
            "restart_objectives": _floats(r.ecm.restart_objectives),
            "objective_trace": _floats(r.ecm.objective_trace),
            "prototypes": _rows(r.ecm.prototypes),
        },
        "eigenvalues": _floats(r.embedding.eigenvalues),
    }
    return out


def _baselines(r: CommunityResult, labels) -> dict | None:
    b = r.baselines
    if b is None:
        return None
    out: dict[str, Any] = {"c": r.c}
    if b.cm_labels is not None:
        out["cm"] = {"labels": [int(k) + 1 for k in b.cm_labels], "Q_h": b.cm_modularity}
    if b.fcm_memberships is not None:
        out["fcm"] = {
            "memberships": _rows(b.fcm_memberships),
            "labels": [int(k) + 1 for k in b.fcm_labels],
            "Q_fuzzy": b.fcm_modularity,
            "Q_h": b.fcm_hard_modularity,
            "multi_membership": [[k + 1 for k in ks] for ks in b.fcm_multi],
        }
    return out


def build_report(g: Graph, report: DetectionReport, config: dict) -> dict:
    labels = [_label(x) for x in g.node_labels]
    st = stats(g)
    baselines = [b for b in (_baselines(r, labels) for r in report.per_c) if b is not None]
    return {
        "config": config,
        "graph_summary": {
            "n": g.n,
            "edges": g.n_edges,
            "total_weight": st.total_weight,
            "nodes": labels,
        },
        "per_c": [_per_c(r, labels) for r in report.per_c],
        "best_c": report.best_c,
        "baselines": baselines,
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)


def partition_from_report(entry: dict) -> CredalPartition:
    """Rebuild the credal partition stored in one ``per_c`` entry."""
    c = entry["c"]
    masks = [parse_set(s) for s in entry["focal_sets"]]
    max_card = max(bin(m).count("1") for m in masks if m != (1 << c) - 1) if len(masks) > 2 else 1
    cat = FocalSetCatalog.build(c, max_card)
    if [format_set(m) for m in cat.sets] != entry["focal_sets"]:
        raise ValueError("focal sets in report do not form a standard catalog")
    m = np.column_stack([entry["masses"][s] for s in entry["focal_sets"]])
    return CredalPartition(cat, m)


def curve_csv(report: DetectionReport) -> str:
    lines = ["c,Q_e,Q_h,Q_fuzzy"]
    for c, qe, qh, qf in report.curve():
        lines.append(f"{c},{qe!r},{qh!r},{qf!r}")
    return "\n".join(lines) + "\n"


def embedding_csv(g: Graph, r: CommunityResult) -> str:
    d = r.points.shape[1]
    lines = ["node," + ",".join(f"x{k + 1}" for k in range(d))]
    for label, row in zip(g.node_labels, r.points):
        lines.append(f"{label}," + ",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def trace_csv(r: CommunityResult) -> str:
    lines = ["iteration,objective"]
    lines += [f"{i},{float(j)!r}" for i, j in enumerate(r.ecm.objective_trace)]
    return "\n".join(lines) + "\n"
