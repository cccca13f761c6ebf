"""Graphviz DOT rendering of one community count's hard credal partition."""

from __future__ import annotations

import numpy as np

from .belief import members_of
from .graph import Graph, label_sort_key
from .pipeline import CommunityResult

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
    "#8c6d31", "#843c39", "#7b4173", "#3182bd",
)


def _color(k: int) -> str:
    return PALETTE[k % len(PALETTE)]


def _quote(text) -> str:
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: Graph, result: CommunityResult, name: str = "communities") -> str:
    """Nodes filled by community; imprecise nodes wedged across their communities;
    outliers drawn as boxes with a dashed border."""
    cat = result.partition.catalog
    order = sorted(range(g.n), key=lambda i: label_sort_key(g.node_labels[i]))
    lines = [f"graph {_quote(name)} {{", f"  // c = {result.c}",
             "  node [style=filled, shape=circle];"]
    for i in order:
        members = members_of(cat.sets[result.hard_credal.indices[i]])
        attrs = {}
        if result.hard_credal.imprecise[i]:
            attrs["style"] = "wedged"
            attrs["fillcolor"] = ":".join(_color(k) for k in members)
            attrs["community"] = "{" + ",".join(str(k + 1) for k in members) + "}"
            attrs["imprecise"] = "true"
        else:
            attrs["fillcolor"] = _color(members[0])
            attrs["community"] = str(members[0] + 1)
        if result.outliers[i]:
            attrs["shape"] = "box"
            attrs["style"] = attrs.get("style", "filled") + ",dashed"
            attrs["outlier"] = "true"
        body = ", ".join(f"{k}={_quote(v)}" for k, v in attrs.items())
        lines.append(f"  {_quote(g.node_labels[i])} [{body}];")
    rank = {i: r for r, i in enumerate(order)}
    rows, cols = np.nonzero(np.triu(g.weights))
    edges = sorted((tuple(sorted(e, key=rank.get)) for e in zip(rows.tolist(), cols.tolist())),
                   key=lambda e: (rank[e[0]], rank[e[1]]))
    for i, j in edges:
        w = float(g.weights[i, j])
        extra = "" if w == 1.0 else f" [weight={w!r}]"
        lines.append(f"  {_quote(g.node_labels[i])} -- {_quote(g.node_labels[j])}{extra};")
    lines.append("}")
    return "\n".join(lines) + "\n"
