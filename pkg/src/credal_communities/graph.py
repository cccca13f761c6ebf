"""Undirected weighted graphs: loading, validation and the modularity matrix."""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import GraphFormatError, InputError

Label = Hashable


@dataclass(frozen=True)
class GraphStats:
    degrees: np.ndarray
    total_weight: float


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected graph with a dense symmetric weight matrix.

    ``weights[i, j]`` is the weight of the edge between nodes ``i`` and ``j``
    (0 for no edge). A self-loop of weight ``w`` is stored once on the
    diagonal. ``node_attrs`` carries extra per-node fields from the input file
    (e.g. ground-truth conference ids in GML benchmark files).
    """

    node_labels: tuple
    weights: np.ndarray
    node_attrs: tuple = field(default=())

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        n = len(self.node_labels)
        if n == 0:
            raise InputError("empty graph")
        if w.shape != (n, n):
            raise InputError(f"weight matrix shape {w.shape} does not match {n} labels")
        if len(set(self.node_labels)) != n:
            raise InputError("node labels must be unique")
        if not np.all(np.isfinite(w)):
            raise InputError("weights must be finite")
        if np.any(w < 0):
            raise InputError("weights must be non-negative")
        if not np.array_equal(w, w.T):
            raise InputError("weight matrix must be symmetric")
        deg = w.sum(axis=1)
        isolated = np.flatnonzero(deg <= 0)
        if isolated.size:
            bad = ", ".join(str(self.node_labels[i]) for i in isolated[:10])
            raise InputError(f"isolated node(s) with zero degree: {bad}")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "node_labels", tuple(self.node_labels))
        attrs = tuple(self.node_attrs) if self.node_attrs else tuple({} for _ in range(n))
        if len(attrs) != n:
            raise InputError("node_attrs must have one entry per node")
        object.__setattr__(self, "node_attrs", attrs)

    @property
    def n(self) -> int:
        return len(self.node_labels)

    @property
    def n_edges(self) -> int:
        upper = np.triu(self.weights)
        return int(np.count_nonzero(upper))

    def index_of(self, label: Label) -> int:
        try:
            return self.node_labels.index(label)
        except ValueError:
            raise KeyError(label) from None


def stats(g: Graph) -> GraphStats:
    deg = g.weights.sum(axis=1)
    deg.setflags(write=False)
    return GraphStats(degrees=deg, total_weight=float(deg.sum()))


def modularity_matrix(g: Graph) -> np.ndarray:
    """Return ``B = W - k k^T / ||W||``; every row of ``B`` sums to zero."""
    st = stats(g)
    k = st.degrees
    return g.weights - np.outer(k, k) / st.total_weight


def n_components(g: Graph) -> int:
    from scipy.sparse.csgraph import connected_components

    count, _ = connected_components(g.weights != 0, directed=False)
    return int(count)


def label_sort_key(label):
    # ints before strings, each in natural order
    if isinstance(label, (int, np.integer)):
        return (0, int(label), "")
    return (1, 0, str(label))


def _coerce_label(token: str):
    if re.fullmatch(r"[+-]?\d+", token):
        return int(token)
    return token


class _Builder:
    """Accumulates labelled edges; duplicates and reversed pairs sum."""

    def __init__(self):
        self.index: dict = {}
        self.labels: list = []
        self.attrs: list = []
        self.edges: dict = {}
        self.self_loops = 0

    def add_node(self, label, attrs=None) -> int:
        if label not in self.index:
            self.index[label] = len(self.labels)
            self.labels.append(label)
            self.attrs.append(dict(attrs or {}))
        return self.index[label]

    def add_edge(self, u, v, w: float):
        i, j = self.add_node(u), self.add_node(v)
        if i == j:
            self.self_loops += 1
        key = (min(i, j), max(i, j))
        self.edges[key] = self.edges.get(key, 0.0) + w

    def build(self) -> Graph:
        n = len(self.labels)
        if n == 0:
            raise GraphFormatError("empty graph")
        if self.self_loops:
            warnings.warn(f"graph contains {self.self_loops} self-loop line(s); kept on the diagonal",
                          stacklevel=3)
        w = np.zeros((n, n))
        for (i, j), val in self.edges.items():
            w[i, j] = val
            w[j, i] = val
        return Graph(tuple(self.labels), w, tuple(self.attrs))


def parse_edge_list(text: str | Iterable[str]) -> Graph:
    """Parse ``src dst [weight]`` lines; ``#`` starts a comment."""
    lines = text.splitlines() if isinstance(text, str) else text
    b = _Builder()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise GraphFormatError(f"expected 'src dst [weight]', got {raw.strip()!r}", lineno)
        w = 1.0
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise GraphFormatError(f"bad weight {parts[2]!r}", lineno) from None
            if not np.isfinite(w):
                raise GraphFormatError(f"non-finite weight {parts[2]!r}", lineno)
            if w < 0:
                raise GraphFormatError(f"negative weight {w}", lineno)
        b.add_edge(_coerce_label(parts[0]), _coerce_label(parts[1]), w)
    try:
        return b.build()
    except GraphFormatError:
        raise
    except InputError as exc:
        raise GraphFormatError(str(exc)) from None


_GML_TOKEN = re.compile(r'\s*(?:(\[)|(\])|"([^"]*)"|([^\s\[\]"]+))')


def _gml_tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.lstrip().startswith("#"):
            continue
        pos = 0
        while pos < len(line):
            m = _GML_TOKEN.match(line, pos)
            if m is None or m.end() == pos:
                if line[pos:].strip():
                    raise GraphFormatError(f"unparseable text {line[pos:].strip()!r}", lineno)
                break
            pos = m.end()
            if m.group(1):
                yield "[", None, lineno
            elif m.group(2):
                yield "]", None, lineno
            elif m.group(3) is not None:
                yield "str", m.group(3), lineno
            else:
                yield "atom", m.group(4), lineno


def _gml_value(atom: str):
    for cast in (int, float):
        try:
            return cast(atom)
        except ValueError:
            pass
    return atom


def _parse_gml_tree(text: str) -> list:
    """Parse GML into nested ``[(key, value), ...]`` lists."""
    stack: list[list] = [[]]
    open_lines: list[int] = []
    key = None
    for kind, val, lineno in _gml_tokens(text):
        if key is None:
            if kind == "]":
                if not open_lines:
                    raise GraphFormatError("unbalanced ']'", lineno)
                open_lines.pop()
                done = stack.pop()
                stack[-1][-1] = (stack[-1][-1][0], done)
                continue
            if kind != "atom":
                raise GraphFormatError(f"expected a key, got {kind} {val!r}", lineno)
            key = val
            continue
        if kind == "[":
            stack[-1].append((key, None))
            stack.append([])
            open_lines.append(lineno)
        elif kind == "str":
            stack[-1].append((key, val))
        elif kind == "atom":
            stack[-1].append((key, _gml_value(val)))
        else:
            raise GraphFormatError(f"key {key!r} has no value", lineno)
        key = None
    if key is not None:
        raise GraphFormatError(f"key {key!r} has no value at end of input")
    if open_lines:
        raise GraphFormatError("unbalanced '[' (block never closed)", open_lines[-1])
    return stack[0]


def parse_gml(text: str) -> Graph:
    """Parse the node/edge subset of GML.

    Node labels come from ``label`` when present, otherwise ``id``. Edge
    ``value`` is the weight (default 1). Other node keys are kept in
    ``Graph.node_attrs``; other edge keys are ignored.
    """
    tree = _parse_gml_tree(text)
    graphs = [v for k, v in tree if k == "graph" and isinstance(v, list)]
    if not graphs:
        raise GraphFormatError("no 'graph [ ... ]' block found")
    body = graphs[0]

    b = _Builder()
    by_id: dict = {}
    for k, v in body:
        if k != "node" or not isinstance(v, list):
            continue
        fields = dict(v)
        if "id" not in fields:
            raise GraphFormatError("node block without id")
        nid = fields["id"]
        if nid in by_id:
            raise GraphFormatError(f"duplicate node id {nid!r}")
        label = fields.get("label", nid)
        if isinstance(label, str):
            label = _coerce_label(label)
        if label in b.index:
            raise GraphFormatError(f"duplicate node label {label!r}")
        attrs = {kk: vv for kk, vv in v if kk not in ("id", "label") and not isinstance(vv, list)}
        by_id[nid] = label
        b.add_node(label, attrs)

    for k, v in body:
        if k != "edge" or not isinstance(v, list):
            continue
        fields = dict(v)
        try:
            src, dst = fields["source"], fields["target"]
        except KeyError:
            raise GraphFormatError("edge block needs source and target") from None
        for end in (src, dst):
            if end not in by_id:
                raise GraphFormatError(f"edge references unknown node id {end!r}")
        w = fields.get("value", fields.get("weight", 1.0))
        if not isinstance(w, (int, float)):
            raise GraphFormatError(f"non-numeric edge value {w!r}")
        if w < 0:
            raise GraphFormatError(f"negative edge value {w}")
        b.add_edge(by_id[src], by_id[dst], float(w))
    try:
        return b.build()
    except GraphFormatError:
        raise
    except InputError as exc:
        raise GraphFormatError(str(exc)) from None


def write_edge_list(g: Graph) -> str:
    out = []
    n = g.n
    for i in range(n):
        for j in range(i, n):
            w = g.weights[i, j]
            if w != 0:
                out.append(f"{g.node_labels[i]} {g.node_labels[j]} {float(w)!r}")
    return "\n".join(out) + "\n"


def load_graph(path: str | Path, fmt: str = "auto") -> Graph:
    path = Path(path)
    if fmt == "auto":
        fmt = "gml" if path.suffix.lower() == ".gml" else "edge-list"
    if fmt not in ("gml", "edge-list"):
        raise InputError(f"unknown graph format {fmt!r}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    parser = parse_gml if fmt == "gml" else parse_edge_list
    try:
        return parser(text)
    except GraphFormatError as exc:
        raise GraphFormatError(f"{path}: {exc}") from None


def from_adjacency(weights: Sequence, labels: Sequence | None = None) -> Graph:
    w = np.asarray(weights, dtype=float)
    if labels is None:
        labels = range(w.shape[0])
    return Graph(tuple(labels), w)
