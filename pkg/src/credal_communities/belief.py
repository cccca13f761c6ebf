"""Mass functions over a frame of communities and the quantities derived from them.

Subsets of the frame ``{0, ..., c-1}`` are encoded as integer bitmasks
(bit ``k`` set means community ``k`` is a member).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import InputError, NumericalError

MASS_TOL = 1e-9


def to_mask(members: Iterable[int] | int) -> int:
    if isinstance(members, (int, np.integer)):
        return int(members)
    mask = 0
    for k in members:
        mask |= 1 << int(k)
    return mask


def members_of(mask: int) -> tuple[int, ...]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return tuple(out)


def format_set(mask: int) -> str:
    """Render a subset as sorted 1-based labels: ``{}``, ``{1,3}``."""
    return "{" + ",".join(str(k + 1) for k in members_of(mask)) + "}"


def parse_set(text: str) -> int:
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise InputError(f"bad focal-set string {text!r}")
    body = body[1:-1].strip()
    if not body:
        return 0
    return to_mask(int(tok) - 1 for tok in body.split(","))


@dataclass(frozen=True, eq=False)
class FocalSetCatalog:
    """Ordered focal sets: empty set, then by cardinality, lexicographic within.

    ``max_card`` caps the size of non-frame sets; the whole frame is always
    included (last). ``max_card == c`` gives the full power set.
    """

    c: int
    sets: tuple[int, ...]
    max_card: int

    @classmethod
    def build(cls, c: int, max_card: int | None = None) -> "FocalSetCatalog":
        if c < 1:
            raise InputError(f"frame size must be >= 1, got {c}")
        if max_card is None:
            max_card = c
        if max_card < 1:
            raise InputError(f"max_card must be >= 1, got {max_card}")
        max_card = min(max_card, c)
        sets = [0]
        for r in range(1, max_card + 1):
            sets.extend(to_mask(comb) for comb in combinations(range(c), r))
        omega = (1 << c) - 1
        if sets[-1] != omega:
            sets.append(omega)
        return cls(c=c, sets=tuple(sets), max_card=max_card)

    def __len__(self):
        return len(self.sets)

    def __eq__(self, other):
        return isinstance(other, FocalSetCatalog) and (self.c, self.sets) == (other.c, other.sets)

    def __hash__(self):
        return hash((self.c, self.sets))

    @property
    def omega(self) -> int:
        return (1 << self.c) - 1

    @property
    def is_full(self) -> bool:
        return len(self.sets) == 1 << self.c

    @cached_property
    def membership(self) -> np.ndarray:
        """Boolean ``f x c`` matrix: ``membership[j, k]`` iff community k is in set j."""
        mat = np.zeros((len(self.sets), self.c), dtype=bool)
        for j, s in enumerate(self.sets):
            for k in members_of(s):
                mat[j, k] = True
        mat.setflags(write=False)
        return mat

    @cached_property
    def cardinalities(self) -> np.ndarray:
        card = self.membership.sum(axis=1)
        card.setflags(write=False)
        return card

    @cached_property
    def _position(self) -> dict:
        return {s: j for j, s in enumerate(self.sets)}

    def index(self, members: Iterable[int] | int) -> int:
        mask = to_mask(members)
        try:
            return self._position[mask]
        except KeyError:
            raise KeyError(f"{format_set(mask)} is not in the catalog") from None

    def labels(self) -> list[str]:
        return [format_set(s) for s in self.sets]

    def singleton_indices(self) -> np.ndarray:
        return np.array([self.index(1 << k) for k in range(self.c)])


def _check_rows(masses: np.ndarray):
    if np.any(masses < -MASS_TOL):
        raise InputError("masses must be non-negative")
    err = np.abs(masses.sum(axis=-1) - 1.0)
    if np.any(err > MASS_TOL):
        raise InputError(f"masses must sum to 1 (max deviation {float(err.max()):.3g})")


@dataclass(frozen=True, eq=False)
class MassFunction:
    catalog: FocalSetCatalog
    masses: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.masses, dtype=float)
        if m.shape != (len(self.catalog),):
            raise InputError(f"expected {len(self.catalog)} masses, got shape {m.shape}")
        _check_rows(m)
        object.__setattr__(self, "masses", m)

    @classmethod
    def from_dict(cls, catalog: FocalSetCatalog, assignment: dict) -> "MassFunction":
        m = np.zeros(len(catalog))
        for members, value in assignment.items():
            m[catalog.index(members)] += value
        return cls(catalog, m)

    @property
    def empty_mass(self) -> float:
        return float(self.masses[0])


@dataclass(frozen=True, eq=False)
class CredalPartition:
    """One mass function per node: ``masses[i, j] = m_i(A_j)``."""

    catalog: FocalSetCatalog
    masses: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.masses, dtype=float)
        if m.ndim != 2 or m.shape[1] != len(self.catalog):
            raise InputError(f"mass matrix must be n x {len(self.catalog)}, got {m.shape}")
        _check_rows(m)
        object.__setattr__(self, "masses", m)

    @property
    def n(self) -> int:
        return self.masses.shape[0]

    def row(self, i: int) -> MassFunction:
        return MassFunction(self.catalog, self.masses[i])

    @classmethod
    def from_labels(cls, labels, c: int, catalog: FocalSetCatalog | None = None) -> "CredalPartition":
        """Certain partition: all of node i's mass on ``{labels[i]}``."""
        catalog = catalog or FocalSetCatalog.build(c)
        labels = np.asarray(labels, dtype=int)
        m = np.zeros((labels.size, len(catalog)))
        m[np.arange(labels.size), catalog.singleton_indices()[labels]] = 1.0
        return cls(catalog, m)


def bel(m: MassFunction, A: Iterable[int] | int) -> float:
    """Total mass of the nonempty focal sets contained in ``A``."""
    a = to_mask(A)
    return float(sum(v for s, v in zip(m.catalog.sets, m.masses) if s and (s & ~a) == 0))


def pl(m: MassFunction, A: Iterable[int] | int) -> float:
    """Total mass of the focal sets that intersect ``A``."""
    a = to_mask(A)
    return float(sum(v for s, v in zip(m.catalog.sets, m.masses) if s & a))


def contour(m: MassFunction | CredalPartition, normalized: bool = False) -> np.ndarray:
    """Plausibility of each singleton; a vector for one bba, ``n x c`` for a partition.

    With ``normalized=True`` each row is divided by ``1 - m(empty)``.
    """
    masses = np.atleast_2d(m.masses)
    out = masses @ m.catalog.membership.astype(float)
    if normalized:
        conflict = 1.0 - masses[:, 0]
        if np.any(conflict <= 0):
            raise NumericalError("cannot normalise plausibilities of a bba with m(empty) = 1")
        out = out / conflict[:, None]
    return out[0] if isinstance(m, MassFunction) else out


def pignistic(m: MassFunction | CredalPartition) -> np.ndarray:
    masses = np.atleast_2d(m.masses)
    cat = m.catalog
    share = np.zeros_like(cat.membership, dtype=float)
    nonempty = cat.cardinalities > 0
    share[nonempty] = cat.membership[nonempty] / cat.cardinalities[nonempty, None]
    conflict = 1.0 - masses[:, 0]
    if np.any(conflict <= 0):
        bad = int(np.flatnonzero(conflict <= 0)[0])
        raise NumericalError(f"pignistic transform undefined: m(empty) = 1 (row {bad})")
    out = (masses @ share) / conflict[:, None]
    return out[0] if isinstance(m, MassFunction) else out


@dataclass(frozen=True)
class HardCredalAssignment:
    indices: np.ndarray
    imprecise: np.ndarray


def hard_credal_assignment(p: CredalPartition) -> HardCredalAssignment:
    """Maximum-mass nonempty focal set per node.

    Ties go to the earlier catalog entry, which is also the smaller set.
    """
    idx = 1 + np.argmax(p.masses[:, 1:], axis=1)
    imprecise = p.catalog.cardinalities[idx] > 1
    return HardCredalAssignment(indices=idx, imprecise=imprecise)


def outlier_flags(p: CredalPartition, threshold: float = 0.5) -> np.ndarray:
    return p.masses[:, 0] > threshold


def imprecise_mass(p: CredalPartition) -> dict[str, np.ndarray]:
    """Per-node mass on imprecise sets, read two ways.

    ``pair``: mass on two-element sets only; ``all``: mass on every set with
    more than one element (Omega included).
    """
    card = p.catalog.cardinalities
    return {
        "pair": p.masses[:, card == 2].sum(axis=1),
        "all": p.masses[:, card > 1].sum(axis=1),
    }
