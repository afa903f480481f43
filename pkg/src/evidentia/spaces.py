"""Possibility spaces, propositions over them, and named partitions.

A space is the Cartesian product of named, finitely labelled dimensions,
enumerated row-major in declaration order so that cell ids are
deterministic.  Two flavours share one type:

* a *finite* space counts each cell as one unit of evidence;
* a *scaled* space declares the whole space to have the infinite
  cardinality ``aleph``, split evenly so each of its ``n`` cells is a
  tranche of cardinality ``aleph/n``.  Only whole tranches can be talked
  about; anything finer means building a new space with a finer grid.

Propositions are immutable subsets of one space's cells, combined with
``&`` (and), ``|`` (or) and ``~`` (not).  Cells never mix across spaces: a
proposition means something only relative to the model that produced its
space, so cross-space operations raise instead of silently coercing.

Everything here is immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Sequence

from .hyperrational import ALEPH, Hyperrational


@dataclass(frozen=True)
class Dimension:
    """One axis of a possibility space.

    ``bounds``, when present, gives the half-open numeric interval each
    label stands for; continuum declarations discretised into tranches
    carry them so numeric comparisons can resolve to whole cells.
    """

    name: str
    labels: tuple[str, ...]
    bounds: tuple[tuple[Fraction, Fraction], ...] | None = None


class Atom(NamedTuple):
    """One indivisible cell: its id and its per-dimension labels."""

    index: int
    labels: tuple[str, ...]


class PossibilitySpace:
    """Product of labelled dimensions; finite by default, infinite when
    ``scaled``."""

    def __init__(self, dimensions: Sequence[Dimension], scaled: bool = False):
        dims = tuple(dimensions)
        if not dims:
            raise ValueError("a space needs at least one dimension")
        seen = set()
        for dim in dims:
            if dim.name in seen:
                raise ValueError(f"duplicate dimension name {dim.name!r}")
            seen.add(dim.name)
            if not dim.labels:
                raise ValueError(f"dimension {dim.name!r} has no labels")
            if len(set(dim.labels)) != len(dim.labels):
                dupes = sorted({l for l in dim.labels if dim.labels.count(l) > 1})
                raise ValueError(
                    f"dimension {dim.name!r} repeats label(s): {', '.join(dupes)}"
                )
            if dim.bounds is not None and len(dim.bounds) != len(dim.labels):
                raise ValueError(f"dimension {dim.name!r}: bounds do not match labels")
        self._dims = dims
        self._scaled = bool(scaled)
        size = 1
        for dim in dims:
            size *= len(dim.labels)
        self._size = size
        strides = []
        acc = 1
        for dim in reversed(dims):
            strides.append(acc)
            acc *= len(dim.labels)
        self._strides = tuple(reversed(strides))
        if scaled:
            self._unit = ALEPH / size
            self._total = ALEPH
        else:
            self._unit = Hyperrational(1)
            self._total = Hyperrational(size)
        self._all_ids: frozenset[int] | None = None

    @property
    def dimensions(self) -> tuple[Dimension, ...]:
        return self._dims

    @property
    def scaled(self) -> bool:
        return self._scaled

    @property
    def size(self) -> int:
        """Number of cells (atoms, or tranches when scaled)."""
        return self._size

    @property
    def unit_cardinality(self) -> Hyperrational:
        """Evidence carried by one cell: 1, or ``aleph/n`` when scaled."""
        return self._unit

    @property
    def total_cardinality(self) -> Hyperrational:
        """Evidence carried by the whole space: ``n``, or ``aleph``."""
        return self._total

    def _universe(self) -> frozenset[int]:
        if self._all_ids is None:
            self._all_ids = frozenset(range(self._size))
        return self._all_ids

    @property
    def top(self) -> "Proposition":
        """The proposition true in every cell."""
        return Proposition(self, self._universe())

    @property
    def bottom(self) -> "Proposition":
        """The contradictory proposition: the empty subset."""
        return Proposition(self, frozenset())

    def labels_of(self, cell: int) -> tuple[str, ...]:
        if not 0 <= cell < self._size:
            raise IndexError(f"cell {cell} outside space of size {self._size}")
        out = []
        for dim, stride in zip(self._dims, self._strides):
            out.append(dim.labels[(cell // stride) % len(dim.labels)])
        return tuple(out)

    def assignment_of(self, cell: int) -> dict[str, str]:
        return dict(zip((d.name for d in self._dims), self.labels_of(cell)))

    def atoms(self) -> Iterator[Atom]:
        for cell in range(self._size):
            yield Atom(cell, self.labels_of(cell))

    def proposition(self, members: Iterable[int]) -> "Proposition":
        return Proposition(self, frozenset(members))

    def where(self, predicate: Callable[[Mapping[str, str]], bool]) -> "Proposition":
        """Subset of cells whose label assignment satisfies ``predicate``."""
        members = frozenset(
            cell for cell in range(self._size) if predicate(self.assignment_of(cell))
        )
        return Proposition(self, members)

    def axis_proposition(
        self, dimension: str, label_indices: Iterable[int]
    ) -> "Proposition":
        """Cells whose index along ``dimension`` is one of ``label_indices``."""
        k = self._dim_index(dimension)
        allowed = set(label_indices)
        stride = self._strides[k]
        width = len(self._dims[k].labels)
        members = frozenset(
            cell for cell in range(self._size) if (cell // stride) % width in allowed
        )
        return Proposition(self, members)

    def _dim_index(self, name: str) -> int:
        for i, dim in enumerate(self._dims):
            if dim.name == name:
                return i
        raise ValueError(f"no dimension named {name!r}")


@dataclass(frozen=True)
class Proposition:
    """A subset of one space's cells, closed under ``&``, ``|`` and ``~``."""

    space: PossibilitySpace
    members: frozenset[int]

    def __post_init__(self):
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        if members and (min(members) < 0 or max(members) >= self.space.size):
            raise ValueError("member ids fall outside the space")

    @property
    def count(self) -> int:
        return len(self.members)

    def _same_space(self, other: "Proposition"):
        if other.space is not self.space:
            raise ValueError("propositions belong to different spaces")

    def __and__(self, other):
        if not isinstance(other, Proposition):
            return NotImplemented
        self._same_space(other)
        return Proposition(self.space, self.members & other.members)

    def __or__(self, other):
        if not isinstance(other, Proposition):
            return NotImplemented
        self._same_space(other)
        return Proposition(self.space, self.members | other.members)

    def __invert__(self):
        return Proposition(self.space, self.space._universe() - self.members)

    def __repr__(self):
        shown = sorted(self.members)
        if len(shown) > 8:
            body = ", ".join(map(str, shown[:8])) + f", ... ({len(shown)} cells)"
        else:
            body = ", ".join(map(str, shown))
        return f"Proposition({{{body}}})"


@dataclass(frozen=True)
class StateSpacePartition:
    """Disjoint, exhaustive, named blocks of one space.

    Build through :func:`make_partition`, which validates the structure.
    """

    space: PossibilitySpace
    blocks: tuple[tuple[str, Proposition], ...]


def _describe_cells(space: PossibilitySpace, cells: Iterable[int], limit: int = 3) -> str:
    cells = sorted(cells)
    shown = ["/".join(space.labels_of(c)) for c in cells[:limit]]
    if len(cells) > limit:
        shown.append(f"... ({len(cells)} total)")
    return ", ".join(shown)


def make_partition(
    space: PossibilitySpace, blocks: Sequence[tuple[str, Proposition]]
) -> StateSpacePartition:
    """Validate and freeze a grouping of the space into named blocks.

    Raises ``ValueError`` naming the offending blocks (overlap) or the
    uncovered cells (non-exhaustiveness).
    """
    if not blocks:
        raise ValueError("a partition needs at least one block")
    owner: dict[int, str] = {}
    names = set()
    for name, prop in blocks:
        if prop.space is not space:
            raise ValueError(f"block {name!r} belongs to a different space")
        if name in names:
            raise ValueError(f"duplicate block name {name!r}")
        names.add(name)
        clashes = [cell for cell in prop.members if cell in owner]
        if clashes:
            other = owner[clashes[0]]
            raise ValueError(
                f"blocks {other!r} and {name!r} overlap on: "
                f"{_describe_cells(space, clashes)}"
            )
        for cell in prop.members:
            owner[cell] = name
    if len(owner) != space.size:
        missing = space._universe() - owner.keys()
        raise ValueError(
            f"partition does not cover the space; uncovered: "
            f"{_describe_cells(space, missing)}"
        )
    return StateSpacePartition(space, tuple((name, prop) for name, prop in blocks))


def build_finite_space(
    dimensions: Sequence[tuple[str, Sequence[str]]]
) -> PossibilitySpace:
    """Finite product space from ``(name, labels)`` pairs; one atom per
    combination, in row-major declaration order."""
    dims = [Dimension(name, tuple(labels)) for name, labels in dimensions]
    return PossibilitySpace(dims, scaled=False)


def build_scaled_space(
    tranche_labels: Sequence[str], name: str = "value"
) -> PossibilitySpace:
    """Scaled space of total cardinality ``aleph`` with one tranche of
    cardinality ``aleph/n`` per label."""
    dims = [Dimension(name, tuple(tranche_labels))]
    return PossibilitySpace(dims, scaled=True)
