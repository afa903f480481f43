"""Lowering from syntax to spaces, partitions and executable queries.

Labelled dimensions become axes directly.  A continuum becomes ``tranches``
equal half-open interval cells between its endpoints, each labelled with
its exact bounds, e.g. ``[44,45)``.  A continuum declared with ``tranches
aleph`` asserts that the interval is infinitely subdivided; it compiles to
a single whole-interval cell, is only accepted in a scaled compile (where
the infinite interior is what ``aleph`` measures), and cannot be cut by
comparisons.

Predicates lower to member sets over whole cells.  An ordering comparison
resolves each tranche in full: a threshold on a tranche boundary is exact
(a bare boundary point weighs one atom, below tranche resolution), while a
threshold strictly inside a tranche is an error asking for a finer grid
rather than a silent approximation.

Queries are lowered eagerly, so every predicate problem surfaces at compile
time; evaluation itself is deferred behind :class:`PreparedQuery`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..evidence import (
    atomic_probability,
    conditional_probability,
    evidence,
    log_odds,
    odds,
    partition_distribution,
    probability,
)
from ..spaces import (
    Dimension,
    PossibilitySpace,
    Proposition,
    StateSpacePartition,
    make_partition,
)
from . import ast
from .diagnostics import Diagnostic, ModelError, SourceSpan

DEFAULT_ATOM_LIMIT = 10**7

_PROVENANCE = {
    "P": "Theorem 4",
    "P_cond": "Theorem 5",
    "O": "Theorem 3",
    "L": "Theorem 3",
    "E": "Axiom 3",
    "table": "Theorem 4",
    "atomic": "Axiom 4",
}


class _LoweringError(Exception):
    def __init__(self, message: str, span: SourceSpan):
        self.diagnostic = Diagnostic(message, span)
        super().__init__(message)


@dataclass(frozen=True)
class PreparedQuery:
    """One query, lowered and ready to run against its space."""

    text: str
    kind: str
    provenance: str
    _thunk: Callable[[int], object]

    def evaluate(self, digits: int = 6):
        """Run the query; ``digits`` only affects log-odds precision."""
        return self._thunk(digits)


@dataclass(frozen=True)
class CompiledModel:
    name: str
    space: PossibilitySpace
    partitions: dict[str, StateSpacePartition]
    queries: tuple[PreparedQuery, ...]


def _number_label(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _continuum_dimension(decl: ast.ContinuumDecl) -> Dimension:
    count = 1 if decl.tranches is None else decl.tranches
    width = (decl.high - decl.low) / count
    bounds = []
    labels = []
    for i in range(count):
        lo = decl.low + width * i
        hi = decl.low + width * (i + 1)
        bounds.append((lo, hi))
        labels.append(f"[{_number_label(lo)},{_number_label(hi)})")
    return Dimension(decl.name, tuple(labels), tuple(bounds))


def _comparison_indices(dim: Dimension, node: ast.Comparison) -> set[int]:
    # Whole tranches only: [lo, hi) lies inside "x < t" / "x <= t" exactly
    # when hi <= t, and inside "x > t" / "x >= t" exactly when lo >= t (a
    # boundary point is one atom, below tranche resolution).
    assert dim.bounds is not None
    below = node.op in ("<", "<=")
    out = set()
    for i, (lo, hi) in enumerate(dim.bounds):
        if below:
            if hi <= node.value:
                out.add(i)
            elif lo < node.value:
                raise _LoweringError(
                    f"threshold {node.value} splits tranche {dim.labels[i]} of "
                    f"{dim.name!r}; rebuild with a finer tranche count",
                    node.span,
                )
        else:
            if lo >= node.value:
                out.add(i)
            elif hi > node.value:
                raise _LoweringError(
                    f"threshold {node.value} splits tranche {dim.labels[i]} of "
                    f"{dim.name!r}; rebuild with a finer tranche count",
                    node.span,
                )
    return out


def lower_predicate(space: PossibilitySpace, pred: ast.Predicate) -> Proposition:
    """Turn a predicate tree into the subset of cells it denotes.

    Raises :class:`ModelError` when a comparison cannot be resolved to
    whole cells.
    """
    try:
        return _lower(space, pred)
    except _LoweringError as exc:
        raise ModelError([exc.diagnostic]) from None


def _lower(space: PossibilitySpace, pred: ast.Predicate) -> Proposition:
    if isinstance(pred, ast.TrueLiteral):
        return space.top
    if isinstance(pred, ast.FalseLiteral):
        return space.bottom
    if isinstance(pred, ast.NotPred):
        return ~_lower(space, pred.operand)
    if isinstance(pred, ast.AndPred):
        return _lower(space, pred.left) & _lower(space, pred.right)
    if isinstance(pred, ast.OrPred):
        return _lower(space, pred.left) | _lower(space, pred.right)
    if isinstance(pred, ast.LabelIs):
        dim = _find_dimension(space, pred.dimension, pred.span)
        return space.axis_proposition(
            pred.dimension, {dim.labels.index(pred.label)}
        )
    if isinstance(pred, ast.LabelIn):
        dim = _find_dimension(space, pred.dimension, pred.span)
        return space.axis_proposition(
            pred.dimension, {dim.labels.index(l) for l in pred.labels}
        )
    if isinstance(pred, ast.Comparison):
        dim = _find_dimension(space, pred.dimension, pred.span)
        if dim.bounds is None:
            raise _LoweringError(
                f"{pred.dimension!r} has no numeric order to compare against",
                pred.span,
            )
        return space.axis_proposition(pred.dimension, _comparison_indices(dim, pred))
    raise TypeError(f"not a predicate node: {pred!r}")


def _find_dimension(space: PossibilitySpace, name: str, span: SourceSpan) -> Dimension:
    for dim in space.dimensions:
        if dim.name == name:
            return dim
    raise _LoweringError(f"unknown dimension {name!r}", span)


def compile_model(
    model: ast.Model,
    scaled: bool = False,
    atom_limit: int = DEFAULT_ATOM_LIMIT,
) -> CompiledModel:
    """Build the space the model implies and lower all of its queries.

    ``scaled`` switches the space to total cardinality ``aleph``; ratio
    queries answer identically either way, which is what the
    scale-invariance suite verifies.
    """
    diagnostics: list[Diagnostic] = []
    if not model.declarations:
        raise ModelError(
            [
                Diagnostic(
                    "empty model: declare at least one dimension or continuum",
                    model.span,
                )
            ]
        )
    dims: list[Dimension] = []
    size = 1
    for decl in model.declarations:
        if isinstance(decl, ast.DimensionDecl):
            dims.append(Dimension(decl.name, decl.labels))
        else:
            if decl.tranches is None and not scaled:
                diagnostics.append(
                    Diagnostic(
                        f"continuum {decl.name!r} with aleph tranches needs a "
                        "scaled space (--scaled): its cells are infinitely "
                        "subdivided",
                        decl.span,
                    )
                )
            dims.append(_continuum_dimension(decl))
        size *= len(dims[-1].labels)
    if size > atom_limit:
        diagnostics.append(
            Diagnostic(
                f"model spans {size} atoms, above the limit of {atom_limit}; "
                "use coarser tranches or raise the limit",
                model.span,
            )
        )
    if diagnostics:
        raise ModelError(diagnostics)

    space = PossibilitySpace(dims, scaled=scaled)

    partitions: dict[str, StateSpacePartition] = {}
    for part in model.partitions:
        blocks = []
        ok = True
        for block in part.blocks:
            try:
                blocks.append((block.name, _lower(space, block.predicate)))
            except _LoweringError as exc:
                diagnostics.append(exc.diagnostic)
                ok = False
        if not ok:
            continue
        try:
            partitions[part.name] = make_partition(space, blocks)
        except ValueError as exc:
            diagnostics.append(
                Diagnostic(f"partition {part.name!r}: {exc}", part.span)
            )

    queries: list[PreparedQuery] = []
    for query in model.queries:
        try:
            queries.append(_prepare(space, partitions, query))
        except _LoweringError as exc:
            diagnostics.append(exc.diagnostic)

    if diagnostics:
        raise ModelError(diagnostics)
    return CompiledModel(model.name, space, partitions, tuple(queries))


def _prepare(
    space: PossibilitySpace,
    partitions: dict[str, StateSpacePartition],
    query: ast.Query,
) -> PreparedQuery:
    text = ast.render_query(query)
    provenance = _PROVENANCE[query.kind]
    if query.kind == "atomic":
        thunk = lambda digits: atomic_probability(space)
    elif query.kind == "table":
        if query.partition not in partitions:
            raise _LoweringError(
                f"unknown or invalid partition {query.partition!r}", query.span
            )
        table = partitions[query.partition]
        thunk = lambda digits: partition_distribution(table)
    elif query.kind == "P_cond":
        prop = _lower(space, query.predicate)
        given = _lower(space, query.given)
        thunk = lambda digits, a=prop, b=given: conditional_probability(a, b)
    else:
        prop = _lower(space, query.predicate)
        if query.kind == "P":
            thunk = lambda digits, a=prop: probability(a)
        elif query.kind == "O":
            thunk = lambda digits, a=prop: odds(a)
        elif query.kind == "L":
            thunk = lambda digits, a=prop: log_odds(a, digits)
        else:  # E
            thunk = lambda digits, a=prop: evidence(a)
    return PreparedQuery(text, query.kind, provenance, thunk)
