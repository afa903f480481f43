"""Brute-force probability by explicit enumeration.

A second, independent realisation of counting: walk every atom of a finite
product space, evaluate a plain predicate, and divide match count by total
count with :class:`fractions.Fraction`.  Deliberately self-contained --
stdlib only, no imports from the rest of the package -- so differential
tests compare two genuinely separate computations.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Callable, Iterator, Mapping, Sequence

Dimensions = Sequence[tuple[str, Sequence[str]]]
Predicate = Callable[[Mapping[str, str]], bool]

MAX_ATOMS = 10**7


def atom_count(dimensions: Dimensions) -> int:
    if not dimensions:
        raise ValueError("no dimensions")
    total = 1
    for name, labels in dimensions:
        if not labels:
            raise ValueError(f"dimension {name!r} has no labels")
        total *= len(labels)
    return total


def iter_atoms(dimensions: Dimensions) -> Iterator[dict[str, str]]:
    names = [name for name, _ in dimensions]
    for combo in product(*(labels for _, labels in dimensions)):
        yield dict(zip(names, combo))


def _counts(dimensions: Dimensions, predicates: Sequence[Predicate]):
    total = atom_count(dimensions)
    if total > MAX_ATOMS:
        raise ValueError(f"{total} atoms exceeds the enumeration limit {MAX_ATOMS}")
    hits = [0] * len(predicates)
    for atom in iter_atoms(dimensions):
        for i, predicate in enumerate(predicates):
            if predicate(atom):
                hits[i] += 1
    return hits, total


def probability(dimensions: Dimensions, predicate: Predicate) -> Fraction:
    """(# atoms satisfying the predicate) / (# atoms), fully reduced."""
    hits, total = _counts(dimensions, [predicate])
    return Fraction(hits[0], total)


def conditional_probability(
    dimensions: Dimensions, predicate: Predicate, given: Predicate
) -> Fraction:
    """count(A and B) / count(B) by direct enumeration."""
    hits, _total = _counts(
        dimensions, [given, lambda atom: predicate(atom) and given(atom)]
    )
    reference, both = hits
    if reference == 0:
        raise ZeroDivisionError(
            "conditioning on impossibility: no atoms satisfy the reference predicate"
        )
    return Fraction(both, reference)
