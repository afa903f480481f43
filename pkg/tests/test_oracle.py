"""Tests for the enumeration oracle, including its independence from the
measure engine."""

import ast as python_ast
import inspect
from fractions import Fraction

import pytest

from evidentia import oracle

RANK_DIM = ("rank", "A 2 3 4 5 6 7 8 9 10 J Q K".split())
SUIT_DIM = ("suit", ["clubs", "diamonds", "hearts", "spades"])
PIPS = [str(i) for i in range(1, 7)]


def test_deck_ace_probability():
    result = oracle.probability([RANK_DIM, SUIT_DIM], lambda a: a["rank"] == "A")
    assert result == Fraction(1, 13)


def test_constant_true_probability():
    assert oracle.probability([RANK_DIM], lambda a: True) == 1


def test_two_dice_sum_of_seven():
    # hand enumeration: 16, 25, 34, 43, 52, 61 -> six of thirty-six pairs
    seven_pairs = {("1", "6"), ("2", "5"), ("3", "4"), ("4", "3"), ("5", "2"), ("6", "1")}
    result = oracle.probability(
        [("d1", PIPS), ("d2", PIPS)],
        lambda a: (a["d1"], a["d2"]) in seven_pairs,
    )
    assert result == Fraction(6, 36) == Fraction(1, 6)


def test_conditional_ace_given_ace_or_face():
    result = oracle.conditional_probability(
        [RANK_DIM, SUIT_DIM],
        lambda a: a["rank"] == "A",
        lambda a: a["rank"] in {"A", "J", "Q", "K"},
    )
    assert result == Fraction(1, 4)


def test_conditional_on_itself_is_one():
    pred = lambda a: a["rank"] == "Q"
    assert oracle.conditional_probability([RANK_DIM], pred, pred) == 1


def test_conditional_on_nothing_is_an_error():
    with pytest.raises(ZeroDivisionError):
        oracle.conditional_probability([RANK_DIM], lambda a: True, lambda a: False)


def test_enumeration_limit():
    too_big = [(f"d{i}", [str(j) for j in range(10)]) for i in range(8)]  # 10^8
    with pytest.raises(ValueError, match="exceeds the enumeration limit"):
        oracle.probability(too_big, lambda a: True)


def test_degenerate_dimensions_rejected():
    with pytest.raises(ValueError):
        oracle.probability([], lambda a: True)
    with pytest.raises(ValueError):
        oracle.probability([("empty", [])], lambda a: True)


def test_oracle_module_is_self_contained():
    """The oracle must not share code with the engine it cross-checks:
    stdlib imports only."""
    source = inspect.getsource(oracle)
    tree = python_ast.parse(source)
    imported = set()
    for node in python_ast.walk(tree):
        if isinstance(node, python_ast.Import):
            imported.update(alias.name for alias in node.names)
        elif isinstance(node, python_ast.ImportFrom):
            assert node.level == 0, "oracle must not import from the package"
            imported.add(node.module)
    assert imported <= {"__future__", "fractions", "itertools", "typing"}
