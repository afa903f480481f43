"""End-to-end acceptance checks, one test per headline criterion.

Each test prints its own PASS/FAIL line (to the real stdout, so the
scorecard is visible even under pytest's capture) and enforces the stated
tolerance -- exact equality throughout -- plus a wall-clock budget.

Run with ``pytest tests/test_acceptance.py -v``.
"""

import json
import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from evidentia import ALEPH, Hyperrational, fixtures, suites
from evidentia.cli import main
from evidentia.dsl import compile_model, parse_model


@contextmanager
def criterion(number: int, label: str, budget_seconds: float):
    started = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"criterion {number} ({label}): FAIL", file=sys.__stdout__)
        raise
    elapsed = time.monotonic() - started
    print(
        f"criterion {number} ({label}): PASS in {elapsed:.2f}s "
        f"(budget {budget_seconds:.0f}s)",
        file=sys.__stdout__,
    )
    assert elapsed < budget_seconds, f"criterion {number} exceeded its time budget"


@pytest.fixture
def fixture_path(tmp_path):
    def materialise(name: str) -> str:
        target = tmp_path / f"{name}.evd"
        target.write_text(fixtures.source(name), encoding="utf-8")
        return str(target)

    return materialise


def eval_records(capsys, path: str, *flags) -> list[dict]:
    assert main(["eval", path, "--format", "json", *flags]) == 0
    return json.loads(capsys.readouterr().out)


def test_criterion_1_deck_distribution(capsys, fixture_path):
    with criterion(1, "card-deck distribution", 1.0):
        records = eval_records(capsys, fixture_path("deck"))
        table = next(r for r in records if r["kind"] == "table")
        values = {b["name"]: Fraction(b["exact"]) for b in table["blocks"]}
        assert values == {
            "aces": Fraction(1, 13),
            "face": Fraction(3, 13),
            "numbered": Fraction(9, 13),
        }
        assert sum(values.values()) == 1


def test_criterion_2_scaled_coin(capsys, fixture_path):
    with criterion(2, "infinite-scale coin", 1.0):
        records = {
            r["query"]: r for r in eval_records(capsys, fixture_path("coin"), "--scaled")
        }
        assert records["E(face == H)"]["exact"] == "aleph/2"
        assert records["E(true)"]["exact"] == "aleph"
        assert Hyperrational.parse(records["P(face == H)"]["exact"]) == Hyperrational(1, 2)


def test_criterion_3_infinitesimal_separation():
    with criterion(3, "infinitesimal separation", 1.0):
        from evidentia import atomic_probability, build_scaled_space, probability

        for labels in (["heads", "tails"], [f"t{i}" for i in range(90)]):
            space = build_scaled_space(labels)
            atom = atomic_probability(space)
            assert atom == 1 / ALEPH
            assert atom > Hyperrational(0)
            for k in range(1, 101):
                assert atom < Fraction(1, 10**k)
            assert probability(space.bottom) == Hyperrational(0)
            assert atom > probability(space.bottom)


def test_criterion_4_angle_ratio_median(capsys, fixture_path):
    with criterion(4, "angle/ratio median", 1.0):
        angle_records = eval_records(capsys, fixture_path("quadrant"))
        below = Fraction(angle_records[0]["exact"])
        above = Fraction(angle_records[1]["exact"])
        assert below == above == Fraction(1, 2)
        # the same split under opaque ratio labels changes nothing
        ratio_records = eval_records(capsys, fixture_path("quadrant_q"))
        assert Fraction(ratio_records[0]["exact"]) == below
        assert Fraction(ratio_records[1]["exact"]) == above
        angle_table = next(r for r in angle_records if r["kind"] == "table")
        ratio_table = next(r for r in ratio_records if r["kind"] == "table")
        assert [b["exact"] for b in angle_table["blocks"]] == [
            b["exact"] for b in ratio_table["blocks"]
        ]


def test_criterion_5_theorem_suite():
    with criterion(5, "theorem suite", 60.0):
        seed = suites.DEFAULT_SEED
        results = [
            suites.sum_rule_suite(random.Random(seed + 2), 200),
            suites.additivity_suite(random.Random(seed + 3), 1000),
            suites.product_rule_exhaustive_suite(max_atoms=12),
            suites.product_rule_random_suite(random.Random(seed + 4), 1000),
            suites.odds_reciprocity_suite(random.Random(seed + 5), 500),
            suites.monotonicity_suite(random.Random(seed + 6), 1000),
        ]
        for result in results:
            assert result.ok, result.summary()


def test_criterion_6_oracle_equivalence():
    with criterion(6, "oracle equivalence", 120.0):
        seed = suites.DEFAULT_SEED
        full = suites.oracle_equivalence_suite(random.Random(seed + 7), 1000)
        assert full.ok, full.summary()
        # seed-reproducible: an identical rerun reports identically
        again = suites.oracle_equivalence_suite(random.Random(seed + 7), 60, models=[])
        once_more = suites.oracle_equivalence_suite(random.Random(seed + 7), 60, models=[])
        assert (again.cases, again.failures) == (once_more.cases, once_more.failures)


def test_criterion_7_scale_invariance():
    with criterion(7, "scale invariance", 5.0):
        result = suites.scale_invariance_suite()
        assert result.ok, result.summary()
        assert result.cases > 0
        # spot-check the flagship number both ways
        model = parse_model(fixtures.source("deck"), "deck")
        for scaled in (False, True):
            compiled = compile_model(model, scaled=scaled)
            first = compiled.queries[0].evaluate()
            assert first.as_fraction() == Fraction(1, 13)


def test_criterion_8_hyperrational_property_suite():
    with criterion(8, "hyperrational field/order laws", 30.0):
        result = suites.hyperrational_laws_suite(
            random.Random(suites.DEFAULT_SEED + 1), 10000
        )
        assert result.ok, result.summary()
