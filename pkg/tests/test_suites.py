"""Tests for the verification suites themselves: they pass on the real
code, they are seed-reproducible, and they actually detect violations."""

import random

from evidentia import suites
from evidentia.dsl import parse_model


def test_measure_law_suites_pass_quickly():
    assert suites.sum_rule_suite(random.Random(1), 60).ok
    assert suites.additivity_suite(random.Random(2), 60).ok
    assert suites.odds_reciprocity_suite(random.Random(3), 60).ok
    assert suites.monotonicity_suite(random.Random(4), 60).ok
    assert suites.product_rule_random_suite(random.Random(5), 60).ok


def test_product_rule_exhaustive_small():
    result = suites.product_rule_exhaustive_suite(max_atoms=7)
    assert result.ok
    assert result.cases == sum(4**n for n in range(1, 8))


def test_hyperrational_laws_suite_passes():
    assert suites.hyperrational_laws_suite(random.Random(6), 300).ok


def test_scale_invariance_on_fixtures():
    result = suites.scale_invariance_suite()
    assert result.ok
    assert result.cases > 0


def test_scale_invariance_skips_unenumerable_models():
    model = parse_model('model "m" { continuum t from 0 to 1 tranches aleph }')
    result = suites.scale_invariance_suite([("m", model)])
    assert result.ok
    assert "skipped models: m" in result.notes


def test_oracle_equivalence_passes():
    assert suites.oracle_equivalence_suite(random.Random(7), 60).ok


def test_oracle_equivalence_is_seed_reproducible():
    first = suites.oracle_equivalence_suite(random.Random(99), 40, models=[])
    second = suites.oracle_equivalence_suite(random.Random(99), 40, models=[])
    assert (first.cases, first.failures) == (second.cases, second.failures)


def test_run_all_smoke():
    results = suites.run_all(seed=5, instances=10)
    assert results and all(r.ok for r in results)
    names = [r.name for r in results]
    assert "sum rule" in names and "oracle equivalence" in names


def test_run_all_with_zero_instances_is_empty():
    assert suites.run_all(seed=5, instances=0) == []


def test_substitution_bound_clears_polynomial_roots():
    from evidentia import ALEPH

    value = (ALEPH - 10) / (ALEPH - 7)  # roots at 10 and 7
    bound = suites.substitution_bound(value)
    assert bound > 10
    assert value.substitute(bound) > 0


def test_suites_catch_a_broken_measure(monkeypatch):
    """Sanity: a deliberately wrong evidence function must be detected."""
    from evidentia import evidence as real_evidence

    def wrong_evidence(prop):
        return real_evidence(prop) + (1 if prop.count == 3 else 0)

    monkeypatch.setattr(suites, "evidence", wrong_evidence)
    result = suites.monotonicity_suite(random.Random(12), 300)
    assert not result.ok
