"""Exact evidence calculus: counting measures with infinite and
infinitesimal values over declared possibility spaces, a small model
language, and a brute-force counting oracle for differential checks.

Quick taste::

    >>> from evidentia import build_scaled_space, evidence, probability
    >>> coin = build_scaled_space(["heads", "tails"], name="face")
    >>> heads = coin.where(lambda a: a["face"] == "heads")
    >>> str(evidence(heads))
    'aleph/2'
    >>> str(probability(heads))
    '1/2'

Submodules: :mod:`evidentia.dsl` (the model language),
:mod:`evidentia.oracle` (independent enumeration), :mod:`evidentia.suites`
(verification suites), :mod:`evidentia.cli` (command line),
:mod:`evidentia.fixtures` (bundled example models).
"""

from .evidence import (
    CheckReport,
    LogOdds,
    Odds,
    atomic_probability,
    check_product_rule,
    check_sum_rule,
    conditional_probability,
    evidence,
    evidence_top,
    log_odds,
    odds,
    partition_distribution,
    probability,
)
from .hyperrational import ALEPH, Hyperrational, MagnitudeClass, decimal_approximation
from .spaces import (
    Atom,
    Dimension,
    PossibilitySpace,
    Proposition,
    StateSpacePartition,
    build_finite_space,
    build_scaled_space,
    make_partition,
)

__version__ = "0.1.0"

__all__ = [
    "ALEPH",
    "Atom",
    "CheckReport",
    "Dimension",
    "Hyperrational",
    "LogOdds",
    "MagnitudeClass",
    "Odds",
    "PossibilitySpace",
    "Proposition",
    "StateSpacePartition",
    "atomic_probability",
    "build_finite_space",
    "build_scaled_space",
    "check_product_rule",
    "check_sum_rule",
    "conditional_probability",
    "decimal_approximation",
    "evidence",
    "evidence_top",
    "log_odds",
    "make_partition",
    "odds",
    "partition_distribution",
    "probability",
    "__version__",
]
