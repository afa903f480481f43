"""The measures: evidence, odds, log-odds, probability, conditional
probability, and executable checks of the rules they obey.

``evidence`` is the primitive: the exact cardinality of a proposition
(cell count, times ``aleph/n`` per cell on a scaled space).  Every other
measure is a ratio of evidence values, so the scale convention cancels and
finite and scaled spaces answer ratio queries with the same rationals.

The ``check_*`` functions return small reports instead of raising, because
they double as the executable derivation of the classic sum and product
rules; the verification suites and the CLI ``check`` subcommand aggregate
them over many random propositions.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction

from .hyperrational import Hyperrational, MagnitudeClass
from .spaces import PossibilitySpace, Proposition, StateSpacePartition


def evidence(prop: Proposition) -> Hyperrational:
    """Counting measure: how much of the space makes the proposition true."""
    return prop.space.unit_cardinality * prop.count


def evidence_top(space: PossibilitySpace) -> Hyperrational:
    """Evidence for the proposition that is true by logic alone."""
    return space.total_cardinality


def probability(prop: Proposition) -> Hyperrational:
    """E(A) / E(A or not A): evidence for ``prop`` relative to certainty."""
    return evidence(prop) / evidence_top(prop.space)


def conditional_probability(prop: Proposition, given: Proposition) -> Hyperrational:
    """E(A and B) / E(B): how much of the evidence for ``given`` also
    carries ``prop``."""
    if given.space is not prop.space:
        raise ValueError("propositions belong to different spaces")
    reference = evidence(given)
    if not reference:
        raise ZeroDivisionError(
            "conditioning on impossibility: the reference proposition has zero evidence"
        )
    return evidence(prop & given) / reference


def atomic_probability(space: PossibilitySpace) -> Hyperrational:
    """Probability of one indivisible possibility: 1 over the space's
    total cardinality.

    On a scaled space this is the infinitesimal ``1/aleph``: positive yet
    smaller than every positive rational, which keeps a bare possibility
    strictly above an impossibility.
    """
    return Hyperrational(1) / evidence_top(space)


@dataclass(frozen=True)
class Odds:
    """Ratio of the evidence for a proposition to the evidence against it.

    ``ratio`` is ``None`` for the distinguished infinite-odds value
    (nothing speaks against the proposition); zero odds is the ordinary
    value 0.
    """

    ratio: Hyperrational | None

    @property
    def is_infinite(self) -> bool:
        return self.ratio is None

    @property
    def is_zero(self) -> bool:
        return self.ratio is not None and not self.ratio

    def __str__(self):
        return "infinite-odds" if self.ratio is None else str(self.ratio)


def odds(prop: Proposition) -> Odds:
    """E(A) / E(not A), with infinite-odds when nothing speaks against A."""
    against = evidence(~prop)
    if not against:
        return Odds(None)
    return Odds(evidence(prop) / against)


@dataclass(frozen=True)
class LogOdds:
    """Log of the odds as a fixed-width decimal, with the exact odds kept
    alongside; the decimal is presentation only."""

    odds: Hyperrational
    approx: str
    base: str
    digits: int


def log_odds(prop: Proposition, digits: int = 6, base: str = "e") -> LogOdds:
    """Logarithm of the odds, rounded half-even to ``digits`` places.

    Natural log by default; bases "2" and "10" are accepted.  Requires
    appreciable odds: zero, infinite-odds, and infinitesimal or infinite
    ratios have no finite logarithm on the ordinary scale.
    """
    if str(base) not in ("e", "2", "10"):
        raise ValueError(f"unsupported log base {base!r}; choose 'e', '2' or '10'")
    o = odds(prop)
    if o.is_infinite:
        raise ValueError("log-odds undefined: nothing speaks against the proposition")
    if o.is_zero:
        raise ValueError("log-odds undefined: the proposition has zero evidence")
    if o.ratio.magnitude() is not MagnitudeClass.APPRECIABLE:
        raise ValueError(f"log-odds undefined for {o.ratio.magnitude()} odds")
    approx = _log_decimal(o.ratio.standard_part(), digits, str(base))
    return LogOdds(o.ratio, approx, str(base), digits)


def _log_decimal(value: Fraction, digits: int, base: str) -> str:
    p, q = value.numerator, value.denominator
    with decimal.localcontext() as ctx:
        ctx.prec = digits + 20 + len(str(len(str(p)) + len(str(q))))
        result = decimal.Decimal(p).ln() - decimal.Decimal(q).ln()
        if base == "2":
            result /= decimal.Decimal(2).ln()
        elif base == "10":
            result /= decimal.Decimal(10).ln()
        rounded = result.quantize(
            decimal.Decimal(1).scaleb(-digits), rounding=decimal.ROUND_HALF_EVEN
        )
    if not rounded:
        rounded = abs(rounded)
    return format(rounded, "f")


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one executable rule check, with both sides rendered."""

    rule: str
    passed: bool
    detail: str
    skipped: bool = False


def check_sum_rule(prop: Proposition) -> CheckReport:
    """E(T) = E(A) + E(not A), and the complementary fractions sum to 1."""
    total = evidence_top(prop.space)
    parts = evidence(prop) + evidence(~prop)
    fractions_sum = probability(prop) + probability(~prop)
    passed = total == parts and fractions_sum == Hyperrational(1)
    detail = (
        f"E(T) = {total}; E(A) + E(not A) = {parts}; "
        f"P(A) + P(not A) = {fractions_sum}"
    )
    return CheckReport("sum rule", passed, detail)


def check_product_rule(prop: Proposition, given: Proposition) -> CheckReport:
    """P(A|B) = P(A and B) / P(B), checked exactly; skipped when E(B) = 0."""
    if not evidence(given):
        return CheckReport(
            "product rule", True, "skipped: E(B) = 0, conditioning undefined",
            skipped=True,
        )
    lhs = conditional_probability(prop, given)
    rhs = probability(prop & given) / probability(given)
    detail = f"P(A|B) = {lhs}; P(AB)/P(B) = {rhs}"
    return CheckReport("product rule", lhs == rhs, detail)


def partition_distribution(
    partition: StateSpacePartition,
) -> list[tuple[str, Hyperrational]]:
    """Exact probability of each block, in declaration order; the values
    sum to exactly 1 because the blocks tile the space."""
    return [(name, probability(prop)) for name, prop in partition.blocks]
