"""Tests for the hyperrational field: canonical forms, ordering,
magnitudes, rendering, and agreement with plain-rational substitution."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from evidentia import ALEPH, Hyperrational, MagnitudeClass, decimal_approximation

INF = MagnitudeClass.INFINITE
APP = MagnitudeClass.APPRECIABLE
EPS = MagnitudeClass.INFINITESIMAL
ZERO = MagnitudeClass.ZERO


# -- construction -------------------------------------------------------------


def test_from_rational_reduces():
    assert Hyperrational(1, 2) == Hyperrational(2, 4)
    assert str(Hyperrational(1, 2)) == "1/2"
    # gcd(4, 52) = 4, so 4/52 reduces to 1/13; Fraction is the oracle
    assert Hyperrational(4, 52).as_fraction() == Fraction(4, 52) == Fraction(1, 13)


def test_zero_numerator():
    assert Hyperrational(0, 7) == Hyperrational(0)
    assert Hyperrational(0, 7).magnitude() is ZERO


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        Hyperrational(1, 0)


def test_floats_rejected():
    with pytest.raises(TypeError):
        Hyperrational(0.5)
    with pytest.raises(TypeError):
        ALEPH.substitute(1e6)


def test_negative_denominator_normalises():
    assert Hyperrational(1, -2) == Hyperrational(-1, 2)
    assert str(Hyperrational(1, -2)) == "-1/2"


# -- the infinite unit ---------------------------------------------------------


def test_aleph_times_its_inverse_is_one():
    assert ALEPH * (1 / ALEPH) == Hyperrational(1)


def test_aleph_exceeds_every_tested_natural():
    for n in (1, 2, 10, 10**6, 10**100):
        assert ALEPH > n


def test_aleph_is_infinite():
    assert ALEPH.magnitude() is INF


def test_divisibility_by_any_natural():
    for n in range(1, 101):
        assert (ALEPH / n) * n == ALEPH
    assert ALEPH * (1 / ALEPH) == 1


# -- arithmetic ----------------------------------------------------------------


def test_halves_of_aleph_sum_to_aleph():
    assert ALEPH / 2 + ALEPH / 2 == ALEPH


def test_infinitesimal_times_aleph():
    assert (1 / ALEPH) * ALEPH == 1


def test_division_matches_substitution():
    value = (3 * ALEPH + 5) / (4 * ALEPH)
    for n in (10**6, 10**9):
        assert value.substitute(n) == Fraction(3 * n + 5, 4 * n)


def test_mixed_arithmetic_with_int_and_fraction():
    assert 1 - Hyperrational(1, 3) == Hyperrational(2, 3)
    assert Fraction(1, 2) + Hyperrational(1, 2) == 1
    assert Fraction(3, 4) * (1 / ALEPH) == 3 / (4 * ALEPH)


def test_pow():
    assert ALEPH**0 == 1
    assert ALEPH**2 == ALEPH * ALEPH
    assert ALEPH**-1 == 1 / ALEPH
    with pytest.raises(ZeroDivisionError):
        Hyperrational(0) ** -1


# -- ordering ------------------------------------------------------------------


def test_infinitesimal_is_positive():
    assert (1 / ALEPH) > 0


def test_infinitesimal_below_every_positive_rational():
    for k in (1, 5, 50, 100):
        assert (1 / ALEPH) < Fraction(1, 10**k)


def test_order_near_one():
    value = (ALEPH + 1) / ALEPH
    assert value > 1
    # cross-check by substituting a large finite value
    assert value.substitute(10**6) > 1


def test_total_order_is_antisymmetric():
    a = ALEPH / 2
    b = 3 * ALEPH / 4
    assert a < b and not b < a and a != b


# -- magnitude and standard part -------------------------------------------------


@pytest.mark.parametrize(
    "value, expected",
    [
        (ALEPH / 2, INF),
        (3 / ALEPH, EPS),
        ((3 * ALEPH + 5) / (4 * ALEPH), APP),
        (Hyperrational(0), ZERO),
        (Hyperrational(-7), APP),
        (ALEPH**2 / (ALEPH + 1), INF),
        ((ALEPH + 1) / ALEPH**2, EPS),
    ],
)
def test_magnitude_classes(value, expected):
    assert value.magnitude() is expected


def test_standard_part_leading_coefficients():
    assert ((3 * ALEPH + 5) / (4 * ALEPH)).standard_part() == Fraction(3, 4)


def test_standard_part_convergence_oracle():
    # substituting 10^k approaches the claimed standard part as k grows
    value = (3 * ALEPH + 5) / (4 * ALEPH)
    target = Fraction(3, 4)
    gaps = [abs(value.substitute(10**k) - target) for k in (3, 6, 9, 12)]
    assert all(earlier > later for earlier, later in zip(gaps, gaps[1:]))
    assert gaps[-1] < Fraction(1, 10**11)


def test_standard_part_drops_infinitesimals():
    assert (Hyperrational(1, 2) + 3 / ALEPH).standard_part() == Fraction(1, 2)
    assert Hyperrational(0).standard_part() == 0
    assert (5 / ALEPH).standard_part() == 0


def test_standard_part_of_infinite_is_an_error():
    with pytest.raises(ValueError):
        ALEPH.standard_part()


def test_as_fraction_requires_rational():
    assert Hyperrational(9, 12).as_fraction() == Fraction(3, 4)
    with pytest.raises(ValueError):
        (1 / ALEPH).as_fraction()
    assert not (1 / ALEPH).is_rational
    assert Hyperrational(5).is_rational


# -- rendering and parsing --------------------------------------------------------


@pytest.mark.parametrize(
    "value, text",
    [
        (ALEPH / 2, "aleph/2"),
        (ALEPH, "aleph"),
        (1 / ALEPH, "1/aleph"),
        (Hyperrational(1, 2) + 3 / ALEPH, "1/2 + 3/aleph"),
        ((3 * ALEPH + 5) / (4 * ALEPH), "3/4 + 5/(4*aleph)"),
        ((3 * ALEPH + 5) / (4 * ALEPH + 1), "(3*aleph + 5)/(4*aleph + 1)"),
        (1 / (ALEPH + 1), "1/(aleph + 1)"),
        (Hyperrational(0), "0"),
        (-ALEPH / 2, "-aleph/2"),
        (ALEPH**2 - 3 * ALEPH + 1, "aleph^2 - 3*aleph + 1"),
        (1 / ALEPH**2, "1/aleph^2"),
        (2 * ALEPH / 3, "2*aleph/3"),
        (Hyperrational(-1, 2) - 3 / ALEPH, "-1/2 - 3/aleph"),
        (ALEPH / (ALEPH + 1), "aleph/(aleph + 1)"),
    ],
)
def test_render_and_reparse(value, text):
    assert str(value) == text
    assert Hyperrational.parse(text) == value


def test_parse_rejects_garbage():
    for bad in ("", "aleph +", "omega", "1..2", "(1", "1/", "@"):
        with pytest.raises(ValueError):
            Hyperrational.parse(bad)


def test_repr_round_trips():
    value = (3 * ALEPH + 5) / (4 * ALEPH + 1)
    assert eval(repr(value), {"Hyperrational": Hyperrational}) == value


# -- decimal approximation ---------------------------------------------------------


def test_decimal_approximation_half_even():
    assert decimal_approximation(Hyperrational(1, 13), 6) == "0.076923"
    assert decimal_approximation(Hyperrational(9, 13), 6) == "0.692308"
    assert decimal_approximation(Hyperrational(1, 2), 6) == "0.500000"
    assert decimal_approximation(Hyperrational(0), 6) == "0.000000"
    assert decimal_approximation(Hyperrational(1, 8), 2) == "0.12"  # half-even
    assert decimal_approximation(Hyperrational(3, 8), 2) == "0.38"


def test_decimal_approximation_of_infinitesimal_is_zero():
    assert decimal_approximation(1 / ALEPH, 6) == "0.000000"
    assert decimal_approximation(-1 / ALEPH, 6) == "0.000000"


# -- property tests ------------------------------------------------------------------


def hyperrationals(max_degree=2, max_coeff=9):
    coeff = st.integers(min_value=-max_coeff, max_value=max_coeff)
    polys = st.lists(coeff, min_size=1, max_size=max_degree + 1)

    def build(pair):
        num_coeffs, den_coeffs = pair
        if not any(den_coeffs):
            den_coeffs = den_coeffs[:-1] + [1]
        num = sum(
            (Hyperrational(c) * ALEPH**i for i, c in enumerate(num_coeffs)),
            Hyperrational(0),
        )
        den = sum(
            (Hyperrational(c) * ALEPH**i for i, c in enumerate(den_coeffs)),
            Hyperrational(0),
        )
        return num / den

    return st.tuples(polys, polys).map(build)


def substitution_point(*values: Hyperrational) -> int:
    """Beyond every polynomial root involved: one plus the largest
    coefficient-magnitude sum (Cauchy bound with integer leading terms)."""
    worst = 1
    for v in values:
        for poly in (v.numerator_coefficients, v.denominator_coefficients):
            worst = max(worst, sum(abs(c) for c in poly))
    return worst + 1


@given(hyperrationals(), hyperrationals(), hyperrationals())
def test_field_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + Hyperrational(0) == a
    assert a * Hyperrational(1) == a
    assert a - a == Hyperrational(0)
    if b:
        assert b * (a / b) == a
        assert b * (1 / b) == Hyperrational(1)


@given(hyperrationals(), hyperrationals(), hyperrationals())
def test_order_laws(a, b, c):
    assert (a < b) + (a == b) + (a > b) == 1
    if a < b:
        assert a + c < b + c
        if c > Hyperrational(0):
            assert a * c < b * c
    if a < b and b < c:
        assert a < c


@given(hyperrationals(), hyperrationals())
def test_substitution_commutes_with_arithmetic(a, b):
    results = [a + b, a - b, a * b] + ([a / b] if b else [])
    n = substitution_point(a, b, *results)
    sa, sb = a.substitute(n), b.substitute(n)
    assert (a + b).substitute(n) == sa + sb
    assert (a - b).substitute(n) == sa - sb
    assert (a * b).substitute(n) == sa * sb
    if b:
        assert (a / b).substitute(n) == sa / sb


@given(hyperrationals(), hyperrationals())
def test_substitution_preserves_comparisons(a, b):
    n = substitution_point(a, b, a - b)
    sa, sb = a.substitute(n), b.substitute(n)
    assert (a < b) == (sa < sb)
    assert (a == b) == (sa == sb)


@given(hyperrationals(), hyperrationals(max_degree=1, max_coeff=5))
def test_standard_part_ignores_infinitesimal_shift(a, raw):
    if a.magnitude() is MagnitudeClass.INFINITE:
        a = 1 / a if a else a
    epsilon = raw / ALEPH**3  # degree gap forces an infinitesimal
    assert epsilon.magnitude() in (MagnitudeClass.INFINITESIMAL, MagnitudeClass.ZERO)
    assert (a + epsilon).standard_part() == a.standard_part()


@given(hyperrationals())
def test_text_round_trip(a):
    assert Hyperrational.parse(str(a)) == a


@given(hyperrationals(), hyperrationals())
def test_hash_consistent_with_equality(a, b):
    if a == b:
        assert hash(a) == hash(b)
    assert len({a, a + Hyperrational(0)}) == 1
