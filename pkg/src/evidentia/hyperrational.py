"""Exact arithmetic in the ordered field of rational functions of an
infinite unit.

A :class:`Hyperrational` is a quotient ``p(aleph)/q(aleph)`` of polynomials
with arbitrary-precision integer coefficients, where ``aleph`` stands for a
formal infinite quantity: greater than every natural number, so that
``1/aleph`` is positive yet below every positive rational.  This is the
smallest ordered field containing the rationals together with an infinite
element, and it is closed under +, -, *, /, so every value the evidence
calculus produces stays exactly representable.  No floating point is
involved anywhere.

Representations are canonical:

* numerator and denominator share no polynomial factor,
* the integer content of the pair is 1 (lowest integer terms),
* the denominator's leading coefficient is positive.

Canonical form makes structural identity coincide with equality of values,
so ``==``, ``hash`` and the total order are exact and cheap.  The sign of a
value is the sign of its numerator's leading coefficient, which agrees with
substituting any sufficiently large integer for ``aleph``;
:meth:`Hyperrational.substitute` exists precisely so tests can exploit that
agreement.

Values render with the ASCII token ``aleph``.  Whenever the denominator is
a single power of ``aleph`` (plain rationals included) the value is a
Laurent polynomial and prints as a sum of power terms in descending degree:
``aleph/2``, ``1/2 + 3/aleph``, ``3/4 + 5/(4*aleph)``.  Anything else
prints as an explicit quotient of integer polynomials, such as
``(3*aleph + 5)/(4*aleph + 1)``.  :meth:`Hyperrational.parse` reads the
same syntax back, bit-exactly.

Instances are immutable and safe to share between threads.
"""

from __future__ import annotations

import decimal
from enum import Enum
from fractions import Fraction
from math import gcd


class MagnitudeClass(Enum):
    """Order-of-magnitude class of a hyperrational value."""

    INFINITE = "infinite"
    APPRECIABLE = "appreciable"
    INFINITESIMAL = "infinitesimal"
    ZERO = "zero"

    def __str__(self) -> str:
        return self.value


# Polynomials are tuples of int coefficients, lowest degree first, with no
# trailing zero coefficient; () is the zero polynomial.


def _trim(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _neg(p):
    return tuple(-c for c in p)


def _add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def _mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, cp in enumerate(p):
        if cp:
            for j, cq in enumerate(q):
                out[i + j] += cp * cq
    return _trim(out)


def _content(p):
    g = 0
    for c in p:
        g = gcd(g, c)
    return g


def _primitive(p):
    # Divide out the content, keeping signs; () stays ().
    g = 0
    for c in p:
        g = gcd(g, c)
    if g <= 1:
        return tuple(p)
    return tuple(c // g for c in p)


def _pseudo_rem(a, b):
    # Integer-only remainder step: r := lb*r - lead(r)*x^k*b repeatedly,
    # which cancels the leading term without leaving the integer ring.
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        lr = r[-1]
        if lb != 1:
            r = [c * lb for c in r]
        for i, cb in enumerate(b):
            r[k + i] -= lr * cb
        while r and r[-1] == 0:
            del r[-1]
    return r


def _poly_gcd(p, q):
    """Primitive gcd of two nonzero integer polynomials, positive leading
    coefficient.  Primitive pseudo-remainder Euclid: integers throughout,
    content stripped each round to keep coefficients small."""
    a = _primitive(p)
    b = _primitive(q)
    while b:
        a, b = b, _primitive(_pseudo_rem(a, b))
    if a[-1] < 0:
        a = tuple(-c for c in a)
    return a


def _div_exact(p, g):
    # Exact quotient p/g; g comes from _poly_gcd, so each step divides.
    rem = list(p)
    dg = len(g) - 1
    lg = g[-1]
    quot = [0] * (len(p) - dg)
    while rem and len(rem) - 1 >= dg:
        k = len(rem) - 1 - dg
        f, leftover = divmod(rem[-1], lg)
        assert leftover == 0, "polynomial division was not exact"
        quot[k] = f
        for i, cg in enumerate(g):
            rem[k + i] -= f * cg
        while rem and rem[-1] == 0:
            del rem[-1]
    assert not rem, "polynomial division was not exact"
    return _trim(quot)


def _canonical(num, den):
    num = _trim(num)
    den = _trim(den)
    if not den:
        raise ZeroDivisionError("division by zero")
    if not num:
        return (), (1,)
    if len(num) > 1 and len(den) > 1:
        g = _poly_gcd(num, den)
        if len(g) > 1:
            num = _div_exact(num, g)
            den = _div_exact(den, g)
    c = gcd(_content(num), _content(den))
    if c > 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    if den[-1] < 0:
        num = _neg(num)
        den = _neg(den)
    return num, den


def _eval_poly(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


class Hyperrational:
    """A ratio of integer polynomials in ``aleph``, kept canonical.

    ``Hyperrational(p, q)`` builds the plain rational ``p/q``; the module
    constant :data:`ALEPH` is the infinite unit, and other values are
    reached through ordinary arithmetic (``3 * ALEPH / 4 + 1``) or through
    :meth:`parse`.  Mixed arithmetic with ``int`` and ``Fraction`` works;
    ``float`` is rejected because it is not exact.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, numerator: int | Fraction = 0, denominator: int | Fraction = 1):
        if isinstance(numerator, float) or isinstance(denominator, float):
            raise TypeError("floats are not exact; use integers or Fraction")
        if denominator == 0:
            raise ZeroDivisionError("zero denominator")
        value = Fraction(numerator, 1) / Fraction(denominator, 1)
        self._num = (value.numerator,) if value.numerator else ()
        self._den = (value.denominator,)

    @classmethod
    def _raw(cls, num, den) -> "Hyperrational":
        self = object.__new__(cls)
        self._num, self._den = _canonical(num, den)
        return self

    # -- structure ---------------------------------------------------------

    @property
    def numerator_coefficients(self) -> tuple[int, ...]:
        """Canonical numerator coefficients, lowest degree first.

        Exposed for verification tooling (e.g. computing substitution
        bounds); not needed for ordinary use.
        """
        return self._num

    @property
    def denominator_coefficients(self) -> tuple[int, ...]:
        """Canonical denominator coefficients, lowest degree first."""
        return self._den

    def magnitude(self) -> MagnitudeClass:
        if not self._num:
            return MagnitudeClass.ZERO
        dn = len(self._num) - 1
        dd = len(self._den) - 1
        if dn > dd:
            return MagnitudeClass.INFINITE
        if dn == dd:
            return MagnitudeClass.APPRECIABLE
        return MagnitudeClass.INFINITESIMAL

    def standard_part(self) -> Fraction:
        """The unique rational at infinitesimal distance from this value.

        Defined for everything except infinite values: the ratio of leading
        coefficients when numerator and denominator have equal degree, and
        0 for infinitesimals and zero.
        """
        dn = len(self._num) - 1
        dd = len(self._den) - 1
        if dn > dd:
            raise ValueError("no standard part: value is infinite")
        if not self._num or dn < dd:
            return Fraction(0)
        return Fraction(self._num[-1], self._den[-1])

    @property
    def is_rational(self) -> bool:
        return len(self._num) <= 1 and len(self._den) == 1

    def as_fraction(self) -> Fraction:
        """Exact conversion for values free of ``aleph``; raises otherwise."""
        if not self.is_rational:
            raise ValueError(f"not a plain rational: {self}")
        return Fraction(self._num[0] if self._num else 0, self._den[0])

    def substitute(self, value: int | Fraction) -> Fraction:
        """Evaluate at ``aleph = value`` with exact rational arithmetic.

        For any value beyond the roots of the polynomials involved this
        reproduces the field operations and the ordering, which is what the
        differential tests rely on.
        """
        if isinstance(value, float):
            raise TypeError("floats are not exact; use integers or Fraction")
        x = Fraction(value)
        return _eval_poly(self._num, x) / _eval_poly(self._den, x)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(value):
        if isinstance(value, Hyperrational):
            return value
        if isinstance(value, int):
            return Hyperrational(value)
        if isinstance(value, Fraction):
            return Hyperrational(value)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Hyperrational._raw(
            _add(_mul(self._num, o._den), _mul(o._num, self._den)),
            _mul(self._den, o._den),
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Hyperrational._raw(
            _add(_mul(self._num, o._den), _neg(_mul(o._num, self._den))),
            _mul(self._den, o._den),
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Hyperrational._raw(_mul(self._num, o._num), _mul(self._den, o._den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._num:
            raise ZeroDivisionError("division by zero")
        return Hyperrational._raw(_mul(self._num, o._den), _mul(self._den, o._num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Hyperrational._raw(_neg(self._num), self._den)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self._sign() < 0 else self

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            if not self._num:
                raise ZeroDivisionError("zero to a negative power")
            base = Hyperrational._raw(self._den, self._num)
            exponent = -exponent
        else:
            base = self
        result = Hyperrational(1)
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __bool__(self):
        return bool(self._num)

    # -- order -------------------------------------------------------------

    def _sign(self) -> int:
        if not self._num:
            return 0
        return 1 if self._num[-1] > 0 else -1

    def _diff_sign(self, other) -> int:
        return (self - other)._sign()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._num == o._num and self._den == o._den

    def __hash__(self):
        return hash((self._num, self._den))

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._diff_sign(o) < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._diff_sign(o) <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._diff_sign(o) > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._diff_sign(o) >= 0

    # -- text --------------------------------------------------------------

    def __str__(self):
        num, den = self._num, self._den
        if not num:
            return "0"
        if sum(1 for c in den if c) == 1:
            # Denominator is a single aleph power: print the Laurent sum.
            k = len(den) - 1
            scale = den[-1]
            parts = []
            for i in range(len(num) - 1, -1, -1):
                if num[i] == 0:
                    continue
                coeff = Fraction(num[i], scale)
                parts.append((coeff < 0, _laurent_term(i - k, coeff)))
            chunks = []
            for idx, (negative, body) in enumerate(parts):
                if idx == 0:
                    chunks.append(("-" if negative else "") + body)
                else:
                    chunks.append((" - " if negative else " + ") + body)
            return "".join(chunks)
        num_text = _poly_text(num)
        if sum(1 for c in num if c) > 1:
            num_text = f"({num_text})"
        return f"{num_text}/({_poly_text(den)})"

    def __repr__(self):
        return f"Hyperrational.parse({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Hyperrational":
        """Read the rendering syntax back: sums, products and quotients of
        integers and ``aleph`` powers, e.g. ``"1/2 + 3/aleph"``."""
        return _Reader(text).parse()


def _laurent_term(degree: int, coeff: Fraction) -> str:
    p = abs(coeff.numerator)
    q = coeff.denominator
    if degree == 0:
        return f"{p}/{q}" if q != 1 else str(p)
    base = "aleph" if abs(degree) == 1 else f"aleph^{abs(degree)}"
    if degree > 0:
        if q == 1:
            return base if p == 1 else f"{p}*{base}"
        return f"{base}/{q}" if p == 1 else f"{p}*{base}/{q}"
    if q == 1:
        return f"{p}/{base}"
    return f"{p}/({q}*{base})"


def _poly_text(p) -> str:
    terms = []
    for d in range(len(p) - 1, -1, -1):
        c = p[d]
        if c == 0:
            continue
        mag = abs(c)
        if d == 0:
            body = str(mag)
        else:
            base = "aleph" if d == 1 else f"aleph^{d}"
            body = base if mag == 1 else f"{mag}*{base}"
        terms.append((c < 0, body))
    chunks = []
    for idx, (negative, body) in enumerate(terms):
        if idx == 0:
            chunks.append(("-" if negative else "") + body)
        else:
            chunks.append((" - " if negative else " + ") + body)
    return "".join(chunks)


class _Reader:
    """Tiny expression parser for the rendering syntax.

    Grammar: expr := term (('+'|'-') term)*; term := factor (('*'|'/')
    factor)*; factor := '-' factor | '(' expr ')' | INT | 'aleph' ('^' INT)?
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def parse(self) -> Hyperrational:
        value = self._expr()
        self._skip_ws()
        if self.pos != len(self.text):
            self._fail("trailing input")
        return value

    def _fail(self, message: str):
        raise ValueError(f"bad hyperrational literal at offset {self.pos}: {message}")

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expr(self) -> Hyperrational:
        value = self._term()
        while True:
            self._skip_ws()
            op = self._peek()
            if op not in ("+", "-"):
                return value
            self.pos += 1
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs

    def _term(self) -> Hyperrational:
        value = self._factor()
        while True:
            self._skip_ws()
            op = self._peek()
            if op not in ("*", "/"):
                return value
            self.pos += 1
            rhs = self._factor()
            value = value * rhs if op == "*" else value / rhs

    def _factor(self) -> Hyperrational:
        self._skip_ws()
        ch = self._peek()
        if ch == "-":
            self.pos += 1
            return -self._factor()
        if ch == "(":
            self.pos += 1
            value = self._expr()
            self._skip_ws()
            if self._peek() != ")":
                self._fail("expected ')'")
            self.pos += 1
            return value
        if ch.isdigit():
            start = self.pos
            while self._peek().isdigit():
                self.pos += 1
            return Hyperrational(int(self.text[start : self.pos]))
        if ch.isalpha():
            start = self.pos
            while self._peek().isalpha():
                self.pos += 1
            word = self.text[start : self.pos]
            if word != "aleph":
                self._fail(f"unknown symbol {word!r}")
            if self._peek() == "^":
                self.pos += 1
                if not self._peek().isdigit():
                    self._fail("expected an integer exponent")
                dstart = self.pos
                while self._peek().isdigit():
                    self.pos += 1
                return ALEPH ** int(self.text[dstart : self.pos])
            return ALEPH
        self._fail("expected a number, 'aleph', '-' or '('")
        raise AssertionError  # unreachable


#: The infinite unit: the conventional cardinality of a scaled space.
ALEPH = Hyperrational._raw((0, 1), (1,))


def decimal_approximation(value: Hyperrational, digits: int = 6) -> str:
    """Decimal string for the standard part, rounded half-even to `digits`
    fractional places.

    Presentation only: the core never computes in floating point, and the
    returned string is an approximation of the exact value's standard part.
    """
    if digits < 0:
        raise ValueError("digits must be nonnegative")
    frac = value.standard_part()
    with decimal.localcontext() as ctx:
        ctx.prec = digits + len(str(abs(frac.numerator))) + 5
        quotient = decimal.Decimal(frac.numerator) / decimal.Decimal(frac.denominator)
        rounded = quotient.quantize(
            decimal.Decimal(1).scaleb(-digits), rounding=decimal.ROUND_HALF_EVEN
        )
    if not rounded:
        rounded = abs(rounded)  # never print "-0.000000"
    return format(rounded, "f")
