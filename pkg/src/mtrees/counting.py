"""Exact spanning-tree counts of M(t) from the self-similar recurrences.

s(t) counts spanning trees of M(t); g(t) counts spanning forests with two
trees that separate the hub pair; q(t) = s(t) / s(t-1)**2.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache

from .quadext import SQRT2, QuadExt

DEFAULT_MATERIALIZE_T = 22


class InconsistencyError(ArithmeticError):
    """A closed form disagreed with the exact arithmetic it should satisfy."""


@lru_cache(maxsize=8)
def _s_sequence(t: int) -> tuple[int, ...]:
    seq = [1, 4]
    for _ in range(2, t + 1):
        prev, prev2 = seq[-1], seq[-2]
        seq.append(4 * prev * prev - 2 * prev * prev2 * prev2)
    return tuple(seq[: t + 1])


def s_recurrence(t: int) -> int:
    if t < 0:
        raise ValueError("t must be nonnegative")
    return _s_sequence(t)[t]


def g_value(t: int) -> int:
    # g(0) = 1 is forced by s(1) = 2 s(0)^2 + 2 s(0) g(0) = 4
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return 1
    seq = _s_sequence(t)
    return seq[t] - seq[t - 1] ** 2


def q_recurrence(t: int) -> Fraction:
    if t < 1:
        raise ValueError("q is defined for t >= 1")
    q = Fraction(4)
    for _ in range(2, t + 1):
        q = 4 - 2 / q
    return q


def q_sequence(t: int) -> list[Fraction]:
    """[q(1), ..., q(t)] by the continued-fraction recurrence."""
    out = [Fraction(4)]
    for _ in range(2, t + 1):
        out.append(4 - 2 / out[-1])
    return out[:t]


RATIO = 3 - 2 * SQRT2


def q_closed_form_ext(t: int) -> QuadExt:
    """The closed form for q(t) evaluated in Q(sqrt 2), without the rationality check."""
    if t < 1:
        raise ValueError("q is defined for t >= 1")
    return (2 - SQRT2) + 2 * SQRT2 / (1 - RATIO**t)


def q_closed_form(t: int) -> Fraction:
    value = q_closed_form_ext(t)
    if not value.is_rational():
        raise InconsistencyError(f"closed form for q({t}) has sqrt(2) component {value.b}")
    return value.a


def s_theorem1(t: int) -> int:
    """s(t) as the product of q(i)**(2**(t-i)) over i = 1..t, with q from the closed form."""
    if t < 1:
        raise ValueError("product formula is stated for t >= 1")
    product = Fraction(1)
    for i in range(1, t + 1):
        product *= q_closed_form(i) ** (2 ** (t - i))
    if product.denominator != 1:
        raise InconsistencyError(f"product formula for s({t}) is not an integer: {product}")
    return product.numerator


@dataclass(frozen=True)
class EntropyEstimate:
    t: int
    h_t: Decimal
    digits: int
    precision: int


def _ln_fraction(q: Fraction) -> Decimal:
    return (Decimal(q.numerator) / Decimal(q.denominator)).ln()


def entropy(t: int, precision: int = 30) -> EntropyEstimate:
    """Partial entropy h_t = ln s(t) / 2**(t+1), from exact q(i).

    ``h_t`` is rounded to ``precision`` significant digits.  The decimal
    digit count of s(t) is read off the same logarithm sum, so s(t) is never
    formed.
    """
    if t < 1:
        raise ValueError("entropy requires t >= 1")
    if precision < 10:
        raise ValueError("precision must be at least 10 digits")
    # log10 s(t) = 2**(t+1) h_t / ln 10; enough guard digits to resolve its integer part
    guard = 10 + math.ceil((t + 1) * math.log10(2)) + len(str(t))
    ctx = decimal.Context(prec=precision + guard)
    with decimal.localcontext(ctx):
        total = Decimal(0)
        weight = Decimal(1) / 4
        for q in q_sequence(t):
            total += weight * _ln_fraction(q)
            weight /= 2
        log10_s = total * (2 ** (t + 1)) / Decimal(10).ln()
        digits = int(log10_s.to_integral_value(rounding=decimal.ROUND_FLOOR)) + 1
    with decimal.localcontext(decimal.Context(prec=precision)):
        h_t = +total
    return EntropyEstimate(t=t, h_t=h_t, digits=digits, precision=precision)


def entropy_limit(precision: int = 30) -> Decimal:
    """The limit h, with the truncation tail ln(4) 2**(-t-1) below 10**-(precision+2)."""
    t = math.ceil((precision + 2) * math.log2(10)) + 2
    return entropy(t, precision).h_t


def digit_count(t: int) -> int:
    """Decimal digits of s(t); exact string length when s(t) is materialized."""
    if t == 0:
        return 1
    if t <= 12:
        return len(str(s_recurrence(t)))
    return entropy(t, precision=20).digits
