"""Exact rational arithmetic.

All support, confidence and LP quantities are :class:`fractions.Fraction`
values.  ``Fraction`` already keeps itself normalized (positive denominator,
reduced, zero as ``0/1``) and is immutable, so it is used directly as the
rational type.  This module adds the handful of helpers the rest of the
package needs: a strict text syntax, three-way comparison and the common
denominator of a vector.
"""

from __future__ import annotations

import enum
import math
import re
from collections.abc import Iterable
from decimal import Decimal, localcontext
from fractions import Fraction

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


class Ordering(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


def rat_arith(op: str, a: Fraction, b: Fraction) -> Fraction:
    """Apply ``op`` (one of ``add``, ``sub``, ``mul``, ``div``) exactly.

    Raises ``ZeroDivisionError`` for division by zero and ``ValueError``
    for an unknown operator.
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError(f"division of {format_rational(a)} by zero")
        return a / b
    raise ValueError(f"unknown arithmetic operator {op!r}")


def rat_cmp(a: Fraction, b: Fraction) -> Ordering:
    # cross-multiplication; denominators are positive
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    if lhs < rhs:
        return Ordering.LT
    if lhs > rhs:
        return Ordering.GT
    return Ordering.EQ


def lcm_denominators(values: Iterable[Fraction]) -> int:
    """Least common multiple of the denominators of ``values``."""
    values = list(values)
    if not values:
        raise ValueError("lcm_denominators needs at least one value")
    return math.lcm(*(Fraction(v).denominator for v in values))


def bit_size(q: Fraction) -> int:
    """Bits needed to store numerator and denominator of ``q``."""
    return abs(q.numerator).bit_length() + q.denominator.bit_length()


def parse_rational(text: str) -> Fraction:
    """Parse ``integer['/' positive-integer]``; no decimals, no spaces."""
    text = text.strip()
    if not _RATIONAL_RE.fullmatch(text):
        raise ValueError(f"malformed rational {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_decimal(q: Fraction, digits: int = 12) -> str:
    """Decimal approximation for display only; never used in decisions."""
    with localcontext() as ctx:
        ctx.prec = digits
        return str(+(Decimal(q.numerator) / Decimal(q.denominator)))
