"""Exact rational scalars.

The ground field is fixed to the rationals and backed by :class:`fractions.Fraction`,
which is always stored reduced with a positive denominator.
"""

from fractions import Fraction
from numbers import Rational

from .errors import DivisionByZero, InputError

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def to_scalar(x):
    """Coerce an int, Fraction or ``"p/q"`` string to a Scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ZeroDivisionError:
            raise DivisionByZero(f"zero denominator in {x!r}") from None
        except ValueError:
            raise InputError(f"not a rational number: {x!r}") from None
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted as scalars")
    raise TypeError(f"cannot convert {type(x).__name__} to Scalar")


def arith(a, b, op):
    """Apply ``op`` (one of ``+ - * / ^``) to two scalars exactly.

    For ``^`` the exponent ``b`` must be an integer.
    """
    a = to_scalar(a)
    if op == "^":
        if isinstance(b, Fraction):
            if b.denominator != 1:
                raise InputError("only integer exponents are supported")
            b = b.numerator
        if not isinstance(b, int):
            raise InputError("only integer exponents are supported")
        if a == 0 and b < 0:
            raise DivisionByZero("zero raised to a negative power")
        return a ** b
    b = to_scalar(b)
    if op == "+":
        return a + b
    if op in ("-", "−"):
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        if b == 0:
            raise DivisionByZero(f"division of {a} by zero")
        return a / b
    raise ValueError(f"unknown operator {op!r}")


def normalize(x):
    return to_scalar(x)


def format_scalar(x):
    x = to_scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
