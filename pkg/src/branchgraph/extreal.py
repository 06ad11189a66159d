"""Nonnegative extended reals: exact rationals plus a single ``INF``.

Finite values are plain :class:`fractions.Fraction` instances, so ordinary
rational arithmetic keeps working. ``INF`` participates through the reflected
operators, which ``Fraction`` defers to for unknown operand types::

    >>> from fractions import Fraction
    >>> Fraction(1, 2) + INF
    INF
    >>> Fraction(0) * INF
    Fraction(0, 1)
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import DomainError, UndefinedFormError

__all__ = ["INF", "ExtReal", "as_ext", "is_inf", "ext_sum", "format_ext", "parse_ext"]


class _Infinity:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __hash__(self):
        return hash("branchgraph.INF")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        _check_operand(other)
        return False

    def __le__(self, other):
        _check_operand(other)
        return other is self

    def __gt__(self, other):
        _check_operand(other)
        return other is not self

    def __ge__(self, other):
        _check_operand(other)
        return True

    def __add__(self, other):
        _check_operand(other)
        if other is not self and other < 0:
            raise UndefinedFormError("inf plus a negative number is outside the extended nonnegative reals")
        return self

    __radd__ = __add__

    def __sub__(self, other):
        raise UndefinedFormError("subtraction involving inf is undefined")

    def __rsub__(self, other):
        raise UndefinedFormError("subtraction involving inf is undefined")

    def __mul__(self, other):
        _check_operand(other)
        if other is self:
            return self
        if other < 0:
            raise UndefinedFormError("negative multiple of inf")
        if other == 0:
            return Fraction(0)
        return self

    __rmul__ = __mul__

    def __neg__(self):
        raise UndefinedFormError("-inf is not an extended nonnegative real")

    def __bool__(self):
        return True


def _check_operand(other):
    if other is INF or isinstance(other, Rational):
        return
    raise TypeError(f"unsupported operand for INF: {type(other).__name__}")


INF = _Infinity()

ExtReal = Union[Fraction, _Infinity]


def is_inf(x) -> bool:
    return x is INF


def as_ext(x) -> ExtReal:
    """Coerce ints, Fractions, ``"p/q"`` strings and ``"inf"`` to an ExtReal."""
    if x is INF:
        return INF
    if isinstance(x, str):
        return parse_ext(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an exact rational")
    value = Fraction(x)
    if value < 0:
        raise DomainError(f"negative value {value} is not an extended nonnegative real")
    return value


def ext_sum(values) -> ExtReal:
    total = Fraction(0)
    for v in values:
        if v is INF:
            return INF
        total += v
    return total


def format_ext(x) -> str:
    return "inf" if x is INF else str(Fraction(x))


def parse_ext(text: str) -> ExtReal:
    text = text.strip()
    if text.lower() in {"inf", "+inf", "infinity"}:
        return INF
    value = Fraction(text)
    if value < 0:
        raise DomainError(f"negative value {text!r}")
    return value
