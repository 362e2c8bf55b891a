"""Exact rationals extended with positive infinity.

All cost values in this package are elements of Q ∪ {+inf}. Addition
absorbs at infinity (c + inf = inf + c = inf) and comparisons treat
infinity as strictly greater than every rational. No floating point is
used anywhere on a value path.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction, "ExtRational"]


class ExtRational:
    """A rational p/q in lowest terms, or the symbol +inf."""

    __slots__ = ("_frac",)

    def __init__(self, value: Union[int, Fraction, None] = 0, den: int = 1):
        # value=None encodes +inf (use the module constant INF instead of
        # constructing it directly).
        if value is None:
            self._frac = None
        else:
            self._frac = Fraction(value, den) if den != 1 else Fraction(value)

    @property
    def is_infinite(self) -> bool:
        return self._frac is None

    @property
    def frac(self) -> Fraction:
        if self._frac is None:
            raise ValueError("cannot take the finite part of inf")
        return self._frac

    @staticmethod
    def _coerce(other: RationalLike) -> "ExtRational":
        if isinstance(other, ExtRational):
            return other
        if isinstance(other, (int, Fraction)):
            return ExtRational(other)
        return NotImplemented

    def __add__(self, other: RationalLike) -> "ExtRational":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._frac is None or other._frac is None:
            return INF
        return ExtRational(self._frac + other._frac)

    __radd__ = __add__

    def __mul__(self, other: RationalLike) -> "ExtRational":
        # Only finite * finite and inf * positive are needed by this package.
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._frac is None or other._frac is None:
            if (self._frac is not None and self._frac == 0) or (
                other._frac is not None and other._frac == 0
            ):
                raise ValueError("0 * inf is undefined")
            return INF
        return ExtRational(self._frac * other._frac)

    __rmul__ = __mul__

    def __neg__(self) -> "ExtRational":
        if self._frac is None:
            raise ValueError("cannot negate inf")
        return ExtRational(-self._frac)

    def _cmp_key(self):
        return (1,) if self._frac is None else (0, self._frac)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp_key() == other._cmp_key()

    def __lt__(self, other) -> bool:
        other = self._coerce(other)
        return self._cmp_key() < other._cmp_key()

    def __le__(self, other) -> bool:
        other = self._coerce(other)
        return self._cmp_key() <= other._cmp_key()

    def __gt__(self, other) -> bool:
        other = self._coerce(other)
        return self._cmp_key() > other._cmp_key()

    def __ge__(self, other) -> bool:
        other = self._coerce(other)
        return self._cmp_key() >= other._cmp_key()

    def __hash__(self):
        return hash(self._cmp_key())

    def __repr__(self):
        return f"ExtRational({self})"

    def __str__(self):
        if self._frac is None:
            return "inf"
        return str(self._frac)

    def __bool__(self):
        return self._frac is None or self._frac != 0


INF = ExtRational(None)
ZERO = ExtRational(0)


def parse_value(text: str) -> ExtRational:
    """Parse a cost token: an integer, `p/q`, or `inf`."""
    text = text.strip()
    if text in ("inf", "+inf", "infinity"):
        return INF
    try:
        return ExtRational(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational value: {text!r}") from exc


def format_value(value: ExtRational) -> str:
    return str(value)
