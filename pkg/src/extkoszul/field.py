"""Exact scalar fields: the rationals and prime fields F_p."""
from __future__ import annotations

from fractions import Fraction
from typing import Union

Number = Union[int, Fraction]

DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """A field of exact scalars.

    Scalars are plain Python numbers: ``Fraction`` for the rationals and
    ``int`` in ``range(p)`` for F_p.  The field object supplies coercion and
    inversion; ring operations are the native ``+``, ``-``, ``*`` followed by
    :meth:`reduce`.
    """

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or a prime, got {characteristic}")
        self.characteristic = characteristic

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.is_rational else f"GF({self.characteristic})"

    def spec(self) -> str:
        """Command-line spelling: ``q`` or ``fp:<p>``."""
        return "q" if self.is_rational else f"fp:{self.characteristic}"

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip().lower()
        if text in ("q", "qq", "rational", "rationals"):
            return QQ
        if text.startswith("fp:"):
            return cls(int(text[3:]))
        if text == "fp":
            return cls(DEFAULT_PRIME)
        raise ValueError(f"unknown field {text!r}; use 'q' or 'fp:<p>'")

    # -- scalars -----------------------------------------------------------
    def coerce(self, x) -> Number:
        p = self.characteristic
        if p == 0:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, int):
                return Fraction(x)
            if isinstance(x, str):
                return Fraction(x)
            raise TypeError(f"cannot coerce {type(x).__name__} to an exact rational")
        if isinstance(x, int):
            return x % p
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(den, -1, p) % p
        raise TypeError(f"cannot coerce {type(x).__name__} into GF({p})")

    def reduce(self, x: Number) -> Number:
        p = self.characteristic
        return x % p if p else x

    def inv(self, x: Number) -> Number:
        if not x:
            raise ZeroDivisionError("division by the zero scalar")
        p = self.characteristic
        if p:
            return pow(x, -1, p)
        return 1 / Fraction(x)

    def neg(self, x: Number) -> Number:
        p = self.characteristic
        return (-x) % p if p else -x

    def to_json(self, x: Number):
        """Integers stay integers, other rationals become ``"a/b"`` strings."""
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else str(x)
        return int(x)


QQ = Field(0)


def GF(p: int = DEFAULT_PRIME) -> Field:
    return Field(p)
