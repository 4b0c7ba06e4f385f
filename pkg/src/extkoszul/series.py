"""Hilbert series and truncated power series with exact coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence, Tuple


def _trim(coeffs: Sequence[int]) -> Tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(a: Sequence, b: Sequence) -> List:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def format_poly(coeffs: Sequence, var: str = "t") -> str:
    """``1 + 7t + 15t^2``-style rendering."""
    parts: List[str] = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}{mono}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts) if parts else "0"


@dataclass(frozen=True)
class HilbertSeries:
    """Integer polynomial ``sum_k coefficients[k] t^k``; trailing zeros are dropped."""

    coefficients: Tuple[int, ...]

    def __init__(self, coefficients: Sequence[int]):
        object.__setattr__(self, "coefficients", _trim(int(c) for c in coefficients))

    @classmethod
    def parse(cls, text: str) -> "HilbertSeries":
        """Accept a comma-separated coefficient list such as ``1,4,5``."""
        return cls([int(x) for x in text.replace(" ", "").split(",") if x])

    @classmethod
    def binomial_power(cls, k: int) -> "HilbertSeries":
        return cls([comb(k, i) for i in range(k + 1)])

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def __len__(self):
        return len(self.coefficients)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def total(self) -> int:
        return sum(self.coefficients)

    def __mul__(self, other: "HilbertSeries") -> "HilbertSeries":
        return HilbertSeries(poly_mul(self.coefficients, other.coefficients))

    def times_one_plus_t(self, power: int = 1) -> "HilbertSeries":
        return self * HilbertSeries.binomial_power(power)

    def divide_one_plus_t(self) -> Optional["HilbertSeries"]:
        """Exact quotient by ``1+t``, or ``None`` when it does not divide."""
        c = list(self.coefficients)
        if not c:
            return HilbertSeries([])
        q = []
        rem = 0
        for x in c:
            rem = x - rem
            q.append(rem)
        if q[-1] != 0:
            return None
        return HilbertSeries(q[:-1])

    def one_plus_t_multiplicity(self) -> int:
        """Largest ``k`` with ``(1+t)^k`` dividing this polynomial."""
        k = 0
        cur = self
        while cur.coefficients:
            nxt = cur.divide_one_plus_t()
            if nxt is None:
                break
            cur, k = nxt, k + 1
        return k

    def evaluate(self, t):
        return sum(c * t**k for k, c in enumerate(self.coefficients))

    def __str__(self):
        return format_poly(self.coefficients)

    def to_json(self) -> List[int]:
        return list(self.coefficients)


@dataclass(frozen=True)
class PowerSeries:
    """Exact rational coefficients of a series truncated after degree ``bound``."""

    coefficients: Tuple[Fraction, ...]
    bound: int
    first_negative_index: Optional[int] = None

    def __getitem__(self, k: int) -> Fraction:
        if k > self.bound:
            raise IndexError(f"series only known through degree {self.bound}")
        return self.coefficients[k]

    def as_ints(self) -> List:
        return [int(c) if c.denominator == 1 else c for c in self.coefficients]

    def __str__(self):
        return format_poly(self.as_ints()) + f" + O(t^{self.bound + 1})"


def series_inverse(coeffs: Sequence, bound: int) -> List[Fraction]:
    """Coefficients of ``1 / sum coeffs[k] t^k`` through degree ``bound``."""
    if not coeffs or coeffs[0] == 0:
        raise ValueError("constant term must be nonzero")
    c0 = Fraction(coeffs[0])
    out: List[Fraction] = []
    for k in range(bound + 1):
        s = Fraction(1 if k == 0 else 0)
        for i in range(1, min(k, len(coeffs) - 1) + 1):
            s -= coeffs[i] * out[k - i]
        out.append(s / c0)
    return out
