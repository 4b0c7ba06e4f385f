"""Monomial orders on squarefree monomials."""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterator, Optional, Sequence

from .algebra import UsageError

KINDS = ("lex", "deglex", "degrevlex")


class MonomialOrder:
    """``kind`` plus a ranking of the variables from largest to smallest.

    ``ranking=(3, 1, 2)`` means ``e3 > e1 > e2``.  The default ranking is
    ``e1 > e2 > ... > en``.
    """

    __slots__ = ("kind", "ranking", "n", "_shift", "_key")

    def __init__(self, kind: str, n: int, ranking: Optional[Sequence[int]] = None):
        if kind not in KINDS:
            raise UsageError(f"unknown order kind {kind!r}; expected one of {KINDS}")
        ranking = tuple(range(1, n + 1)) if ranking is None else tuple(ranking)
        if sorted(ranking) != list(range(1, n + 1)):
            raise UsageError(f"ranking {ranking} is not a permutation of 1..{n}")
        self.kind = kind
        self.n = n
        self.ranking = ranking
        # bit position of variable i when the largest variable is the top bit
        self._shift = tuple(n - 1 - ranking.index(i) for i in range(1, n + 1))
        self._key = lru_cache(maxsize=1 << 16)(self._compute_key)

    @classmethod
    def parse(cls, text: str, n: int) -> "MonomialOrder":
        """``degrevlex`` or ``lex:3,1,2,4`` (variables listed largest first)."""
        kind, _, perm = text.partition(":")
        ranking = None
        if perm:
            try:
                ranking = [int(x) for x in perm.replace(">", ",").split(",") if x.strip()]
            except ValueError:
                raise UsageError(f"bad variable ranking {perm!r}") from None
        return cls(kind.strip(), n, ranking)

    def spec(self) -> str:
        if self.ranking == tuple(range(1, self.n + 1)):
            return self.kind
        return f"{self.kind}:{','.join(map(str, self.ranking))}"

    def _lexbits(self, m: int) -> int:
        out = 0
        i = 0
        while m:
            if m & 1:
                out |= 1 << self._shift[i]
            m >>= 1
            i += 1
        return out

    def _compute_key(self, m: int) -> int:
        lexbits = self._lexbits(m)
        if self.kind == "lex":
            return lexbits
        d = m.bit_count()
        if self.kind == "deglex":
            return (d << self.n) | lexbits
        # degrevlex: among equal degrees the monomial avoiding the smallest
        # differing variable wins; reversing the bit significance gives that
        rev = 0
        for pos in range(self.n):
            if lexbits >> pos & 1:
                rev |= 1 << (self.n - 1 - pos)
        # larger variables occupy the low bits of rev now; the smallest
        # variable is the top bit, and holding it makes the monomial smaller
        return (d << self.n) | ((1 << self.n) - 1 - rev)

    def key(self, m: int) -> int:
        """Integer sort key: ``u < v`` in this order iff ``key(u) < key(v)``."""
        return self._key(m)

    def compare(self, u: int, v: int) -> int:
        """-1, 0 or 1 as ``u`` is smaller than, equal to or greater than ``v``."""
        ku, kv = self._key(u), self._key(v)
        return (ku > kv) - (ku < kv)

    def leading(self, monomials) -> int:
        return max(monomials, key=self._key)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.n, self.ranking) == (other.kind, other.n, other.ranking)

    def __hash__(self):
        return hash((self.kind, self.n, self.ranking))

    def __repr__(self):
        return f"MonomialOrder({self.spec()!r}, n={self.n})"


def degrevlex(n: int) -> MonomialOrder:
    return MonomialOrder("degrevlex", n)


def stock_orders(n: int, kinds: Sequence[str] = KINDS, start: int = 0, stop: Optional[int] = None) -> Iterator[MonomialOrder]:
    """All ``len(kinds) * n!`` kind/ranking combinations, optionally a slice of them."""
    idx = 0
    for kind in kinds:
        for perm in permutations(range(1, n + 1)):
            if idx >= start and (stop is None or idx < stop):
                yield MonomialOrder(kind, n, perm)
            idx += 1
