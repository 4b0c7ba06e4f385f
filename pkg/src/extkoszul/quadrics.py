"""Quadrics in the exterior algebra: alternating matrices, rank, Pfaffians,
greedy factor decompositions, rank-2 members of pencils and generic ideals."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .algebra import ExtElement, LinearForm, UsageError
from .field import QQ, Field
from .groebner import Ideal
from .linalg import _rref_numpy, rank as matrix_rank
from .orders import MonomialOrder

DEFAULT_SEED = 20240917
DEFAULT_BOUND = 100
_P = 1_000_003


def _screen(x) -> int:
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, _P) % _P if x.denominator % _P else 0


def _require_quadric(q: ExtElement) -> None:
    if not q or q.degrees() != {2}:
        raise UsageError(f"{q} is not a nonzero quadric" if q else "the zero element is not a quadric")


class AlternatingMatrix:
    """Skew-symmetric matrix with zero diagonal.

    For ``q = sum_{a<b} c_ab e_a e_b`` the entry ``(a, b)`` is ``c_ab`` and
    ``(b, a)`` is ``-c_ab``.
    """

    __slots__ = ("n", "field", "rows")

    def __init__(self, n: int, upper: dict, field: Field = QQ):
        zero = field.coerce(0)
        rows = [[zero] * n for _ in range(n)]
        for (a, b), c in upper.items():
            if not a < b:
                raise UsageError("alternating entries are given above the diagonal")
            c = field.coerce(c)
            rows[a][b] = c
            rows[b][a] = field.neg(c)
        self.n = n
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)

    @classmethod
    def from_quadric(cls, q: ExtElement) -> "AlternatingMatrix":
        _require_quadric(q)
        upper = {}
        for m, c in q.items():
            low = m & -m
            a = low.bit_length() - 1
            b = (m ^ low).bit_length() - 1
            upper[(a, b)] = c
        return cls(q.n, upper, q.field)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = QQ) -> "AlternatingMatrix":
        n = len(rows)
        for a in range(n):
            if rows[a][a]:
                raise UsageError("diagonal of an alternating matrix must vanish")
            for b in range(a + 1, n):
                if field.reduce(field.coerce(rows[a][b]) + field.coerce(rows[b][a])):
                    raise UsageError("matrix is not skew-symmetric")
        return cls(n, {(a, b): rows[a][b] for a in range(n) for b in range(a + 1, n) if rows[a][b]}, field)

    def __getitem__(self, key):
        a, b = key
        return self.rows[a][b]

    def __add__(self, other: "AlternatingMatrix") -> "AlternatingMatrix":
        return self.combine(other, 1)

    def combine(self, other: "AlternatingMatrix", lam) -> "AlternatingMatrix":
        """``self + lam * other``."""
        red = self.field.reduce
        return AlternatingMatrix(
            self.n,
            {(a, b): red(self[a, b] + lam * other[a, b]) for a in range(self.n) for b in range(a + 1, self.n)},
            self.field,
        )

    def rank(self) -> int:
        return matrix_rank(self.rows, self.n, self.field) if self.n else 0

    def pfaffian(self):
        return pfaffian(self)

    def to_quadric(self) -> ExtElement:
        terms = {(1 << a) | (1 << b): self[a, b] for a in range(self.n) for b in range(a + 1, self.n) if self[a, b]}
        return ExtElement(self.n, terms, self.field)


def to_alternating(q: ExtElement) -> AlternatingMatrix:
    return AlternatingMatrix.from_quadric(q)


def quadric_rank(q: ExtElement) -> int:
    """Rank of the alternating matrix of ``q``; zero for ``q = 0``."""
    if not q:
        return 0
    return to_alternating(q).rank()


def pfaffian(A: AlternatingMatrix):
    """Pfaffian by expansion along the first row."""
    if A.n % 2:
        raise UsageError("the Pfaffian needs an even-sized matrix")
    field = A.field
    red = field.reduce

    @lru_cache(maxsize=None)
    def pf(idx: Tuple[int, ...]):
        if not idx:
            return field.coerce(1)
        first, rest = idx[0], idx[1:]
        total = field.coerce(0)
        for k, j in enumerate(rest):
            a = A[first, j]
            if not a:
                continue
            sub = pf(rest[:k] + rest[k + 1:])
            total = red(total + a * sub if k % 2 == 0 else total - a * sub)
        return total

    return pf(tuple(range(A.n)))


# -- decomposition ----------------------------------------------------------------------


@dataclass(frozen=True)
class QuadricFactor:
    alpha: object
    left: ExtElement
    right: ExtElement
    pivot: Tuple[int, int]

    def product(self) -> ExtElement:
        return (self.left * self.right).scale(self.alpha)


@dataclass(frozen=True)
class QuadricDecomposition:
    quadric: ExtElement
    order: MonomialOrder
    factors: Tuple[QuadricFactor, ...]

    @property
    def rank(self) -> int:
        return 2 * len(self.factors)

    def recompose(self) -> ExtElement:
        out = ExtElement.zero(self.quadric.n, self.quadric.field)
        for f in self.factors:
            out = out + f.product()
        return out

    def __str__(self):
        out = ""
        for f in self.factors:
            a = f.alpha
            neg = a < 0 if self.quadric.field.characteristic == 0 else False
            mag = -a if neg else a
            body = ("" if mag == 1 else f"{mag}*") + f"({f.left})*({f.right})"
            if not out:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out or "0"


def decompose(q: ExtElement, order: Optional[MonomialOrder] = None) -> QuadricDecomposition:
    """Peel ``q`` into ``sum_s alpha_s (e_i + l_s1)(e_j + l_s2)``.

    Each step takes the leading monomial ``e_i e_j`` (``e_i`` the larger
    variable), with ``alpha`` its coefficient, ``B`` the terms containing
    ``e_j`` written as ``(.) e_j`` and ``A`` those containing ``e_i`` written as
    ``e_i (.)``.  Then ``q - B*A/alpha`` involves neither variable.
    """
    _require_quadric(q)
    order = order or MonomialOrder("degrevlex", q.n)
    field = q.field
    n = q.n
    factors: List[QuadricFactor] = []
    rest = q
    while rest:
        lead = order.leading(rest.support())
        low = lead & -lead
        x, y = low.bit_length() - 1, (lead ^ low).bit_length() - 1
        i, j = (x, y) if order.compare(1 << x, 1 << y) > 0 else (y, x)
        M = AlternatingMatrix.from_quadric(rest)
        alpha = M[i, j]
        inv = field.inv(alpha)
        left = ExtElement(n, {1 << k: field.reduce(M[k, j] * inv) for k in range(n) if M[k, j]}, field)
        right = ExtElement(n, {1 << k: field.reduce(M[i, k] * inv) for k in range(n) if M[i, k]}, field)
        fac = QuadricFactor(alpha, left, right, (i + 1, j + 1))
        rest = rest - fac.product()
        if any(m >> i & 1 or m >> j & 1 for m in rest.support()):
            raise AssertionError("peeling left the pivot variables behind")
        factors.append(fac)
    return QuadricDecomposition(q, order, tuple(factors))


# -- pencils ------------------------------------------------------------------------------


@dataclass(frozen=True)
class PencilRoot:
    """A member of the pencil ``q1 + lam*q2`` of rank at most two.

    ``kind`` is ``rational``, ``infinity`` (``q2`` itself), ``irrational`` or
    ``complex``; the last two carry the minimal polynomial ``c2*x^2 + c1*x + c0``
    and its discriminant.
    """

    kind: str
    value: Optional[Fraction] = None
    witness: Optional[ExtElement] = None
    witness_rank: Optional[int] = None
    minimal_polynomial: Optional[Tuple[Fraction, Fraction, Fraction]] = None
    discriminant: Optional[Fraction] = None

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.value is not None:
            out["lambda"] = str(self.value)
        if self.witness is not None:
            out["witness"] = str(self.witness)
            out["witness_rank"] = self.witness_rank
        if self.minimal_polynomial is not None:
            out["minimal_polynomial"] = [str(c) for c in self.minimal_polynomial]
            out["discriminant"] = str(self.discriminant)
        return out


@dataclass(frozen=True)
class PencilResult:
    pfaffian: Tuple[Fraction, Fraction, Fraction]
    roots: Tuple[PencilRoot, ...]
    identically_degenerate: bool

    @property
    def rational_roots(self) -> List[Fraction]:
        return [r.value for r in self.roots if r.kind == "rational"]

    def to_json(self) -> dict:
        c0, c1, c2 = self.pfaffian
        return {
            "pfaffian": [str(c0), str(c1), str(c2)],
            "identically_degenerate": self.identically_degenerate,
            "roots": [r.to_json() for r in self.roots],
        }


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    a, b = x.numerator, x.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def _witness_root(q1: ExtElement, q2: ExtElement, lam) -> PencilRoot:
    w = q1 + q2.scale(lam)
    r = quadric_rank(w)
    if r > 2:
        raise AssertionError(f"pencil member at {lam} has rank {r}")
    return PencilRoot("rational", Fraction(lam), w, r)


def rank2_in_pencil(q1: ExtElement, q2: ExtElement) -> PencilResult:
    """Members of rank at most two on the line through ``q1`` and ``q2`` in 4 variables.

    ``Pf(A1 + lam*A2)`` is quadratic in ``lam``; it is recovered from the
    values at ``0, 1, -1``.
    """
    for q in (q1, q2):
        _require_quadric(q)
        if q.n != 4:
            raise UsageError("pencils are analysed in exactly 4 variables")
    if not q1.field.is_rational or q1.field != q2.field:
        raise UsageError("pencils are analysed over the rationals")
    if matrix_rank([[q1.coefficient(m) for m in range(16)], [q2.coefficient(m) for m in range(16)]], 16, QQ) < 2:
        raise UsageError("the two quadrics are linearly dependent")
    A1, A2 = to_alternating(q1), to_alternating(q2)
    p0 = Fraction(pfaffian(A1))
    p1 = Fraction(pfaffian(A1.combine(A2, 1)))
    pm = Fraction(pfaffian(A1.combine(A2, -1)))
    c0, c1, c2 = p0, (p1 - pm) / 2, (p1 + pm) / 2 - p0
    roots: List[PencilRoot] = []
    if c0 == c1 == c2 == 0:
        roots.append(_witness_root(q1, q2, 0))
        return PencilResult((c0, c1, c2), tuple(roots), True)
    if c2 == 0:
        # q2 alone is degenerate
        r = quadric_rank(q2)
        roots.append(PencilRoot("infinity", None, q2, r))
        if c1:
            roots.append(_witness_root(q1, q2, -c0 / c1))
    else:
        disc = c1 * c1 - 4 * c2 * c0
        s = _rational_sqrt(disc)
        if s is not None:
            for lam in sorted({(-c1 + s) / (2 * c2), (-c1 - s) / (2 * c2)}):
                roots.append(_witness_root(q1, q2, lam))
        else:
            kind = "complex" if disc < 0 else "irrational"
            roots.append(PencilRoot(kind, minimal_polynomial=(c0, c1, c2), discriminant=disc))
    return PencilResult((c0, c1, c2), tuple(roots), False)


# -- sampling and generic ideals --------------------------------------------------------------


@dataclass
class MinRankSample:
    min_rank: int
    coefficients: Tuple
    witness: ExtElement
    samples: int
    seed: int

    def to_json(self) -> dict:
        return {
            "min_rank": self.min_rank,
            "coefficients": [str(c) for c in self.coefficients],
            "witness": str(self.witness),
            "samples": self.samples,
            "seed": self.seed,
        }


def min_rank_sample(span: Sequence[ExtElement], samples: int = 10_000, seed: int = DEFAULT_SEED, bound: int = DEFAULT_BOUND) -> MinRankSample:
    """Smallest rank seen among combinations of ``span``.

    Tries every generator, every ``q_i +- q_j`` and ``samples`` random integer
    combinations.  A low rank found is exact; a high minimum is only evidence.
    """
    if not span:
        raise UsageError("empty span")
    for q in span:
        _require_quadric(q)
    k = len(span)
    n = span[0].n
    field = span[0].field
    mats = [to_alternating(q) for q in span]
    best: Optional[Tuple[int, Tuple]] = None

    stack = np.array([[[_screen(x) for x in row] for row in M.rows] for M in mats], dtype=np.int64)

    def consider(coeffs: Tuple) -> None:
        nonlocal best
        if field.is_rational and all(isinstance(c, int) for c in coeffs):
            # rank mod p never exceeds the rational rank
            screened = np.tensordot(np.array(coeffs, dtype=np.int64) % _P, stack, axes=1) % _P
            lower = len(_rref_numpy(screened, _P)[1])
            if best is not None and lower >= best[0]:
                return
        rows = [[field.reduce(sum(c * M.rows[a][b] for c, M in zip(coeffs, mats))) for b in range(n)] for a in range(n)]
        if not any(any(r) for r in rows):
            return
        r = matrix_rank(rows, n, field)
        if best is None or r < best[0]:
            best = (r, coeffs)

    for i in range(k):
        consider(tuple(1 if t == i else 0 for t in range(k)))
    for i in range(k):
        for j in range(i + 1, k):
            for s in (1, -1):
                consider(tuple(1 if t == i else s if t == j else 0 for t in range(k)))
    rng = random.Random(seed)
    for _ in range(samples):
        consider(tuple(rng.randint(-bound, bound) for _ in range(k)))
    if best is None:
        raise UsageError("span is zero")
    r, coeffs = best
    witness = ExtElement.zero(n, field)
    for c, q in zip(coeffs, span):
        witness = witness + q.scale(c)
    if quadric_rank(witness) != r:
        raise AssertionError("witness rank disagrees with the sampled rank")
    return MinRankSample(r, coeffs, witness, samples, seed)


def generic_quadrics(n: int, t: int, seed: int = DEFAULT_SEED, bound: int = DEFAULT_BOUND, field: Field = QQ) -> Ideal:
    """``t`` quadrics with independent uniform integer coefficients in ``[-bound, bound]``."""
    if bound < 1:
        raise UsageError("coefficient bound must be at least 1")
    if n < 2 or t < 0:
        raise UsageError("need n >= 2 and t >= 0")
    rng = random.Random(seed)
    pairs = [(1 << a) | (1 << b) for a in range(n) for b in range(a + 1, n)]
    gens = [ExtElement(n, {m: rng.randint(-bound, bound) for m in pairs}, field) for _ in range(t)]
    return Ideal(n, gens, field)


def rank_bound(n: int, r: int, t: int) -> bool:
    """Whether ``t <= (n-2r+1)(n-2r+2)/2``, the size limit for ``t`` generic
    quadrics in ``n`` variables to have only members of rank at least ``2r``."""
    return 2 * t <= (n - 2 * r + 1) * (n - 2 * r + 2)


def linear_factors(q: ExtElement) -> Optional[Tuple[LinearForm, LinearForm]]:
    """``(l1, l2)`` with ``q = l1*l2`` when ``q`` has rank two, else ``None``."""
    d = decompose(q)
    if len(d.factors) != 1:
        return None
    f = d.factors[0]
    return LinearForm.from_element(f.left.scale(f.alpha)), LinearForm.from_element(f.right)
