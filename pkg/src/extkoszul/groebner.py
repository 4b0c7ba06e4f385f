"""Gröbner bases of graded ideals in the exterior algebra."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from . import linalg
from .algebra import ExtElement, UsageError, mono_mul, mono_str, monomials_of_degree
from .field import QQ, Field
from .orders import MonomialOrder
from .series import HilbertSeries

MAX_HILBERT_VARS = 24


class Ideal:
    """A graded ideal given by homogeneous generators; zero generators are dropped."""

    __slots__ = ("n", "field", "generators")

    def __init__(self, n: int, generators: Iterable[ExtElement] = (), field: Optional[Field] = None):
        gens = list(generators)
        if field is None:
            field = gens[0].field if gens else QQ
        kept = []
        for g in gens:
            if g.n != n:
                raise UsageError(f"generator {g} lives in {g.n} variables, ideal in {n}")
            if g.field != field:
                g = g.with_field(field)
            if not g:
                continue
            if not g.is_homogeneous():
                raise UsageError(f"generator {g} is not homogeneous")
            kept.append(g)
        self.n = n
        self.field = field
        self.generators = tuple(kept)

    def with_field(self, field: Field) -> "Ideal":
        return Ideal(self.n, [g.with_field(field) for g in self.generators], field)

    def __add__(self, other) -> "Ideal":
        extra = other.generators if isinstance(other, Ideal) else list(other)
        return Ideal(self.n, list(self.generators) + list(extra), self.field)

    def degree_part(self, d: int) -> List[ExtElement]:
        """Spanning set of the degree ``d`` component."""
        out = []
        for g in self.generators:
            k = d - g.degree
            if k < 0:
                continue
            for w in monomials_of_degree(self.n, k):
                h = g.mul_monomial_left(w)
                if h:
                    out.append(h)
        return out

    def is_monomial(self) -> bool:
        return all(len(g) == 1 for g in self.generators)

    def __repr__(self):
        return f"Ideal({self.n}, [{', '.join(map(str, self.generators))}])"


class MonomialIdeal:
    """A squarefree monomial ideal kept as its antichain of minimal generators."""

    __slots__ = ("n", "minimal_generators", "_by_top")

    def __init__(self, n: int, generators: Iterable[int]):
        gens = sorted(set(generators), key=lambda m: (m.bit_count(), m))
        minimal: List[int] = []
        for g in gens:
            if not any(h & g == h for h in minimal):
                minimal.append(g)
        self.n = n
        self.minimal_generators = tuple(sorted(minimal))
        by_top: Dict[int, List[int]] = {}
        for g in self.minimal_generators:
            if g:
                by_top.setdefault(g.bit_length() - 1, []).append(g)
        self._by_top = by_top

    def __contains__(self, m: int) -> bool:
        return any(g & m == g for g in self.minimal_generators)

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.n == other.n and self.minimal_generators == other.minimal_generators

    def __hash__(self):
        return hash((self.n, self.minimal_generators))

    def standard_monomials(self) -> Iterator[int]:
        """Monomials outside the ideal, by depth-first extension in index order."""
        if 0 in self.minimal_generators:
            return
        n = self.n
        by_top = self._by_top
        stack = [0]
        while stack:
            m = stack.pop()
            yield m
            start = m.bit_length()
            for j in range(n - 1, start - 1, -1):
                x = m | (1 << j)
                # a generator dividing x but not m must contain e_{j+1}, its top variable
                if any(g & x == g for g in by_top.get(j, ())):
                    continue
                stack.append(x)

    def hilbert_series(self) -> HilbertSeries:
        if self.n > MAX_HILBERT_VARS:
            raise UsageError(f"Hilbert series by enumeration is limited to {MAX_HILBERT_VARS} variables")
        counts = [0] * (self.n + 1)
        for m in self.standard_monomials():
            counts[m.bit_count()] += 1
        return HilbertSeries(counts)

    def to_ideal(self, field: Field = QQ) -> Ideal:
        return Ideal(self.n, [ExtElement(self.n, {g: 1}, field) for g in self.minimal_generators], field)

    def __str__(self):
        return "(" + ", ".join(mono_str(g) for g in self.minimal_generators) + ")"

    def __repr__(self):
        return f"MonomialIdeal({self.n}, {self})"


# ---------------------------------------------------------------------------
# reduction


def leading_monomial(f: ExtElement, order: MonomialOrder) -> int:
    if not f:
        raise UsageError("the zero element has no leading term")
    return max(f.support(), key=order.key)


def leading_coefficient(f: ExtElement, order: MonomialOrder):
    return f.coefficient(leading_monomial(f, order))


def monic(f: ExtElement, order: MonomialOrder) -> ExtElement:
    return f.scale(f.field.inv(leading_coefficient(f, order)))


def _prepare(G: Sequence[ExtElement], order: MonomialOrder):
    out = []
    for g in G:
        if not g:
            raise UsageError("cannot divide by the zero element")
        lm = leading_monomial(g, order)
        out.append((lm, g.field.inv(g.coefficient(lm)), g))
    return out


def _reduce(f: ExtElement, divisors, order: MonomialOrder) -> ExtElement:
    field = f.field
    red = field.reduce
    key = order.key
    work: Dict[int, object] = dict(f.items())
    rest: Dict[int, object] = {}
    while work:
        m = max(work, key=key)
        c = work[m]
        for lm, lc_inv, g in divisors:
            if lm & m == lm:
                w = m ^ lm
                s, _ = mono_mul(w, lm)
                factor = red(c * lc_inv * s)
                for u, a in g.items():
                    prod = mono_mul(w, u)
                    if prod is None:
                        continue
                    sgn, wu = prod
                    v = red(work.get(wu, 0) - factor * a * sgn)
                    if v:
                        work[wu] = v
                    else:
                        work.pop(wu, None)
                break
        else:
            rest[m] = c
            del work[m]
    return ExtElement._raw(f.n, rest, field)


def normal_form(f: ExtElement, G: Sequence[ExtElement], order: MonomialOrder) -> ExtElement:
    """Fully reduce ``f`` by ``G``; among divisors the earliest in ``G`` is used."""
    for g in G:
        f._compatible(g)
    return _reduce(f, _prepare(G, order), order)


# ---------------------------------------------------------------------------
# Buchberger


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    elements: Tuple[ExtElement, ...]
    initial: MonomialIdeal

    @property
    def n(self) -> int:
        return self.initial.n

    @property
    def field(self) -> Field:
        return self.elements[0].field if self.elements else QQ

    def reduce(self, f: ExtElement) -> ExtElement:
        return normal_form(f, self.elements, self.order)

    def contains(self, f: ExtElement) -> bool:
        return not self.reduce(f)

    def ideal(self) -> Ideal:
        return Ideal(self.n, self.elements, self.field)

    def max_degree(self) -> int:
        return max((g.degree for g in self.elements), default=0)

    def leading_monomials(self) -> List[int]:
        return [leading_monomial(g, self.order) for g in self.elements]


def s_element(f: ExtElement, g: ExtElement, order: MonomialOrder) -> ExtElement:
    """Combination of monomial multiples of monic ``f`` and ``g`` cancelling the joint leading term."""
    u, v = leading_monomial(f, order), leading_monomial(g, order)
    lcm = u | v
    a, b = lcm ^ u, lcm ^ v
    s1, _ = mono_mul(a, u)
    s2, _ = mono_mul(b, v)
    return f.mul_monomial_left(a, s1) - g.mul_monomial_left(b, s2)


def buchberger(ideal: Ideal, order: MonomialOrder, annihilators: bool = True) -> GroebnerBasis:
    """Reduced Gröbner basis of ``ideal``.

    Besides S-elements, every ``e_i * g`` with ``e_i`` dividing the leading
    monomial of ``g`` must reduce to zero; ``annihilators=False`` skips that
    step and exists only to demonstrate that it is needed.
    """
    if order.n != ideal.n:
        raise UsageError(f"order on {order.n} variables, ideal in {ideal.n}")
    basis: List[ExtElement] = []
    divisors: list = []
    queue: list = []
    counter = 0

    def push(deg: int, task) -> None:
        nonlocal counter
        heapq.heappush(queue, (deg, counter, task))
        counter += 1

    def add(h: ExtElement) -> None:
        h = monic(h, order)
        lm = leading_monomial(h, order)
        idx = len(basis)
        for j, g in enumerate(basis):
            push((lm | leading_monomial(g, order)).bit_count(), ("pair", j, idx))
        if annihilators:
            w = lm
            while w:
                low = w & -w
                push(lm.bit_count() + 1, ("ann", idx, low))
                w ^= low
        basis.append(h)
        divisors.append((lm, h.field.coerce(1), h))

    for g in sorted(ideal.generators, key=lambda x: (x.degree, -order.key(leading_monomial(x, order)))):
        r = _reduce(g, divisors, order)
        if r:
            add(r)

    while queue:
        _, _, task = heapq.heappop(queue)
        if task[0] == "pair":
            _, i, j = task
            h = s_element(basis[i], basis[j], order)
        else:
            _, i, var = task
            h = basis[i].mul_monomial_left(var)
        if not h:
            continue
        r = _reduce(h, divisors, order)
        if r:
            add(r)

    return _reduced(basis, order, ideal.n)


def _reduced(basis: List[ExtElement], order: MonomialOrder, n: int) -> GroebnerBasis:
    lms = [leading_monomial(g, order) for g in basis]
    keep = []
    for i, g in enumerate(basis):
        lm = lms[i]
        dominated = False
        for j, h in enumerate(lms):
            if j != i and h & lm == h and (h != lm or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(g)
    final = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        lm = leading_monomial(g, order)
        tail = g - ExtElement(n, {lm: g.coefficient(lm)}, g.field)
        r = ExtElement(n, {lm: g.coefficient(lm)}, g.field) + normal_form(tail, others, order)
        final.append(monic(r, order))
    final.sort(key=lambda g: order.key(leading_monomial(g, order)), reverse=True)
    initial = MonomialIdeal(n, [leading_monomial(g, order) for g in final])
    return GroebnerBasis(order, tuple(final), initial)


def initial_ideal(ideal: Ideal, order: MonomialOrder) -> MonomialIdeal:
    return buchberger(ideal, order).initial


def is_quadratic_gb(ideal: Ideal, order: MonomialOrder) -> bool:
    gb = buchberger(ideal, order)
    return all(g.degree == 2 for g in gb.elements)


def hilbert_series(ideal: Ideal, order: Optional[MonomialOrder] = None) -> HilbertSeries:
    """Hilbert series of ``E/I`` by counting standard monomials of an initial ideal."""
    if ideal.n > MAX_HILBERT_VARS:
        raise UsageError(
            f"{ideal.n} variables exceed the enumeration limit of {MAX_HILBERT_VARS}; "
            "split the ideal into independent blocks and multiply their series"
        )
    if order is None:
        order = MonomialOrder("degrevlex", ideal.n)
    if ideal.is_monomial():
        return MonomialIdeal(ideal.n, [g.support()[0] for g in ideal.generators]).hilbert_series()
    return initial_ideal(ideal, order).hilbert_series()


# ---------------------------------------------------------------------------
# order-free quadratic certificates


@dataclass(frozen=True)
class QuadraticScan:
    """Outcome of :func:`fixed_coordinate_quadratic_scan`.

    ``certificate`` is true when no candidate leading-monomial set survives,
    which proves there is no quadratic Gröbner basis in these coordinates.
    """

    certificate: bool
    target: HilbertSeries
    monomials: Tuple[int, ...]
    examined: int
    candidates: Tuple[Tuple[int, ...], ...]

    @property
    def status(self) -> str:
        return "certificate" if self.certificate else "inconclusive"


MAX_SCAN_DIMENSION = 12


def fixed_coordinate_quadratic_scan(ideal: Ideal, start: int = 0, stop: Optional[int] = None) -> QuadraticScan:
    """Decide whether any monomial order could give ``ideal`` a quadratic Gröbner basis.

    Any monomial order restricts to a total order on the quadratic monomials
    ``S`` occurring in ``I_2``, and the leading monomials of ``I_2`` under a
    total order on ``S`` form the greedy column basis of the coefficient
    matrix.  Every column basis arises this way (rank its members first), so
    the candidate sets are exactly the column bases.  A quadratic Gröbner
    basis with leading set ``M`` forces ``HS(E/(M)) = HS(E/I)``.

    ``start``/``stop`` select a slice of the candidate subsets so a driver can
    split the work.
    """
    if any(g.degree != 2 for g in ideal.generators):
        raise UsageError("the scan needs an ideal generated by quadrics")
    n, field = ideal.n, ideal.field
    quads = list(ideal.generators)
    monos = sorted({m for g in quads for m in g.support()})
    col = {m: i for i, m in enumerate(monos)}
    rows = [{col[m]: c for m, c in g.items()} for g in quads]
    basis_rows, _ = linalg.rref(rows, len(monos), field)
    d = len(basis_rows)
    if d > MAX_SCAN_DIMENSION:
        raise UsageError(f"degree-2 part has dimension {d} > {MAX_SCAN_DIMENSION}; enumeration refused")
    target = hilbert_series(ideal)
    columns = [[r[j] for r in basis_rows] for j in range(len(monos))]
    examined = 0
    survivors = []
    for idx, subset in enumerate(combinations(range(len(monos)), d)):
        if idx < start:
            continue
        if stop is not None and idx >= stop:
            break
        if linalg.rank([columns[j] for j in subset], d, field) < d:
            continue
        examined += 1
        lead = tuple(monos[j] for j in subset)
        if MonomialIdeal(n, lead).hilbert_series() == target:
            survivors.append(lead)
    return QuadraticScan(not survivors, target, tuple(monos), examined, tuple(survivors))


def leading_sets_by_orders(ideal: Ideal) -> set:
    """Leading-monomial sets of ``I_2`` over every total order of its monomials.

    Factorial cost; used to cross-check the basis enumeration on small inputs.
    """
    from itertools import permutations

    quads = list(ideal.generators)
    monos = sorted({m for g in quads for m in g.support()})
    found = set()
    for perm in permutations(monos):
        # perm[0] is the largest monomial
        cols = list(perm)
        index = {m: i for i, m in enumerate(cols)}
        rows = [{index[m]: c for m, c in g.items()} for g in quads]
        _, piv = linalg.rref(rows, len(cols), ideal.field)
        found.add(tuple(sorted(cols[p] for p in piv)))
    return found
