"""Hilbert series, the Fröberg necessary test, and bounded graded Betti tables.

Resolutions are built one internal degree at a time.  A free module over a
:class:`~extkoszul.quotient.QuotientAlgebra` ``A`` is a list of generator
degrees; its degree-``j`` piece has a basis of pairs ``(g, b)`` with ``b`` a
basis element of ``A`` of degree ``j - deg(g)``.  Minimal generators of a
submodule ``K`` in degree ``j`` are a complement of ``A_1 K_{j-1}`` inside
``K_j``; the next kernel comes from exact linear algebra over the field.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import ExtElement, UsageError, monomials_of_degree
from .field import GF, Field
from .groebner import Ideal, hilbert_series
from .linalg import independent_rows, left_kernel
from .quotient import QuotientAlgebra
from .series import HilbertSeries, PowerSeries, series_inverse

__all__ = [
    "BettiTable",
    "betti_over_E",
    "euler_identity_check",
    "froberg_inverse",
    "hilbert_series",
    "koszul_betti_bounded",
]


def froberg_inverse(h: HilbertSeries, N: int) -> PowerSeries:
    """Coefficients of ``1/h(-t)`` through degree ``N``.

    For a Koszul algebra these are the Betti numbers of the residue field,
    so a negative coefficient rules Koszulness out.
    """
    if h[0] != 1:
        raise UsageError("Hilbert series must start with 1")
    if N < 0:
        raise UsageError("truncation bound must be nonnegative")
    twisted = [c * (-1) ** k for k, c in enumerate(h.coefficients)]
    coeffs = tuple(series_inverse(twisted, N))
    first = next((k for k, c in enumerate(coeffs) if c < 0), None)
    return PowerSeries(coeffs, N, first)


@dataclass
class BettiTable:
    """Graded Betti numbers ``beta[i, j]`` for ``i <= i_max`` and ``j <= j_max``.

    ``complete_through`` is the largest internal degree for which every
    homological degree up to ``i_max`` was computed.
    """

    ring: str
    module: str
    field: Field
    i_max: int
    j_max: int
    entries: Dict[Tuple[int, int], int] = dc_field(default_factory=dict)
    complete_through: int = -1
    notes: List[str] = dc_field(default_factory=list)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        i, j = key
        if i > self.i_max or j > self.j_max:
            raise KeyError(f"beta[{i},{j}] lies outside the computed range")
        return self.entries.get((i, j), 0)

    def total(self, i: int) -> int:
        return sum(v for (a, _), v in self.entries.items() if a == i)

    @property
    def off_diagonal(self) -> List[Tuple[int, int]]:
        return sorted(k for k, v in self.entries.items() if v and k[0] != k[1])

    def diagonal(self) -> List[int]:
        return [self.entries.get((i, i), 0) for i in range(self.i_max + 1)]

    def dominated_by(self, other: "BettiTable") -> bool:
        """Entrywise ``self <= other`` on the common range."""
        im = min(self.i_max, other.i_max)
        jm = min(self.j_max, other.j_max)
        return all(self[i, j] <= other[i, j] for i in range(im + 1) for j in range(jm + 1))

    def render(self) -> str:
        """Macaulay2-style table: rows ``j - i``, columns ``i``."""
        width = max([len(str(v)) for v in self.entries.values()] + [1]) + 1
        lines = ["      " + "".join(f"{i:>{width}}" for i in range(self.i_max + 1))]
        for s in range(self.j_max + 1):
            cells = []
            for i in range(self.i_max + 1):
                j = i + s
                v = self.entries.get((i, j), 0) if j <= self.j_max else None
                cells.append(f"{'.' if v is None else (v or '-'):>{width}}")
            if any(c.strip() not in ("-", ".") for c in cells):
                lines.append(f"{s:>4}: " + "".join(cells))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "module": self.module,
            "field": self.field.spec(),
            "i_max": self.i_max,
            "j_max": self.j_max,
            "complete_through": self.complete_through,
            "entries": [[i, j, v] for (i, j), v in sorted(self.entries.items()) if v],
            "off_diagonal": [list(k) for k in self.off_diagonal],
            "notes": list(self.notes),
        }


# -- resolution engine ----------------------------------------------------------


class _FreeModule:
    def __init__(self, algebra: QuotientAlgebra, degrees: Sequence[int]):
        self.A = algebra
        self.degrees = list(degrees)
        self._bases: Dict[int, Tuple[List[Tuple[int, int]], Dict[Tuple[int, int], int]]] = {}

    def basis(self, j: int):
        hit = self._bases.get(j)
        if hit is None:
            pairs = [(g, b) for g, d in enumerate(self.degrees) for b in self.A.degree_indices(j - d)]
            hit = (pairs, {p: k for k, p in enumerate(pairs)})
            self._bases[j] = hit
        return hit

    def dim(self, j: int) -> int:
        return len(self.basis(j)[0])


def _act(A: QuotientAlgebra, b: int, vec: Dict[Tuple[int, int], object]) -> Dict[Tuple[int, int], object]:
    """Left multiplication of a free-module element by the basis element ``b``."""
    red = A.field.reduce
    out: Dict[Tuple[int, int], object] = {}
    for (g, a), c in vec.items():
        for k, z in A.mul_basis(b, a).items():
            key = (g, k)
            s = red(out.get(key, 0) + c * z)
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def _positions(vec, index) -> Dict[int, object]:
    return {index[p]: c for p, c in vec.items()}


def _resolve(A: QuotientAlgebra, kernel0: Dict[int, List[dict]], i_max: int, j_max: int, table: BettiTable) -> None:
    """Fill ``table`` with the Betti numbers of ``A/K`` where ``K`` is given by ``kernel0``.

    ``kernel0[j]`` spans ``K_j`` inside ``A_j`` (vectors keyed by ``(0, b)``).
    """
    field = A.field
    linear = A.degree_indices(1)
    table.entries[(0, 0)] = 1
    F = _FreeModule(A, [0])
    K = kernel0
    for i in range(1, i_max + 1):
        gens: List[dict] = []
        gen_deg: List[int] = []
        for j in range(i, j_max + 1):
            Kj = K.get(j, [])
            if not Kj:
                continue
            _, index = F.basis(j)
            ncols = len(index)
            spanned = [_act(A, b, v) for v in K.get(j - 1, []) for b in linear]
            spanned = [v for v in spanned if v]
            rows = [_positions(v, index) for v in spanned] + [_positions(v, index) for v in Kj]
            keep = independent_rows(rows, ncols, field)
            fresh = [k - len(spanned) for k in keep if k >= len(spanned)]
            for k in fresh:
                gens.append(Kj[k])
                gen_deg.append(j)
            if fresh:
                table.entries[(i, j)] = len(fresh)
        if i == i_max or not gens:
            break
        G = _FreeModule(A, gen_deg)
        nxt: Dict[int, List[dict]] = {}
        for j in range(i + 1, j_max + 1):
            pairs, _ = G.basis(j)
            if not pairs:
                continue
            _, index = F.basis(j)
            rows = [_positions(_act(A, b, gens[g]), index) for g, b in pairs]
            ker = left_kernel(rows, len(index), field)
            nxt[j] = [{pairs[k]: c for k, c in v.items()} for v in ker]
        F, K = G, nxt
    table.complete_through = j_max


def _check_bounds(i_max: int, j_max: int) -> None:
    if i_max < 0 or j_max < 0:
        raise UsageError("truncation bounds must be nonnegative")


def _betti_field(ideal: Ideal, field: Optional[Field]) -> Field:
    return field if field is not None else GF()


def betti_over_E(ideal: Ideal, i_max: int, j_max: int, field: Optional[Field] = None) -> BettiTable:
    """``beta^E_{i,j}(E/I)`` for ``i <= i_max`` and ``j <= j_max``.

    Runs over ``F_32003`` unless another field is passed.
    """
    _check_bounds(i_max, j_max)
    F = _betti_field(ideal, field)
    I = ideal.with_field(F)
    E = QuotientAlgebra.exterior(ideal.n, F)
    table = BettiTable("E", "E/I", F, i_max, j_max)
    if not F.is_rational:
        table.notes.append(f"computed over F_{F.characteristic}")
    K: Dict[int, List[dict]] = {}
    for d in range(1, j_max + 1):
        vecs = []
        for f in I.generators:
            k = d - f.degree
            if k < 0:
                continue
            for m in monomials_of_degree(ideal.n, k):
                v = E.vector(ExtElement.from_monomial(m, ideal.n, 1, F) * f)
                if v:
                    vecs.append({(0, b): c for b, c in v.items()})
        if vecs:
            keep = independent_rows([{b: c for (_, b), c in v.items()} for v in vecs], len(E.basis), F)
            K[d] = [vecs[k] for k in keep]
    _resolve(E, K, i_max, j_max, table)
    return table


def koszul_betti_bounded(ideal: Ideal, i_max: int, field: Optional[Field] = None, j_max: Optional[int] = None) -> BettiTable:
    """``beta^R_{i,j}(K)`` for ``R = E/I`` through homological degree ``i_max``.

    Without ``j_max`` the table is complete in homological degrees up to
    ``i_max``: ``F_1`` is generated in degree 1 and each kernel lives in
    degrees at most ``top`` above the generators it maps from, so ``F_i`` is
    generated in degrees ``<= 1 + (i-1)*top``.  An empty
    :attr:`BettiTable.off_diagonal` is bounded evidence only.
    """
    F = _betti_field(ideal, field)
    R = QuotientAlgebra(ideal.with_field(F))
    if j_max is None:
        j_max = max(i_max, 1 + (i_max - 1) * max(R.top_degree, 0))
    _check_bounds(i_max, j_max)
    table = BettiTable("E/I", "K", F, i_max, j_max)
    if not F.is_rational:
        table.notes.append(f"computed over F_{F.characteristic}")
    K = {d: [{(0, b): F.coerce(1)} for b in R.degree_indices(d)] for d in range(1, min(j_max, R.top_degree) + 1)}
    _resolve(R, K, i_max, j_max, table)
    return table


def euler_identity_check(
    table: BettiTable, h: HilbertSeries, j_max: int, module: Optional[HilbertSeries] = None
) -> bool:
    """Check ``sum_i (-1)^i beta_{i,j} = [t^j] HS_M(t)/h(t)`` for ``j <= j_max``.

    ``h`` is the Hilbert series of the ring and ``module`` that of ``M``
    (the residue field when omitted).  Internal degree ``j`` only involves
    ``beta_{i,j}`` with ``i <= j``, so the table must reach homological
    degree ``j_max``.
    """
    if j_max > table.complete_through or j_max > table.j_max or j_max > table.i_max:
        raise UsageError(f"table is not complete through internal degree {j_max}")
    inv = series_inverse(list(h.coefficients), j_max)
    m = list(module.coefficients) if module is not None else [1]
    rhs = [sum(m[k] * inv[j - k] for k in range(min(j, len(m) - 1) + 1)) for j in range(j_max + 1)]
    for j in range(j_max + 1):
        lhs = sum((-1) ** i * table.entries.get((i, j), 0) for i in range(j + 1))
        if Fraction(lhs) != rhs[j]:
            return False
    return True
