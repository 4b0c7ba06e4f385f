"""Quotients ``E/I`` with a standard-monomial basis and normal-form products."""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence

from .algebra import ExtElement, LinearForm, UsageError, mono_mul
from .field import QQ, Field
from .groebner import GroebnerBasis, Ideal, buchberger
from .orders import MonomialOrder
from .series import HilbertSeries

Vec = Dict[int, object]


class QuotientAlgebra:
    """``E/I`` for a graded ideal ``I``.

    Elements are sparse vectors over :attr:`basis`, the standard monomials of
    the initial ideal, ordered by degree and then by bit pattern.
    """

    def __init__(self, ideal: Ideal, order: Optional[MonomialOrder] = None):
        self.ideal = ideal
        self.n = ideal.n
        self.field: Field = ideal.field
        self.order = order or MonomialOrder("degrevlex", ideal.n)
        self.gb: GroebnerBasis = buchberger(ideal, self.order)
        basis = sorted(self.gb.initial.standard_monomials(), key=lambda m: (m.bit_count(), m))
        self.basis: List[int] = basis
        self.index: Dict[int, int] = {m: i for i, m in enumerate(basis)}
        top = max((m.bit_count() for m in basis), default=-1)
        self.top_degree = top
        self.by_degree: List[List[int]] = [[] for _ in range(max(top, 0) + 1)]
        for i, m in enumerate(basis):
            self.by_degree[m.bit_count()].append(i)
        self._nf_cache: Dict[int, Vec] = {}
        self._mul_cache: Dict[tuple, Vec] = {}

    @classmethod
    def exterior(cls, n: int, field: Field = QQ) -> "QuotientAlgebra":
        return cls(Ideal(n, [], field))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree_indices(self, d: int) -> List[int]:
        if 0 <= d < len(self.by_degree):
            return self.by_degree[d]
        return []

    def hilbert_series(self) -> HilbertSeries:
        return HilbertSeries([len(b) for b in self.by_degree] if self.basis else [])

    # -- normal forms ----------------------------------------------------------
    def nf_monomial(self, m: int) -> Vec:
        """Normal form of a monomial as a vector over the basis."""
        hit = self._nf_cache.get(m)
        if hit is not None:
            return hit
        i = self.index.get(m)
        if i is not None:
            vec = {i: self.field.coerce(1)}
        else:
            red = self.gb.reduce(ExtElement._raw(self.n, {m: self.field.coerce(1)}, self.field))
            vec = {self.index[u]: c for u, c in red.items()}
        self._nf_cache[m] = vec
        return vec

    def vector(self, f: ExtElement) -> Vec:
        red = self.field.reduce
        out: Vec = {}
        for m, c in f.items():
            for i, v in self.nf_monomial(m).items():
                s = red(out.get(i, 0) + c * v)
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
        return out

    def element(self, vec: Vec) -> ExtElement:
        return ExtElement(self.n, {self.basis[i]: c for i, c in vec.items()}, self.field)

    def reduce(self, f: ExtElement) -> ExtElement:
        return self.element(self.vector(f))

    # -- multiplication ----------------------------------------------------------
    def mul_basis(self, i: int, j: int) -> Vec:
        """Product of basis elements ``basis[i] * basis[j]``."""
        key = (i, j)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        prod = mono_mul(self.basis[i], self.basis[j])
        if prod is None:
            vec: Vec = {}
        else:
            s, w = prod
            nf = self.nf_monomial(w)
            vec = nf if s > 0 else {k: self.field.neg(v) for k, v in nf.items()}
        self._mul_cache[key] = vec
        return vec

    def left_mul(self, a: Vec, b: Vec) -> Vec:
        red = self.field.reduce
        out: Vec = {}
        for i, x in a.items():
            for j, y in b.items():
                for k, z in self.mul_basis(i, j).items():
                    s = red(out.get(k, 0) + x * y * z)
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    def linear_vector(self, form: LinearForm) -> Vec:
        if form.n != self.n:
            raise UsageError(f"form in {form.n} variables, algebra in {self.n}")
        return self.vector(form.to_element().with_field(self.field))

    def multiplication_rows(self, form: LinearForm, d: int, basis_order: Optional[Sequence[int]] = None):
        """Rows of multiplication by ``form`` from degree ``d`` to ``d+1``.

        Row ``k`` is the image of the ``k``-th basis element of degree ``d``
        (in ``basis_order`` when given), written over the degree ``d+1``
        basis positions.
        """
        lv = self.linear_vector(form)
        src = list(basis_order) if basis_order is not None else self.degree_indices(d)
        tgt = self.degree_indices(d + 1)
        pos = {g: k for k, g in enumerate(tgt)}
        rows = []
        for i in src:
            img = self.left_mul(lv, {i: self.field.coerce(1)})
            rows.append({pos[k]: v for k, v in img.items()})
        return rows, src, tgt

    def quotient_by(self, forms: Sequence[LinearForm]) -> "QuotientAlgebra":
        """``R/(forms)`` presented over the same variables."""
        extra = [f.to_element().with_field(self.field) for f in forms]
        return QuotientAlgebra(Ideal(self.n, list(self.ideal.generators) + extra, self.field), self.order)

    def __repr__(self):
        return f"QuotientAlgebra(n={self.n}, HS={self.hilbert_series()})"
