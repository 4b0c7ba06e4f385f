"""The exterior algebra over an exact field.

A monomial ``e_{i_1} e_{i_2} ... e_{i_k}`` with ``i_1 < ... < i_k`` is stored
as the integer bit set with bit ``i - 1`` set for each variable ``e_i``.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .field import QQ, Field

MAX_VARS = 62


class UsageError(ValueError):
    """Raised when arguments do not satisfy an operation's preconditions."""


# ---------------------------------------------------------------------------
# monomials


def degree(m: int) -> int:
    return m.bit_count()


def variables(m: int) -> List[int]:
    """1-based variable indices of ``m`` in increasing order."""
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def monomial(*indices: int) -> int:
    """Bit set of the squarefree monomial with the given variable indices."""
    m = 0
    for i in indices:
        if i < 1 or i > MAX_VARS:
            raise UsageError(f"variable index {i} outside 1..{MAX_VARS}")
        m |= 1 << (i - 1)
    return m


def divides(u: int, v: int) -> bool:
    return u & v == u


def mono_mul(u: int, v: int) -> Optional[Tuple[int, int]]:
    """Product of two monomials as ``(sign, monomial)``, or ``None`` if it is zero.

    The sign is ``(-1)**k`` with ``k`` the number of pairs ``a`` in ``u``,
    ``b`` in ``v`` with ``a > b``.
    """
    if u & v:
        return None
    k = 0
    w = v
    while w:
        low = w & -w
        k += (u & ~((low << 1) - 1)).bit_count()
        w ^= low
    return (-1 if k & 1 else 1), u | v


def mono_str(m: int) -> str:
    if not m:
        return "1"
    return "*".join(f"e{i}" for i in variables(m))


def monomials_of_degree(n: int, d: int) -> Iterator[int]:
    """All degree ``d`` monomials in ``n`` variables, increasing as integers."""
    if d < 0 or d > n:
        return
    if d == 0:
        yield 0
        return
    m = (1 << d) - 1
    limit = 1 << n
    while m < limit:
        yield m
        # next bit pattern with the same popcount (Gosper's hack)
        c = m & -m
        r = m + c
        m = (((r ^ m) >> 2) // c) | r


def ambient_hilbert(n: int):
    """Hilbert series ``(1+t)^n`` of the exterior algebra on ``n`` variables."""
    from .series import HilbertSeries

    if n < 0:
        raise UsageError("variable count must be nonnegative")
    return HilbertSeries([comb(n, k) for k in range(n + 1)])


# ---------------------------------------------------------------------------
# elements


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_VARS:
        raise UsageError(f"ambient variable count must lie in 0..{MAX_VARS}, got {n}")


class ExtElement:
    """An element of the exterior algebra: a map from monomials to nonzero scalars.

    Instances are immutable.  Terms are kept sorted by monomial bits so that
    iteration order is deterministic.
    """

    __slots__ = ("n", "field", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[int, object] = (), field: Field = QQ):
        _check_n(n)
        self.n = n
        self.field = field
        limit = 1 << n
        clean: Dict[int, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            if m < 0 or m >= limit:
                raise UsageError(f"monomial {mono_str(m)} outside {n} variables")
            c = field.coerce(c)
            if c:
                prev = clean.get(m)
                if prev is not None:
                    c = field.reduce(prev + c)
                    if not c:
                        del clean[m]
                        continue
                clean[m] = c
        self._terms = {m: clean[m] for m in sorted(clean)}
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: Dict[int, object], field: Field) -> "ExtElement":
        # terms already reduced and nonzero
        obj = object.__new__(cls)
        obj.n = n
        obj.field = field
        obj._terms = {m: terms[m] for m in sorted(terms)}
        obj._hash = None
        return obj

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, n: int, field: Field = QQ) -> "ExtElement":
        return cls._raw(n, {}, field)

    @classmethod
    def one(cls, n: int, field: Field = QQ) -> "ExtElement":
        return cls(n, {0: 1}, field)

    @classmethod
    def var(cls, i: int, n: int, field: Field = QQ) -> "ExtElement":
        if not 1 <= i <= n:
            raise UsageError(f"variable e{i} outside 1..{n}")
        return cls(n, {1 << (i - 1): 1}, field)

    @classmethod
    def from_monomial(cls, m: int, n: int, coeff=1, field: Field = QQ) -> "ExtElement":
        return cls(n, {m: coeff}, field)

    # -- accessors -----------------------------------------------------------
    @property
    def terms(self) -> Dict[int, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> List[int]:
        return list(self._terms)

    def coefficient(self, m: int):
        return self._terms.get(m, self.field.coerce(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degrees(self) -> set:
        return {m.bit_count() for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        """Degree of a homogeneous element (-1 for zero)."""
        degs = self.degrees()
        if not degs:
            return -1
        if len(degs) > 1:
            raise UsageError("element is not homogeneous")
        return next(iter(degs))

    def homogeneous_part(self, d: int) -> "ExtElement":
        return ExtElement._raw(self.n, {m: c for m, c in self._terms.items() if m.bit_count() == d}, self.field)

    # -- arithmetic ------------------------------------------------------------
    def _compatible(self, other: "ExtElement") -> None:
        if not isinstance(other, ExtElement):
            raise TypeError(f"expected ExtElement, got {type(other).__name__}")
        if other.n != self.n:
            raise UsageError(f"ambient mismatch: {self.n} vs {other.n} variables")
        if other.field != self.field:
            raise UsageError(f"field mismatch: {self.field} vs {other.field}")

    def _lift(self, other) -> "ExtElement":
        if isinstance(other, ExtElement):
            self._compatible(other)
            return other
        if isinstance(other, (int, Fraction)):
            return ExtElement(self.n, {0: other}, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        red = self.field.reduce
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = red(out.get(m, 0) + c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return ExtElement._raw(self.n, out, self.field)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return ExtElement._raw(self.n, {m: neg(c) for m, c in self._terms.items()}, self.field)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "ExtElement":
        f = self.field
        c = f.coerce(c)
        if not c:
            return ExtElement.zero(self.n, f)
        return ExtElement._raw(self.n, {m: f.reduce(c * v) for m, v in self._terms.items()}, f)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, ExtElement):
            return NotImplemented
        return elem_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def mul_monomial_left(self, w: int, coeff=1) -> "ExtElement":
        """``coeff * w * self`` for a monomial ``w``."""
        f = self.field
        red = f.reduce
        out: Dict[int, object] = {}
        for m, c in self._terms.items():
            prod = mono_mul(w, m)
            if prod is None:
                continue
            s, wm = prod
            out[wm] = red(c * coeff * s)
        return ExtElement._raw(self.n, {m: c for m, c in out.items() if c}, f)

    # -- comparison ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, ExtElement):
            return self.n == other.n and self.field == other.field and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.field, tuple(self._terms.items())))
        return self._hash

    # -- conversions -----------------------------------------------------------
    def with_field(self, field: Field) -> "ExtElement":
        return ExtElement(self.n, {m: c for m, c in self._terms.items()}, field)

    def with_ambient(self, n: int) -> "ExtElement":
        return ExtElement(n, self._terms, self.field)

    def __repr__(self):
        return f"ExtElement({self.n}, {self})"

    def __str__(self):
        return format_element(self)


def _coeff_str(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def format_element(f: ExtElement) -> str:
    """Printable form, parseable back by :func:`extkoszul.parse.parse_element`.

    Terms appear by degree, then increasing variable indices.  Prime-field
    coefficients print in the symmetric range around zero.
    """
    if not f._terms:
        return "0"
    p = f.field.characteristic
    order = sorted(f._terms, key=lambda m: (m.bit_count(), variables(m)))
    parts: List[str] = []
    for m in order:
        c = f._terms[m]
        if p and c > p // 2:
            c = c - p
        neg = c < 0
        a = -c if neg else c
        if m == 0:
            body = _coeff_str(a)
        elif a == 1:
            body = mono_str(m)
        else:
            body = f"{_coeff_str(a)}*{mono_str(m)}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


def elem_mul(f: ExtElement, g: ExtElement) -> ExtElement:
    """Skew-commutative product ``f * g``."""
    f._compatible(g)
    field = f.field
    red = field.reduce
    out: Dict[int, object] = {}
    for u, a in f._terms.items():
        for v, b in g._terms.items():
            if u & v:
                continue
            s, w = mono_mul(u, v)
            c = a * b if s > 0 else -(a * b)
            out[w] = red(out.get(w, 0) + c)
    return ExtElement._raw(f.n, {m: c for m, c in out.items() if c}, field)


# ---------------------------------------------------------------------------
# linear forms and changes of coordinates


class LinearForm:
    """An element of the degree-one part, stored as a coefficient vector."""

    __slots__ = ("coefficients", "field")

    def __init__(self, coefficients: Sequence, field: Field = QQ):
        self.field = field
        self.coefficients = tuple(field.coerce(c) for c in coefficients)
        _check_n(len(self.coefficients))

    @property
    def n(self) -> int:
        return len(self.coefficients)

    @classmethod
    def from_element(cls, f: ExtElement) -> "LinearForm":
        if any(m.bit_count() != 1 for m in f.support()):
            raise UsageError("element is not a linear form")
        coeffs = [0] * f.n
        for m, c in f.items():
            coeffs[m.bit_length() - 1] = c
        return cls(coeffs, f.field)

    @classmethod
    def variable(cls, i: int, n: int, field: Field = QQ) -> "LinearForm":
        return cls.from_element(ExtElement.var(i, n, field))

    @classmethod
    def sum_of(cls, indices: Iterable[int], n: int, field: Field = QQ) -> "LinearForm":
        coeffs = [0] * n
        for i in indices:
            coeffs[i - 1] = 1
        return cls(coeffs, field)

    def to_element(self) -> ExtElement:
        return ExtElement(self.n, {1 << i: c for i, c in enumerate(self.coefficients) if c}, self.field)

    def support(self) -> List[int]:
        return [i + 1 for i, c in enumerate(self.coefficients) if c]

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __eq__(self, other):
        return isinstance(other, LinearForm) and self.coefficients == other.coefficients and self.field == other.field

    def __hash__(self):
        return hash((self.coefficients, self.field))

    def __repr__(self):
        return f"LinearForm({self.to_element()})"

    def __str__(self):
        return str(self.to_element())


class LinearChange:
    """An invertible substitution ``e_i -> sum_j M[i][j] e_j``.

    Row ``i`` of the matrix is the image of ``e_{i+1}``.  Applying ``C`` and
    then ``D`` is the change with matrix ``C.matrix @ D.matrix``.
    """

    __slots__ = ("matrix", "field", "_inverse")

    def __init__(self, matrix: Sequence[Sequence], field: Field = QQ):
        from . import linalg

        rows = [tuple(field.coerce(x) for x in row) for row in matrix]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise UsageError("linear change needs a square matrix")
        _check_n(n)
        self.matrix = tuple(rows)
        self.field = field
        inv = linalg.inverse(self.matrix, field)
        if inv is None:
            raise UsageError("linear change is not invertible")
        self._inverse = inv

    @property
    def n(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "LinearChange":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def from_images(cls, images: Sequence[LinearForm]) -> "LinearChange":
        """Change sending ``e_i`` to ``images[i-1]``."""
        field = images[0].field
        return cls([img.coefficients for img in images], field)

    @classmethod
    def from_new_coordinates(cls, forms: Sequence[LinearForm]) -> "LinearChange":
        """Change that rewrites elements in the coordinates ``f_i = forms[i-1]``.

        After substitution, the form ``forms[i-1]`` becomes the variable ``e_i``.
        """
        from . import linalg

        field = forms[0].field
        inv = linalg.inverse([f.coefficients for f in forms], field)
        if inv is None:
            raise UsageError("new coordinates are linearly dependent")
        return cls(inv, field)

    def image(self, i: int) -> LinearForm:
        return LinearForm(self.matrix[i - 1], self.field)

    def inverse(self) -> "LinearChange":
        return LinearChange(self._inverse, self.field)

    def then(self, other: "LinearChange") -> "LinearChange":
        """The change applying ``self`` first and ``other`` second."""
        from . import linalg

        return LinearChange(linalg.matmul(self.matrix, other.matrix, self.field), self.field)

    def __eq__(self, other):
        return isinstance(other, LinearChange) and self.matrix == other.matrix and self.field == other.field

    def __hash__(self):
        return hash((self.matrix, self.field))

    def __repr__(self):
        return f"LinearChange({[str(self.image(i)) for i in range(1, self.n + 1)]})"


def substitute(f: ExtElement, change: LinearChange) -> ExtElement:
    """Apply the algebra map extending ``e_i -> change.image(i)``."""
    if change.n != f.n:
        raise UsageError(f"change acts on {change.n} variables, element lives in {f.n}")
    field = f.field
    images = [ExtElement(f.n, {1 << j: c for j, c in enumerate(row) if c}, field) for row in change.matrix]
    cache: Dict[int, ExtElement] = {0: ExtElement.one(f.n, field)}

    def image_of(m: int) -> ExtElement:
        if m in cache:
            return cache[m]
        low = m & -m
        rest = image_of(m ^ low)
        res = elem_mul(images[low.bit_length() - 1], rest)
        cache[m] = res
        return res

    out = ExtElement.zero(f.n, field)
    for m, c in f.items():
        out = out + image_of(m).scale(c)
    return out
