"""Regular linear forms, regular sequences and depth of quotients ``E/I``.

A linear form ``l`` is regular on ``R`` when ``{m : l*m = 0} = l*R``.  Since
``l*l = 0`` the image always sits inside the kernel, so regularity is the rank
identity ``rank_d + rank_{d-1} = dim R_d`` for every degree ``d``, where
``rank_d`` is the rank of multiplication by ``l`` from ``R_d`` to ``R_{d+1}``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence, Tuple

from .algebra import ExtElement, LinearChange, LinearForm, UsageError, substitute
from .field import GF, QQ, Field
from .graphs import search_by_series, GraphClass
from .groebner import Ideal
from .linalg import left_kernel, rank
from .quotient import QuotientAlgebra
from .series import HilbertSeries

COEFFICIENT_BOUND = 100
DEFAULT_TRIALS = 8
DEFAULT_SEED = 20240917
# fast rank screening prime; a rank identity seen mod p also holds over Q
_SCREEN = GF(2_147_483_647)


@dataclass
class RegularityCertificate:
    form: LinearForm
    regular: bool
    witness: Optional[ExtElement] = None
    degree: Optional[int] = None
    ranks: Tuple[int, ...] = ()

    @property
    def verdict(self) -> str:
        return "regular" if self.regular else "singular"

    def to_json(self) -> dict:
        out = {"form": str(self.form), "verdict": self.verdict, "ranks": list(self.ranks)}
        if self.witness is not None:
            out["witness"] = str(self.witness)
            out["witness_degree"] = self.degree
        return out


def _screen_rows(rows, field: Field):
    """Rows reduced mod the screening prime, or ``None`` if a denominator vanishes there."""
    if not field.is_rational:
        return None
    p = _SCREEN.characteristic
    out = []
    for r in rows:
        row = {}
        for c, v in r.items():
            num, den = v.numerator, v.denominator
            if den % p == 0:
                return None
            x = num * pow(den, -1, p) % p
            if x:
                row[c] = x
        out.append(row)
    return out


def _rank(rows, ncols: int, field: Field, fast: bool) -> int:
    if fast:
        screened = _screen_rows(rows, field)
        if screened is not None:
            return rank(screened, ncols, _SCREEN)
    return rank(rows, ncols, field)


def _multiplication(R: QuotientAlgebra, form: LinearForm, top: int, order=None):
    mats = []
    for d in range(top + 1):
        src = order[d] if order is not None else None
        mats.append(R.multiplication_rows(form, d, src))
    return mats


def _witness(R: QuotientAlgebra, mats, d: int) -> ExtElement:
    rows, src, tgt = mats[d]
    field = R.field
    dim = len(src)
    kernel = left_kernel(rows, len(tgt), field)
    # rows of degree d-1 are written over the degree-d basis, the kernel's coordinates
    image = list(mats[d - 1][0]) if d > 0 else []
    base = rank(image, dim, field) if image else 0
    for vec in kernel:
        if (rank(image + [vec], dim, field) if image else 1) > base:
            return R.element({src[k]: c for k, c in vec.items()})
    raise AssertionError("no kernel element outside the image although ranks disagree")


def is_regular(form: LinearForm, R: QuotientAlgebra, fast: bool = True, recheck: bool = True) -> RegularityCertificate:
    """Decide regularity of ``form`` on ``R`` by exact ranks.

    With ``fast`` ranks are first computed modulo a large prime; that is only
    trusted for a regular verdict, which it certifies because ranks cannot
    grow under reduction and the rational ranks are already bounded by the
    identity.  Singular verdicts are recomputed over the algebra's field and
    come with a witness ``m`` satisfying ``l*m = 0`` and ``m`` outside ``l*R``.
    """
    if form.is_zero():
        raise UsageError("the zero form is never tested for regularity")
    top = R.top_degree
    field = R.field
    mats = _multiplication(R, form, top)
    ranks = [_rank(rows, len(tgt), field, fast) for rows, _, tgt in mats]
    bad = next((d for d in range(top + 1) if ranks[d] + (ranks[d - 1] if d else 0) != len(mats[d][1])), None)
    if bad is None:
        cert = RegularityCertificate(form, True, ranks=tuple(ranks))
        if recheck:
            _recheck_shuffled(R, form, cert)
        return cert
    # exact confirmation in the failing degree and its predecessor
    exact = [rank(mats[d][0], len(mats[d][2]), field) for d in range(top + 1)]
    bad = next((d for d in range(top + 1) if exact[d] + (exact[d - 1] if d else 0) != len(mats[d][1])), None)
    if bad is None:
        return RegularityCertificate(form, True, ranks=tuple(exact))
    w = _witness(R, mats, bad)
    cert = RegularityCertificate(form, False, w, bad, tuple(exact))
    if recheck:
        _check_witness(R, form, cert)
    return cert


def _recheck_shuffled(R: QuotientAlgebra, form: LinearForm, cert: RegularityCertificate) -> None:
    rng = random.Random(hash(form.coefficients) & 0xFFFF)
    order = []
    for d in range(R.top_degree + 1):
        idx = list(R.degree_indices(d))
        rng.shuffle(idx)
        order.append(idx)
    mats = _multiplication(R, form, R.top_degree, order)
    ranks = []
    for rows, src, tgt in mats:
        perm = list(range(len(tgt)))
        rng.shuffle(perm)
        ranks.append(_rank([{perm[c]: v for c, v in r.items()} for r in rows], len(tgt), R.field, True))
    if tuple(ranks) != cert.ranks:
        raise AssertionError(f"rank recheck disagrees: {ranks} vs {list(cert.ranks)}")


def _check_witness(R: QuotientAlgebra, form: LinearForm, cert: RegularityCertificate) -> None:
    w = cert.witness
    if R.reduce(form.to_element().with_field(R.field) * w):
        raise AssertionError("witness is not annihilated by the form")
    if in_image(R, form, w):
        raise AssertionError("witness lies in the image of the form")


def in_image(R: QuotientAlgebra, form: LinearForm, m: ExtElement) -> bool:
    """Whether ``m`` (homogeneous) lies in ``form * R``."""
    vec = R.vector(m)
    if not vec:
        return True
    d = R.basis[next(iter(vec))].bit_count()
    if d == 0:
        return False
    rows, src, tgt = R.multiplication_rows(form, d - 1)
    pos = {g: k for k, g in enumerate(tgt)}
    target = {pos[k]: c for k, c in vec.items()}
    base = rank(rows, len(tgt), R.field) if rows else 0
    return rank(list(rows) + [target], len(tgt), R.field) == base


@dataclass
class SequenceResult:
    regular: bool
    failing_index: Optional[int]
    certificates: List[RegularityCertificate]

    def __bool__(self):
        return self.regular


def is_regular_sequence(forms: Sequence[LinearForm], R: QuotientAlgebra) -> SequenceResult:
    """Test ``forms`` one by one on the successive quotients; indices are 1-based."""
    certs: List[RegularityCertificate] = []
    cur = R
    for i, form in enumerate(forms, start=1):
        cert = is_regular(form, cur)
        certs.append(cert)
        if not cert.regular:
            return SequenceResult(False, i, certs)
        cur = cur.quotient_by([form])
    return SequenceResult(True, None, certs)


@dataclass
class DepthReport:
    lower_bound: int
    upper_bound: int
    probable_depth: int
    sequence: List[LinearForm]
    monte_carlo: bool
    trials: int
    seed: int
    random_attempts: int = 0
    notes: List[str] = dc_field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.lower_bound == self.upper_bound

    def to_json(self) -> dict:
        return {
            "certified_lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "probable_depth": self.probable_depth,
            "certified": self.certified,
            "monte_carlo": self.monte_carlo and not self.certified,
            "sequence": [str(f) for f in self.sequence],
            "trials": self.trials,
            "seed": self.seed,
            "random_attempts": self.random_attempts,
            "notes": list(self.notes),
        }


def random_form(n: int, rng: random.Random, bound: int = COEFFICIENT_BOUND, field: Field = QQ) -> LinearForm:
    while True:
        coeffs = [rng.randint(-bound, bound) for _ in range(n)]
        if any(coeffs):
            return LinearForm(coeffs, field)


def depth_probe(
    R: QuotientAlgebra,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    witnesses: Sequence[LinearForm] = (),
) -> DepthReport:
    """Greedy regular sequence: given witnesses first, then random forms.

    The sequence stops after ``trials`` consecutive random failures.  The
    lower bound is certified.  The upper bound is the multiplicity of ``1+t``
    in the Hilbert series, since each regular form splits off one such
    factor.  When the bounds differ, ``probable_depth`` rests on the random
    failures and is flagged Monte-Carlo.
    """
    if not R.field.is_rational:
        raise UsageError("depth probing needs the rationals (an infinite field)")
    rng = random.Random(seed)
    upper = R.hilbert_series().one_plus_t_multiplicity()
    seq: List[LinearForm] = []
    cur = R
    pending = list(witnesses)
    monte_carlo = False
    attempts = 0
    while True:
        found = None
        while pending:
            w = pending.pop(0)
            if is_regular(w, cur).regular:
                found = w
                break
        if found is None:
            for _ in range(trials):
                attempts += 1
                f = random_form(R.n, rng)
                if is_regular(f, cur).regular:
                    found = f
                    break
        if found is None:
            monte_carlo = True
            break
        seq.append(found)
        if len(seq) > upper:
            raise AssertionError("regular sequence longer than the (1+t) multiplicity of HS")
        cur = cur.quotient_by([found])
    return DepthReport(len(seq), upper, len(seq), seq, monte_carlo, trials, seed, attempts)


def path_witness(n: int) -> LinearForm:
    """``e_1 + e_4 + e_7 + ...`` on ``n`` variables."""
    return LinearForm.sum_of(range(1, n + 1, 3), n)


# -- quotients by a regular form --------------------------------------------------------


@dataclass
class LinearQuotient:
    algebra: QuotientAlgebra
    change: LinearChange
    eliminated: int
    generators: List[ExtElement]


def _eliminate(ideal: Ideal, form: LinearForm) -> LinearQuotient:
    if form.is_zero():
        raise UsageError("cannot eliminate with the zero form")
    n = ideal.n
    field = ideal.field
    form = LinearForm(form.coefficients, field)
    k = form.support()[-1]
    coords = [LinearForm.variable(i, n, field) if i != k else form for i in range(1, n + 1)]
    change = LinearChange.from_new_coordinates(coords)
    gens = []
    for g in ideal.generators:
        h = substitute(g, change)
        kept = {}
        for m, c in h.items():
            if m >> (k - 1) & 1:
                continue
            low = m & ((1 << (k - 1)) - 1)
            kept[low | (m >> k) << (k - 1)] = c
        img = ExtElement(n - 1, kept, field)
        if img:
            gens.append(img)
    I = Ideal(n - 1, gens, field)
    return LinearQuotient(QuotientAlgebra(I), change, k, gens)


def quotient_by_linear(R: QuotientAlgebra, form: LinearForm, certificate: Optional[RegularityCertificate] = None) -> LinearQuotient:
    """Present ``R/(form)`` over ``n-1`` variables by eliminating the last variable of ``form``.

    The form must be certified regular; pass a certificate or let one be
    computed.  The Hilbert series of the result is ``HS_R/(1+t)``.
    """
    if certificate is None:
        certificate = is_regular(form, R)
    if certificate.form.coefficients != LinearForm(form.coefficients, certificate.form.field).coefficients:
        raise UsageError("certificate belongs to a different form")
    if not certificate.regular:
        raise UsageError(f"{form} is not regular; use quotient_by_linear_unsafe to quotient anyway")
    out = _eliminate(R.ideal, form)
    expected = R.hilbert_series().divide_one_plus_t()
    if out.algebra.hilbert_series() != expected:
        raise AssertionError("quotient by a regular form lost the (1+t) factor")
    return out


def quotient_by_linear_unsafe(R: QuotientAlgebra, form: LinearForm) -> LinearQuotient:
    """Eliminate without checking regularity."""
    return _eliminate(R.ideal, form)


# -- obstruction search -------------------------------------------------------------------


@dataclass
class ObstructionStep:
    extra: int
    target: HilbertSeries
    vertices: int
    edges: int
    candidates: List[GraphClass]

    @property
    def verdict(self) -> str:
        if self.candidates:
            return "inconclusive"
        return "not G-quadratic" if self.extra == 0 else "obstructed"

    def to_json(self) -> dict:
        return {
            "extra": self.extra,
            "target": self.target.to_json(),
            "vertices": self.vertices,
            "edges": self.edges,
            "verdict": self.verdict,
            "candidates": [c.to_json() for c in self.candidates],
        }


def lg_obstruction_search(h: HilbertSeries, max_extra: int) -> List[ObstructionStep]:
    """Quadratic monomial ideals with Hilbert series ``h*(1+t)^d``, ``d = 0..max_extra``.

    Quadratic monomials in ``E`` are squarefree, so such ideals are edge
    ideals and the Hilbert series is an independence polynomial.  The vertex
    count is ``h_1 + d`` and the edge count ``C(h_1, 2) - h_2`` for every ``d``.
    An empty step ``d = 0`` rules out a quadratic monomial initial ideal in
    any coordinates.
    """
    if h[0] != 1:
        raise UsageError("Hilbert series must start with 1")
    n = h[1]
    e = n * (n - 1) // 2 - h[2]
    if e < 0:
        raise UsageError("degree-2 coefficient exceeds the number of quadratic monomials")
    steps = []
    for d in range(max_extra + 1):
        target = h.times_one_plus_t(d)
        found = search_by_series(n + d, e, target)
        steps.append(ObstructionStep(d, target, n + d, e, found))
    return steps
