"""Replay of the reference computations as a machine-readable report.

Each check returns expected and actual values; failures are report entries,
never exceptions.  ``corrupt`` names a check whose input is perturbed on
purpose, as a negative control for the harness itself.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional

from . import __version__
from .algebra import ExtElement, LinearForm, UsageError, elem_mul, substitute
from .catalog import named_ideal, thieu_change
from .depth import depth_probe, is_regular, path_witness, quotient_by_linear
from .field import GF, QQ
from .graphs import Graph, canonical_form, edge_ideal, independence_polynomial, path, preset, search_by_series
from .groebner import Ideal, buchberger, fixed_coordinate_quadratic_scan, hilbert_series, initial_ideal
from .hilbert import betti_over_E, euler_identity_check, froberg_inverse, koszul_betti_bounded
from .linalg import det
from .orders import degrevlex, stock_orders
from .parse import parse_ideal
from .quadrics import decompose, generic_quadrics, min_rank_sample, pfaffian, quadric_rank, rank2_in_pencil, rank_bound, to_alternating
from .quotient import QuotientAlgebra
from .series import HilbertSeries

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class Check:
    name: str
    paper_ref: str
    status: str
    expected: object
    actual: object
    runtime_ms: int = 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
            "runtime_ms": self.runtime_ms,
        }


@dataclass
class Report:
    session: dict
    checks: List[Check] = dc_field(default_factory=list)

    @property
    def exit_code(self) -> int:
        statuses = {c.status for c in self.checks}
        if FAIL in statuses:
            return 1
        if INCONCLUSIVE in statuses:
            return 2
        return 0

    def to_json(self, timings: bool = True) -> dict:
        checks = []
        for c in self.checks:
            d = c.to_json()
            if not timings:
                d["runtime_ms"] = 0
            checks.append(d)
        return {"session": self.session, "checks": checks}

    def lines(self) -> List[str]:
        return [f"{c.status.upper():<13}{c.name:<34}{c.runtime_ms:>8} ms  {c.paper_ref}" for c in self.checks]


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def _hs(h: HilbertSeries) -> List[int]:
    return h.to_json()


# -- individual checks ----------------------------------------------------------------------


def check_path_hilbert(seed: int, corrupt: bool):
    g = path(7)
    if corrupt:
        g = Graph(7, list(g.edges) + [(1, 7)])
    by_gb = hilbert_series(edge_ideal(g))
    by_count = independence_polynomial(g)
    want = [1, 7, 15, 10, 1]
    ok = _hs(by_gb) == want and _hs(by_count) == want
    return ok, want, {"standard_monomials": _hs(by_gb), "independent_sets": _hs(by_count)}


def check_path_quotient(seed: int, corrupt: bool):
    R = QuotientAlgebra(edge_ideal(path(7)))
    form = path_witness(7) if not corrupt else LinearForm.sum_of([1, 4], 7)
    cert = is_regular(form, R)
    want = {"regular": True, "hilbert": [1, 6, 9, 1], "generators_match": True}
    if not cert.regular:
        return False, want, {"regular": False, "witness": str(cert.witness)}
    q = quotient_by_linear(R, form, cert)
    target = named_ideal("path7-quotient")
    same = buchberger(q.algebra.ideal, degrevlex(6)).elements == buchberger(target, degrevlex(6)).elements
    actual = {
        "regular": True,
        "hilbert": _hs(q.algebra.hilbert_series()),
        "generators_match": same,
        "generators": [str(g) for g in q.generators],
    }
    ok = actual["hilbert"] == want["hilbert"] and same
    return ok, want, actual


def check_no_graph(seed: int, corrupt: bool):
    target = HilbertSeries([1, 6, 9, 1] if not corrupt else [1, 6, 9])
    found = search_by_series(6, 6, target)
    return not found, [], [c.graph.to_json() for c in found]


def check_three_classes(seed: int, corrupt: bool):
    base = HilbertSeries([1, 6, 9] if not corrupt else [1, 6, 8])
    found = search_by_series(range(6, 10), 6, lambda v: base.times_one_plus_t(v - 6), ignore_isolated=True)
    want = sorted(canonical_form(preset(p)) for p in ("triangle+triangle", "triangle+path:4", "path:4+path:4"))
    got = sorted(canonical_form(c.graph) for c in found)
    degrees_ok = all(c.graph.max_degree() <= 2 for c in found)
    ok = got == want and degrees_ok
    return ok, {"classes": 3, "max_degree": 2}, {
        "classes": len(found),
        "max_degree": max((c.graph.max_degree() for c in found), default=0),
        "graphs": [c.graph.to_json() for c in found],
    }


def check_path_depth(seed: int, corrupt: bool):
    rows = {}
    ok = True
    for n in range(2, 14):
        R = QuotientAlgebra(edge_ideal(path(n)))
        witnesses = [path_witness(n)] if n % 3 == 1 else []
        rep = depth_probe(R, trials=8, seed=seed + n, witnesses=witnesses)
        want = 1 if n % 3 == 1 else 0
        if corrupt:
            want = 1 - want
        if n % 3 == 1:
            good = rep.lower_bound == 1 and rep.sequence[:1] == [path_witness(n)]
        else:
            good = rep.probable_depth == 0 and rep.random_attempts == 8
        good = good and rep.probable_depth == want
        ok = ok and good
        rows[str(n)] = {
            "lower": rep.lower_bound,
            "upper": rep.upper_bound,
            "probable": rep.probable_depth,
            "monte_carlo": rep.monte_carlo and not rep.certified,
        }
    want = {str(n): (1 if n % 3 == 1 else 0) for n in range(2, 14)}
    return ok, want, rows


def check_thieu(seed: int, corrupt: bool):
    I = named_ideal("thieu") if not corrupt else named_ideal("principal") + parse_ideal("e1*e3", 4)
    scan = fixed_coordinate_quadratic_scan(I)
    C = thieu_change()
    J = Ideal(4, [substitute(g, C) for g in I.generators])
    gb = buchberger(J, degrevlex(4))
    monomials = [str(g) for g in gb.elements]
    disjoint = len(gb.elements) == 2 and all(len(g) == 1 for g in gb.elements)
    if disjoint:
        a, b = (g.support()[0] for g in gb.elements)
        disjoint = a & b == 0
    ok = scan.status == "certificate" and disjoint
    return ok, {"scan": "certificate", "changed_gb": ["e1*e2", "e3*e4"]}, {"scan": scan.status, "changed_gb": monomials}


def check_froberg(seed: int, corrupt: bool):
    h = HilbertSeries([1, 4, 5] if not corrupt else [1, 4, 6])
    ps = froberg_inverse(h, 6)
    got = [str(c) for c in ps.as_ints()]
    want = ["1", "4", "11", "24", "41", "44", "-29"]
    ok = got == want and ps.first_negative_index == 6
    return ok, {"coefficients": want, "first_negative": 6}, {"coefficients": got, "first_negative": ps.first_negative_index}


def check_generic(seed: int, corrupt: bool):
    I = generic_quadrics(6, 6 if not corrupt else 7, seed=seed)
    h = hilbert_series(I)
    sample = min_rank_sample(list(I.generators), 10_000, seed)
    rb = (rank_bound(6, 2, 6), rank_bound(6, 2, 7))
    ok = _hs(h) == [1, 6, 9] and sample.min_rank >= 4 and rb == (True, False)
    return ok, {"hilbert": [1, 6, 9], "min_rank_at_least": 4, "rank_bound": [True, False]}, {
        "hilbert": _hs(h),
        "min_rank": sample.min_rank,
        "rank_bound": list(rb),
        "monte_carlo": True,
        "samples": 10_000,
    }


def check_two_triangles(seed: int, corrupt: bool):
    I = named_ideal("two-triangles")
    if corrupt:
        I = Ideal(8, list(I.generators[:5]) + [I.generators[5] + I.generators[0]])
    gb = buchberger(I, degrevlex(8))
    same = sorted(str(g) for g in gb.elements) == sorted(str(g) for g in I.generators)
    init = initial_ideal(I, degrevlex(8))
    quadratic = all(m.bit_count() == 2 for m in init.minimal_generators)
    g = Graph(8, [tuple(i + 1 for i in range(8) if m >> i & 1) for m in init.minimal_generators]) if quadratic else None
    triangles = g is not None and g.is_isomorphic(preset("triangle+triangle").with_isolated(2))
    res = rank2_in_pencil(I.generators[0].with_ambient(4), I.generators[1].with_ambient(4))
    root = next((r for r in res.roots if r.kind == "rational" and r.value == 1), None)
    ok = same and triangles and root is not None and root.witness_rank == 2
    return ok, {"gb_is_generators": True, "initial_is_two_triangles": True, "lambda": "1", "witness_rank": 2}, {
        "gb_is_generators": same,
        "initial_is_two_triangles": triangles,
        "lambda": str(root.value) if root else None,
        "witness_rank": root.witness_rank if root else None,
    }


def check_claim_ideal(seed: int, corrupt: bool):
    I = named_ideal("claim-ideal")
    if corrupt:
        I = Ideal(7, list(I.generators[:5]))
    h = hilbert_series(I)
    other = HilbertSeries([1, 3]) * HilbertSeries([1, 3]) * HilbertSeries([1, 1])
    ok = _hs(h) == [1, 7, 15, 8] and h != other
    return ok, {"hilbert": [1, 7, 15, 8], "differs_from": _hs(other)}, {"hilbert": _hs(h)}


def check_betti_monotone(seed: int, corrupt: bool):
    out = {}
    ok = True
    for name, jmax in (("thieu", 7), ("two-triangles", 7)):
        I = named_ideal(name)
        a = betti_over_E(I, 3, jmax, GF())
        init = initial_ideal(I, degrevlex(I.n)).to_ideal()
        if corrupt:
            init = Ideal(I.n, list(init.generators)[1:])
        b = betti_over_E(init, 3, jmax, GF())
        good = a.dominated_by(b)
        ok = ok and good
        out[name] = {"ideal": a.to_json()["entries"], "initial": b.to_json()["entries"], "dominated": good}
    return ok, {"dominated": True}, out


def check_koszul(seed: int, corrupt: bool):
    out = {}
    ok = True
    for name in ("two-triangles", "path7-quotient"):
        I = named_ideal(name)
        if corrupt and name == "path7-quotient":
            I = named_ideal("principal")
        t = koszul_betti_bounded(I, 4, GF())
        out[name] = {"off_diagonal": [list(k) for k in t.off_diagonal], "diagonal": t.diagonal()}
        ok = ok and not t.off_diagonal
    P = named_ideal("principal")
    t = koszul_betti_bounded(P, 6, GF(), j_max=6)
    euler = euler_identity_check(t, HilbertSeries([1, 4, 5]), 6)
    off = [k for k in t.off_diagonal if k[1] <= 6]
    ok = ok and euler and bool(off)
    out["principal"] = {"euler_through_6": euler, "off_diagonal": [list(k) for k in off], "entries": t.to_json()["entries"]}
    return ok, {"two-triangles": [], "path7-quotient": [], "principal": {"euler_through_6": True, "off_diagonal_nonempty": True}}, out


# -- seeded property loops --------------------------------------------------------------------


def _rand_element(rng: random.Random, n: int, field=QQ, homogeneous: Optional[int] = None) -> ExtElement:
    terms = {}
    for _ in range(rng.randint(1, 5)):
        if homogeneous is None:
            m = rng.randrange(1 << n)
        else:
            m = sum(1 << i for i in rng.sample(range(n), homogeneous))
        terms[m] = rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5])
    return ExtElement(n, terms, field)


def _rand_quadric_ideal(rng: random.Random, n: int) -> Ideal:
    if rng.random() < 0.4:
        pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
        gens = [ExtElement(n, {(1 << a) | (1 << b): 1}) for a, b in rng.sample(pairs, rng.randint(1, min(3, len(pairs))))]
    else:
        gens = [_rand_element(rng, n, homogeneous=2) for _ in range(rng.randint(1, 2))]
    return Ideal(n, gens)


def _rand_form(rng: random.Random, n: int) -> LinearForm:
    while True:
        c = [rng.choice([0, 0, 1, -1, 2]) for _ in range(n)]
        if any(c):
            return LinearForm(c)


def _extend(I: Ideal, kill: bool) -> Ideal:
    n = I.n + 1
    gens = [g.with_ambient(n) for g in I.generators]
    if kill:
        gens.append(ExtElement.var(n, n))
    return Ideal(n, gens)


def _regular_or_false(form: LinearForm, R: QuotientAlgebra) -> bool:
    return False if form.is_zero() else is_regular(form, R).regular


PROPERTIES: Dict[str, Callable[[random.Random], bool]] = {}


def _prop(name):
    def wrap(fn):
        PROPERTIES[name] = fn
        return fn

    return wrap


@_prop("associativity")
def _p_assoc(rng):
    n = rng.randint(1, 8)
    f, g, h = (_rand_element(rng, n) for _ in range(3))
    return (f * g) * h == f * (g * h)


@_prop("skew-commutativity")
def _p_skew(rng):
    n = rng.randint(2, 8)
    a, b = rng.randint(0, n), rng.randint(0, n)
    f, g = _rand_element(rng, n, homogeneous=a), _rand_element(rng, n, homogeneous=b)
    return f * g == (g * f).scale((-1) ** (a * b))


@_prop("square-zero")
def _p_square(rng):
    n = rng.randint(1, 8)
    l = LinearForm([rng.randint(-9, 9) for _ in range(n)]).to_element()
    return not elem_mul(l, l)


@_prop("gb-idempotence")
def _p_gb(rng):
    n = rng.randint(2, 5)
    I = _rand_quadric_ideal(rng, n)
    order = rng.choice(list(stock_orders(n)))
    G = buchberger(I, order)
    return buchberger(G.ideal(), order).elements == G.elements


@_prop("hilbert-order-invariance")
def _p_hf(rng):
    n = rng.randint(2, 5)
    I = _rand_quadric_ideal(rng, n)
    orders = list(stock_orders(n))
    a, b = rng.sample(orders, 2)
    return hilbert_series(I, a) == hilbert_series(I, b)


@_prop("extend-variable-regularity")
def _p_extend(rng):
    n = rng.randint(2, 5)
    I = _rand_quadric_ideal(rng, n)
    form = _rand_form(rng, n)
    alpha = rng.choice([0, 1, -2])
    R = QuotientAlgebra(I)
    R2 = QuotientAlgebra(_extend(I, False))
    lifted = LinearForm(list(form.coefficients) + [alpha])
    return is_regular(lifted, R2).regular == (alpha != 0 or _regular_or_false(form, R))


@_prop("kill-variable-regularity")
def _p_kill(rng):
    n = rng.randint(2, 5)
    I = _rand_quadric_ideal(rng, n)
    form = _rand_form(rng, n)
    alpha = rng.choice([0, 1, 3])
    R = QuotientAlgebra(I)
    R2 = QuotientAlgebra(_extend(I, True))
    lifted = LinearForm(list(form.coefficients) + [alpha])
    return is_regular(lifted, R2).regular == _regular_or_false(form, R)


@_prop("pfaffian-squared-is-determinant")
def _p_pf(rng):
    n = rng.choice([2, 4, 6])
    q = _rand_element(rng, n, homogeneous=2)
    A = to_alternating(q)
    return pfaffian(A) ** 2 == det(A.rows, QQ)


@_prop("rank-parity")
def _p_parity(rng):
    n = rng.randint(2, 8)
    return quadric_rank(_rand_element(rng, n, homogeneous=2)) % 2 == 0


@_prop("decomposition-round-trip")
def _p_decomp(rng):
    n = rng.randint(2, 8)
    q = _rand_element(rng, n, homogeneous=2)
    d = decompose(q)
    return d.recompose() == q and d.rank == quadric_rank(q)


def run_properties(seed: int, instances: int = 500) -> Dict[str, int]:
    """Failures per property over ``instances`` seeded cases each."""
    out = {}
    for name, fn in PROPERTIES.items():
        rng = random.Random(f"{seed}:{name}")
        out[name] = sum(0 if fn(rng) else 1 for _ in range(instances))
    return out


def check_properties(seed: int, corrupt: bool):
    failures = run_properties(seed)
    if corrupt:
        failures["associativity"] += 1
    return all(v == 0 for v in failures.values()), {k: 0 for k in failures}, failures


CHECKS = [
    ("path7-hilbert", "Hilbert series of the 7-vertex path quotient, two ways", check_path_hilbert),
    ("path7-regular-quotient", "e1+e4+e7 is regular; quotient presentation and its Hilbert series", check_path_quotient),
    ("no-graph-with-series", "no 6-vertex 6-edge graph has independence polynomial 1+6t+9t^2+t^3", check_no_graph),
    ("three-graph-classes", "graphs with series (1+3t)^2(1+t)^(v-6), isolated vertices ignored", check_three_classes),
    ("path-depth-sweep", "depth of path quotients is 1 iff n = 1 mod 3", check_path_depth),
    ("thieu-scan-and-change", "no quadratic GB in given coordinates; monomial after a change", check_thieu),
    ("principal-froberg", "1/HS(-t) for 1+4t+5t^2 turns negative at degree 6", check_froberg),
    ("generic-quadrics", "six generic quadrics in six variables: series, min rank, rank bound", check_generic),
    ("two-triangle-gb-pencil", "two-triangle ideal is its own GB and contains a rank-2 quadric", check_two_triangles),
    ("claim-ideal-hilbert", "Hilbert series 1+7t+15t^2+8t^3 of the eight-generator claim ideal", check_claim_ideal),
    ("betti-initial-monotonicity", "Betti numbers grow when passing to the initial ideal", check_betti_monotone),
    ("bounded-koszul", "bounded Koszul tests and the Euler identity for the principal quadric", check_koszul),
    ("property-suites", "seeded algebraic property suites, 500 instances each", check_properties),
]


def verify_paper(seed: int = 0, corrupt: Optional[str] = None, only: Optional[List[str]] = None) -> Report:
    """Run every reference check and collect a :class:`Report`."""
    names = [c[0] for c in CHECKS]
    if corrupt is not None and corrupt not in names:
        raise UsageError(f"unknown check {corrupt!r}; choose from {', '.join(names)}")
    report = Report({"seed": seed, "field": QQ.spec(), "betti_field": GF().spec(), "version": __version__, "corrupt": corrupt})
    for name, ref, fn in CHECKS:
        if only and name not in only:
            continue
        t0 = time.perf_counter()
        try:
            ok, expected, actual = fn(seed, corrupt == name)
            status = _status(ok)
        except Exception as exc:  # noqa: BLE001 - failures are report entries
            status, expected, actual = FAIL, None, {"error": f"{type(exc).__name__}: {exc}"}
        ms = int((time.perf_counter() - t0) * 1000)
        report.checks.append(Check(name, ref, status, expected, actual, ms))
    return report
