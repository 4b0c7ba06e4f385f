"""Command-line front end.

Exit status: 0 pass, 1 fail, 2 inconclusive, 64 usage error.  Results go to
standard output; ``--json PATH`` writes a report with the session and one or
more checks.  Warnings go to standard error.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from typing import List, Optional, Sequence

from . import __version__
from .algebra import UsageError, format_element
from .catalog import named_ideal, names
from .depth import DEFAULT_SEED, depth_probe, is_regular, lg_obstruction_search, quotient_by_linear, quotient_by_linear_unsafe
from .field import QQ, Field, GF
from .graphs import edge_ideal, independence_polynomial, parse_graph_text, preset, search_by_series
from .groebner import Ideal, buchberger, fixed_coordinate_quadratic_scan, hilbert_series, initial_ideal
from .hilbert import betti_over_E, euler_identity_check, froberg_inverse, koszul_betti_bounded
from .orders import MonomialOrder
from .parse import parse_element, parse_ideal, parse_linear_form
from .quadrics import decompose, generic_quadrics, min_rank_sample, quadric_rank, rank2_in_pencil, rank_bound
from .quotient import QuotientAlgebra
from .series import HilbertSeries, format_poly
from .suite import CHECKS, FAIL, INCONCLUSIVE, PASS, Check, Report, verify_paper

EXIT = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}
USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(USAGE)


class Outcome:
    """What a command hands back: text lines and one or more checks."""

    def __init__(self, lines: List[str], checks: List[Check]):
        self.lines = lines
        self.checks = checks


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("EXTKOSZUL_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"EXTKOSZUL_SEED={env!r} is not an integer") from None
    return DEFAULT_SEED


def _field(args, default: Field = QQ) -> Field:
    return Field.parse(args.field) if args.field else default


def _looks_like_elements(text: str) -> bool:
    return re.search(r"e\d", text) is not None


def _ideal(args, field: Field) -> Ideal:
    sources = [x for x in (args.ideal, args.graph, args.graph_file) if x]
    if len(sources) != 1:
        raise UsageError("give exactly one of --ideal, --graph, --graph-file")
    if args.graph:
        I = edge_ideal(preset(args.graph), field)
    elif args.graph_file:
        with open(args.graph_file, encoding="utf-8") as fh:
            I = edge_ideal(parse_graph_text(fh.read()), field)
    elif _looks_like_elements(args.ideal):
        I = parse_ideal(args.ideal, args.n, field)
    else:
        I = named_ideal(args.ideal, field)
    if args.n is not None and args.n != I.n:
        if args.n < I.n:
            raise UsageError(f"--n {args.n} is smaller than the {I.n} variables in use")
        I = Ideal(args.n, [g.with_ambient(args.n) for g in I.generators], field)
    return I


def _order(args, n: int) -> MonomialOrder:
    return MonomialOrder.parse(args.order, n) if args.order else MonomialOrder("degrevlex", n)


def _check(name: str, status: str, expected, actual, ref: str = "") -> Check:
    return Check(name, ref or name, status, expected, actual)


def _hs_arg(text: str) -> HilbertSeries:
    try:
        return HilbertSeries.parse(text)
    except ValueError:
        raise UsageError(f"bad Hilbert series {text!r}; expected comma-separated integers") from None


# -- commands ---------------------------------------------------------------------------------


def cmd_gb(args) -> Outcome:
    I = _ideal(args, _field(args))
    order = _order(args, I.n)
    G = buchberger(I, order)
    lines = [f"reduced Groebner basis ({order.spec()}), {len(G.elements)} elements:"]
    lines += [f"  {format_element(g)}" for g in G.elements]
    return Outcome(lines, [_check("gb", PASS, None, [str(g) for g in G.elements])])


def cmd_initial(args) -> Outcome:
    I = _ideal(args, _field(args))
    order = _order(args, I.n)
    M = initial_ideal(I, order)
    h = M.hilbert_series()
    lines = [f"initial ideal ({order.spec()}): {M}", f"Hilbert series: {h}"]
    return Outcome(lines, [_check("initial", PASS, None, {"initial": str(M), "hilbert": h.to_json()})])


def cmd_scan(args) -> Outcome:
    I = _ideal(args, _field(args))
    scan = fixed_coordinate_quadratic_scan(I)
    if scan.status == "certificate":
        lines = ["certificate: no quadratic Groebner basis in the given coordinates",
                 f"  {scan.examined} candidate leading sets examined, none matches {scan.target}"]
        status = FAIL
    elif scan.status == "inconclusive":
        lines = [f"{len(scan.candidates)} candidate leading sets match the Hilbert series; inconclusive"]
        lines += ["  (" + ", ".join(str(m) for m in c) + ")" for c in scan.candidates[:20]]
        status = INCONCLUSIVE
    else:
        lines = [f"scan {scan.status}"]
        status = INCONCLUSIVE
    actual = {"status": scan.status, "examined": scan.examined, "candidates": len(scan.candidates)}
    return Outcome(lines, [_check("scan-quadratic", status, None, actual)])


def cmd_hilbert(args) -> Outcome:
    I = _ideal(args, _field(args))
    h = hilbert_series(I, _order(args, I.n))
    lines = [str(h)]
    actual = {"hilbert": h.to_json()}
    if args.graph or args.graph_file:
        g = preset(args.graph) if args.graph else parse_graph_text(open(args.graph_file, encoding="utf-8").read())
        ind = independence_polynomial(g)
        actual["independent_sets"] = ind.to_json()
        if ind != h:
            lines.append(f"MISMATCH with independent-set count {ind}")
            return Outcome(lines, [_check("hilbert", FAIL, None, actual)])
    status = PASS
    expected = None
    if args.expect:
        expected = _hs_arg(args.expect).to_json()
        status = PASS if expected == h.to_json() else FAIL
    return Outcome(lines, [_check("hilbert", status, expected, actual)])


def cmd_froberg(args) -> Outcome:
    h = _hs_arg(args.hs)
    ps = froberg_inverse(h, args.N)
    coeffs = ps.as_ints()
    lines = [f"1/HS(-t) through degree {args.N}: " + ", ".join(str(c) for c in coeffs)]
    if ps.first_negative_index is not None:
        k = ps.first_negative_index
        lines.append(f"first negative coefficient {coeffs[k]} at degree {k}: NOT Koszul")
        status = FAIL
    else:
        lines.append("no negative coefficient: the necessary condition holds (no proof of Koszulness)")
        status = INCONCLUSIVE
    return Outcome(lines, [_check("froberg", status, None, {"coefficients": [str(c) for c in coeffs], "first_negative": ps.first_negative_index})])


def cmd_betti(args) -> Outcome:
    if args.imax is None or args.jmax is None:
        raise UsageError("betti needs explicit --imax and --jmax")
    field = _field(args, GF())
    I = _ideal(args, field)
    t = betti_over_E(I, args.imax, args.jmax, field)
    lines = [f"Betti numbers of E/I over E, i <= {args.imax}, j <= {args.jmax} ({field.spec()}):", t.render()]
    lines += [f"note: {n}" for n in t.notes]
    return Outcome(lines, [_check("betti", PASS, None, t.to_json())])


def cmd_koszul(args) -> Outcome:
    if args.imax is None:
        raise UsageError("koszul-test needs --imax")
    field = _field(args, GF())
    I = _ideal(args, field)
    t = koszul_betti_bounded(I, args.imax, field, args.jmax)
    lines = [f"Betti numbers of K over E/I, i <= {args.imax}, j <= {t.j_max} ({field.spec()}):", t.render()]
    lines += [f"note: {n}" for n in t.notes]
    actual = t.to_json()
    if args.euler is not None:
        h = hilbert_series(I)
        ok = euler_identity_check(t, h, args.euler)
        actual["euler"] = ok
        lines.append(f"Euler identity through degree {args.euler}: {'holds' if ok else 'FAILS'}")
    if t.off_diagonal:
        lines.append(f"off-diagonal entries {t.off_diagonal}: NOT Koszul")
        status = FAIL
    else:
        lines.append(f"no off-diagonal entries through i = {args.imax} (bounded evidence, not a proof)")
        status = INCONCLUSIVE
    if actual.get("euler") is False:
        status = FAIL
    return Outcome(lines, [_check("koszul-test", status, None, actual)])


def _graph_target(args):
    h = _hs_arg(args.target)
    if args.pad_from is None:
        return h
    return lambda v: h.times_one_plus_t(v - args.pad_from) if v >= args.pad_from else HilbertSeries([])


def _vertex_range(text: str) -> List[int]:
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text.strip())
    if not m:
        raise UsageError(f"bad vertex range {text!r}; use 6 or 6..9")
    lo = int(m.group(1))
    hi = int(m.group(2) or lo)
    return list(range(lo, hi + 1))


def cmd_graphs_search(args) -> Outcome:
    found = search_by_series(_vertex_range(args.v), args.e, _graph_target(args), ignore_isolated=args.ignore_isolated)
    lines = [f"{len(found)} isomorphism class(es)"]
    for c in found:
        lines.append(f"  edges {c.graph.sorted_edges()} on {c.graph.v} vertices; seen with v = {list(c.vertex_counts)}; {c.labelled_hits} labelled hits")
    status = PASS if found else FAIL
    return Outcome(lines, [_check("graphs-search", status, None, [c.to_json() for c in found])])


def _algebra(args) -> QuotientAlgebra:
    field = _field(args)
    I = _ideal(args, field)
    return QuotientAlgebra(I, _order(args, I.n))


def cmd_regular(args) -> Outcome:
    R = _algebra(args)
    form = parse_linear_form(args.form, R.n, R.field)
    cert = is_regular(form, R)
    lines = [f"{form} is {cert.verdict} on E/I"]
    if cert.witness is not None:
        lines.append(f"  witness in degree {cert.degree}: {cert.witness} (killed by the form, not in its image)")
    return Outcome(lines, [_check("regular", PASS if cert.regular else FAIL, None, cert.to_json())])


def cmd_depth(args) -> Outcome:
    R = _algebra(args)
    witnesses = [parse_linear_form(w, R.n, R.field) for w in (args.witness or [])]
    rep = depth_probe(R, args.trials if args.trials is not None else 8, _seed(args), witnesses)
    lines = [
        f"certified lower bound {rep.lower_bound}, upper bound {rep.upper_bound} from (1+t)-divisibility",
        f"depth {'= ' + str(rep.lower_bound) + ' (certified)' if rep.certified else '~ ' + str(rep.probable_depth) + ' (Monte-Carlo)'}",
    ]
    lines += [f"  regular: {f}" for f in rep.sequence]
    status = PASS if rep.certified else INCONCLUSIVE
    return Outcome(lines, [_check("depth", status, None, rep.to_json())])


def cmd_quotient(args) -> Outcome:
    R = _algebra(args)
    form = parse_linear_form(args.form, R.n, R.field)
    if args.unsafe:
        q = quotient_by_linear_unsafe(R, form)
    else:
        cert = is_regular(form, R)
        if not cert.regular:
            lines = [f"{form} is singular (witness {cert.witness}); refusing. Use --unsafe to quotient anyway."]
            return Outcome(lines, [_check("quotient", FAIL, None, cert.to_json())])
        q = quotient_by_linear(R, form, cert)
    h = q.algebra.hilbert_series()
    lines = [f"eliminated e{q.eliminated}; presentation in {q.algebra.n} variables:"]
    lines += [f"  {format_element(g)}" for g in q.generators]
    lines.append(f"Hilbert series: {h}")
    return Outcome(lines, [_check("quotient", PASS, None, {"generators": [str(g) for g in q.generators], "hilbert": h.to_json()})])


def cmd_lg_search(args) -> Outcome:
    steps = lg_obstruction_search(_hs_arg(args.hs), args.max_extra)
    lines = []
    for s in steps:
        lines.append(f"d = {s.extra}: target {s.target}, {s.vertices} vertices, {s.edges} edges -> {s.verdict} ({len(s.candidates)} candidate classes)")
    status = INCONCLUSIVE if any(s.candidates for s in steps) else PASS
    return Outcome(lines, [_check("lg-search", status, None, [s.to_json() for s in steps])])


def cmd_rank(args) -> Outcome:
    field = _field(args)
    q = parse_element(args.element, args.n, field)
    r = quadric_rank(q)
    d = decompose(q, _order(args, q.n))
    lines = [f"rank {r}", f"decomposition: {d}"]
    return Outcome(lines, [_check("rank", PASS, None, {"rank": r, "factors": len(d.factors)})])


def cmd_pencil(args) -> Outcome:
    q1 = parse_element(args.q1, 4)
    q2 = parse_element(args.q2, 4)
    res = rank2_in_pencil(q1, q2)
    lines = [f"Pf(A1 + x*A2) = {format_poly(res.pfaffian, 'x')}"]
    for r in res.roots:
        if r.kind == "rational":
            lines.append(f"  lambda = {r.value}: rank {r.witness_rank} member {r.witness}")
        elif r.kind == "infinity":
            lines.append(f"  lambda = infinity: q2 has rank {r.witness_rank}")
        else:
            lines.append(f"  {r.kind} roots, discriminant {r.discriminant}")
    if res.identically_degenerate:
        lines.append("  every member has rank at most 2")
    found = any(r.kind in ("rational", "infinity") for r in res.roots)
    return Outcome(lines, [_check("pencil", PASS if found else INCONCLUSIVE, None, res.to_json())])


def cmd_minrank(args) -> Outcome:
    field = _field(args)
    I = _ideal(args, field)
    gens = [g for g in I.generators if g.degree == 2]
    sample = min_rank_sample(gens, args.samples, _seed(args))
    lines = [f"minimum rank found: {sample.min_rank} ({args.samples} random combinations plus pairs)", f"  witness {sample.witness}"]
    status = PASS
    if args.expect_min is not None:
        status = PASS if sample.min_rank >= args.expect_min else FAIL
    return Outcome(lines, [_check("minrank", status, args.expect_min, sample.to_json())])


def cmd_generic(args) -> Outcome:
    if args.n is None or args.t is None:
        raise UsageError("generic needs --n and --t")
    seed = _seed(args)
    I = generic_quadrics(args.n, args.t, seed, args.bound)
    h = hilbert_series(I)
    lines = [f"{args.t} quadrics in {args.n} variables, seed {seed}, coefficients in [-{args.bound}, {args.bound}]"]
    lines += [f"  {format_element(g)}" for g in I.generators]
    lines.append(f"Hilbert series: {h}")
    if args.r is not None:
        ok = rank_bound(args.n, args.r, args.t)
        lines.append(f"rank bound for r = {args.r}: {ok}")
    return Outcome(lines, [_check("generic", PASS, None, {"generators": [str(g) for g in I.generators], "hilbert": h.to_json()})])


def cmd_verify(args) -> Outcome:
    only = args.only.split(",") if args.only else None
    report = verify_paper(_seed(args) if args.seed is not None or os.environ.get("EXTKOSZUL_SEED") else 0, args.corrupt, only)
    return Outcome(report.lines(), report.checks)


COMMANDS: dict = {}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="number of variables")
    common.add_argument("--order", help="lex|deglex|degrevlex, optionally :ranking such as degrevlex:2,1,3")
    common.add_argument("--field", help="q (default) or fp:<prime>")
    common.add_argument("--seed", type=int, help="master seed (else EXTKOSZUL_SEED)")
    common.add_argument("--json", metavar="PATH", help="write a JSON report")
    common.add_argument("--imax", type=int)
    common.add_argument("--trials", type=int)

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--ideal", help="generators like 'e1*e2 + e3*e4, e1*e3' or a name: " + ", ".join(names()))
    source.add_argument("--graph", help="graph preset, e.g. path:7 or triangle+path:4")
    source.add_argument("--graph-file", help="file with 'v N' and 'edge i j' lines")

    p = _Parser(prog="extkoszul", description="Exact computations in exterior algebras.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_, parents=(common,)):
        sp = sub.add_parser(name, parents=list(parents), help=help_)
        sp.set_defaults(func=fn)
        COMMANDS[name] = fn
        return sp

    add("gb", cmd_gb, "reduced Groebner basis", (common, source))
    add("initial", cmd_initial, "initial ideal and its Hilbert series", (common, source))
    add("scan-quadratic", cmd_scan, "search leading-term sets for a quadratic Groebner basis", (common, source))
    sp = add("hilbert", cmd_hilbert, "Hilbert series of E/I", (common, source))
    sp.add_argument("--expect", help="expected coefficients, e.g. 1,7,15,10,1")
    sp = add("froberg", cmd_froberg, "coefficients of 1/HS(-t)")
    sp.add_argument("--hs", required=True, help="Hilbert series coefficients, e.g. 1,4,5")
    sp.add_argument("--N", type=int, required=True, help="truncation degree")
    sp = add("betti", cmd_betti, "graded Betti numbers of E/I over E", (common, source))
    sp.add_argument("--jmax", type=int)
    sp = add("koszul-test", cmd_koszul, "bounded Betti table of the residue field over E/I", (common, source))
    sp.add_argument("--jmax", type=int)
    sp.add_argument("--euler", type=int, metavar="J", help="also check the Euler identity through degree J")
    sp = add("graphs-search", cmd_graphs_search, "graphs with a given independence polynomial")
    sp.add_argument("--v", required=True, help="vertex count or range like 6..9")
    sp.add_argument("--e", type=int, required=True, help="edge count")
    sp.add_argument("--target", required=True, help="coefficients, e.g. 1,6,9,1")
    sp.add_argument("--pad-from", type=int, help="multiply the target by (1+t)^(v - V) for v >= V")
    sp.add_argument("--ignore-isolated", action="store_true")
    sp = add("regular", cmd_regular, "is a linear form regular on E/I", (common, source))
    sp.add_argument("--form", required=True)
    sp = add("depth", cmd_depth, "certified and probable depth of E/I", (common, source))
    sp.add_argument("--witness", action="append", help="linear form tried before random ones (repeatable)")
    sp = add("quotient", cmd_quotient, "quotient by a regular linear form", (common, source))
    sp.add_argument("--form", required=True)
    sp.add_argument("--unsafe", action="store_true", help="skip the regularity requirement")
    sp = add("lg-search", cmd_lg_search, "quadratic monomial ideals with series h*(1+t)^d")
    sp.add_argument("--hs", required=True)
    sp.add_argument("--max-extra", type=int, default=0)
    sp = add("rank", cmd_rank, "rank and decomposition of a quadric")
    sp.add_argument("--element", required=True)
    sp = add("pencil", cmd_pencil, "rank-2 members of a pencil of 4-variable quadrics")
    sp.add_argument("--q1", required=True)
    sp.add_argument("--q2", required=True)
    sp = add("minrank", cmd_minrank, "smallest rank found in the span of the quadrics", (common, source))
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--expect-min", type=int)
    sp = add("generic", cmd_generic, "seeded generic quadrics")
    sp.add_argument("--t", type=int)
    sp.add_argument("--r", type=int, help="also evaluate the rank bound for rank 2r")
    sp.add_argument("--bound", type=int, default=100)
    sp = add("verify-paper", cmd_verify, "replay every reference computation")
    sp.add_argument("--corrupt", metavar="CHECK", help="perturb one check's input (self-test); one of: " + ", ".join(c[0] for c in CHECKS))
    sp.add_argument("--only", help="comma-separated check names")
    return p


def _write_json(path: str, args, checks: List[Check]) -> None:
    session = {
        "command": args.command,
        "n": args.n,
        "field": args.field or ("fp:32003" if args.command in ("betti", "koszul-test") else "q"),
        "order": args.order or "degrevlex",
        "seed": args.seed if args.seed is not None else os.environ.get("EXTKOSZUL_SEED"),
        "version": __version__,
    }
    report = Report(session, checks)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        out = args.func(args)
    except UsageError as exc:
        print(f"extkoszul {args.command}: error: {exc}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"extkoszul {args.command}: error: {exc}", file=sys.stderr)
        return USAGE
    ms = int((time.perf_counter() - t0) * 1000)
    for c in out.checks:
        if not c.runtime_ms:
            c.runtime_ms = ms
    for line in out.lines:
        print(line)
    if args.json:
        _write_json(args.json, args, out.checks)
    statuses = {c.status for c in out.checks}
    if FAIL in statuses:
        return EXIT[FAIL]
    if INCONCLUSIVE in statuses:
        return EXIT[INCONCLUSIVE]
    return EXIT[PASS]


if __name__ == "__main__":
    sys.exit(main())
