"""Command line experiment runner: ``symsys <subcommand> ...``.

Exit codes: 0 all checks passed, 1 a check failed, 2 malformed input,
3 budget exceeded.  JSON reports carry ``schema: 1`` and the config that
produced them; every number in them is an int or an exact "a/b" string.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction

from . import counting, multipoly, patterns, rscodes, unipoly
from .fields import QQ, CapExceeded, set_cap
from .parsing import ParseError, parse_element, parse_field, parse_list, parse_mpoly, parse_unipoly
from .radical import RadicalValue, frac_str
from .systems import SymmetricSystem, check_assumption, parse_system

SCHEMA = 1


class CheckFailed(Exception):
    """Raised by a subcommand when one of its checks fails; the report is still printed."""


def _num(x):
    if isinstance(x, RadicalValue):
        return x.to_json()
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return frac_str(x)
    return x


# execution-only settings; results never depend on them, so reports stay byte-stable
_EXEC_ONLY = {"func", "shards"}


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in _EXEC_ONLY}


def _emit(args, results, rows=None, header=None, out=None):
    out = out or sys.stdout
    if args.format == "csv":
        if rows is None:
            raise ParseError(f"{args.command} has no CSV form")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        out.write(buf.getvalue())
        return
    doc = {"schema": SCHEMA, "command": args.command, "config": _config(args), "results": results}
    out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# field


def cmd_field(args):
    F = parse_field(args.field)
    res = {
        "q": F.q,
        "p": F.p,
        "e": F.e,
        "modulus": list(F.modulus),
        "modulus_text": F.format_poly(F.modulus),
        "generator": F.format(F.generator()),
    }
    if args.elements:
        if F.q > 4096:
            raise CapExceeded("element listing is limited to q <= 4096")
        res["elements"] = [{"code": a, "value": F.format(a)} for a in range(F.q)]
    if args.op:
        a, op, b = args.op
        x, y = parse_element(a, F), parse_element(b, F)
        fn = {"+": F.add, "-": F.sub, "*": F.mul, "/": F.div}.get(op)
        if fn is None:
            raise ParseError(f"unknown operator {op!r}")
        try:
            res["op"] = {"a": F.format(x), "op": op, "b": F.format(y), "result": F.format(fn(x, y))}
        except ZeroDivisionError as exc:
            raise ParseError(str(exc)) from exc
    rows = [[r["code"], r["value"]] for r in res.get("elements", [])]
    _emit(args, res, rows, ["code", "value"])


# ---------------------------------------------------------------------------
# verify


def _item(name, ok, detail="", asserted=True):
    return {"name": name, "passed": bool(ok), "detail": detail, "asserted": asserted}


def suite_identities():
    items = []
    for m in range(2, 7):
        ok = multipoly.jacobian_pi_det(m) == multipoly.jacobian_pi_closed_form(m)
        items.append(_item(f"jacobian m={m}", ok))
    for i in range(0, 7):
        ok = multipoly.to_elementary(multipoly.complete_homogeneous(i, i)) == multipoly.toeplitz_hessenberg_det(i) if i else True
        items.append(_item(f"toeplitz-hessenberg i={i}", ok))
    for m in range(2, 7):
        for k in range(1, m):
            sign = multipoly.matrix_B_sign(m, k)
            items.append(_item(f"detB m={m} k={k}", True, f"sign {sign:+d}"))
            for j in range(1, m - k + 1):
                ok = multipoly.matrix_Bj_det(m, k, j) == multipoly.matrix_Bj_closed_form(m, k, j)
                items.append(_item(f"detBj closed form m={m} k={k} j={j}", ok))
    # the vanishing claim is recorded, not asserted: it is refuted by the closed form
    zero = all(
        multipoly.matrix_Bj_det(m, k, j).is_zero()
        for m in range(2, 7) for k in (1, 2) if k < m for j in range(1, m - k + 1)
    )
    items.append(_item("detBj vanishes for k<=2", zero, "refuted" if not zero else "", asserted=False))
    return items + suite_appendix()


def suite_appendix():
    items = []
    for m, j in [(3, 0), (3, 1), (4, 0), (4, 1), (5, 0)]:
        r = multipoly.appendix_leading_check(m, j)
        items.append(_item(f"appendix m={m} j={j}", r.passed, r.describe()))
    return items


def suite_subdisc(seed: int = 0, samples: int = 10):
    rng = random.Random(seed)
    items = []
    for m in range(2, 6):
        for j in range(0, m - 1):
            G = multipoly.generic_subdisc(m, j)
            sign = -1 if ((m - j) * (m - j - 1) // 2) % 2 else 1
            ok = True
            for _ in range(samples):
                x = [rng.randint(-9, 9) for _ in range(m)]
                f = unipoly.UniPoly.from_roots(QQ, x)
                ok &= G.evaluate(x) == sign * unipoly.subdisc(f, j)
            items.append(_item(f"subdisc bridge m={m} j={j}", ok))
    return items


def suite_patterns():
    from .fields import make_field

    items = []
    for q in (3, 5):
        for n in (1, 2, 3):
            F = make_field(q)
            c = patterns.census(patterns.PolyFamily(n, F))
            ok = sum(t for _, t, _ in c.rows()) == q**n
            items.append(_item(f"pattern census q={q} n={n}", ok))
    return items


SUITES = {
    "identities": suite_identities,
    "appendix": suite_appendix,
    "subdisc": suite_subdisc,
    "patterns": suite_patterns,
}


def cmd_verify(args):
    # identities already includes the appendix checks
    names = ["identities", "subdisc", "patterns"] if args.suite == "all" else [args.suite]
    items = []
    for name in names:
        fn = SUITES[name]
        got = fn(args.seed) if name == "subdisc" else fn()
        for it in got:
            it["suite"] = name
        items += got
    failed = [it for it in items if it["asserted"] and not it["passed"]]
    rows = [[it["suite"], it["name"], int(it["passed"]), int(it["asserted"]), it["detail"]] for it in items]
    _emit(args, {"items": items, "failed": [it["name"] for it in failed]}, rows,
          ["suite", "name", "passed", "asserted", "detail"])
    if failed:
        raise CheckFailed(", ".join(it["name"] for it in failed))


# ---------------------------------------------------------------------------
# count


def _system_from_args(args):
    if args.system:
        try:
            with open(args.system) as fh:
                spec = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read system file: {exc}") from exc
        return parse_system(spec)
    if args.m is None or args.k is None or not args.G:
        raise ParseError("give --system FILE or --m, --k and --G")
    F = parse_field(args.field)
    n_y = args.m - args.k + (1 if args.hypersurface else 0)
    G = [parse_mpoly(g, F, multipoly.elementary_names(n_y)) for g in args.G]
    try:
        return SymmetricSystem(args.m, args.k, tuple(G), hypersurface=args.hypersurface), F
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _report_json(r: counting.CountReport) -> dict:
    out = {
        "q": r.q, "m": r.m, "s": r.s, "k": r.k,
        "count": r.exact_count, "main_term": r.main_term, "deviation": r.deviation,
        "predicate": r.predicate,
    }
    if r.bound is not None:
        out.update(bound=_num(r.bound), bound_case=r.bound_case,
                   satisfied=r.satisfied, vacuous=r.vacuous)
    return out


def cmd_count(args):
    sys_, F = _system_from_args(args)
    res = {}
    for which in ("A1", "A2"):
        rep = check_assumption(sys_, which, F)
        res[which] = rep.verdict
    cases = [c.strip() for c in args.cases.split(",") if c.strip()]
    if args.predicate in ("all", "distinct"):
        reports = counting.count_with_bounds(sys_, F, cases, shards=args.shards, budget=args.budget)
        base = counting.count_points(sys_, F, args.predicate, shards=args.shards, budget=args.budget)
    else:
        reports = []
        base = counting.count_points(sys_, F, args.predicate, shards=args.shards, budget=args.budget)
    res["count"] = _report_json(base)
    res["bounds"] = [_report_json(r) for r in reports]
    bad = [r.bound_case for r in reports if r.satisfied is False]
    res["failed"] = bad
    rows = [[r.bound_case, r.predicate, r.exact_count, r.main_term, str(r.bound),
             int(bool(r.satisfied)), int(bool(r.vacuous))] for r in reports]
    _emit(args, res, rows, ["case", "predicate", "count", "main_term", "bound", "satisfied", "vacuous"])
    if bad:
        raise CheckFailed(", ".join(bad))


# ---------------------------------------------------------------------------
# bounds


def cmd_bounds(args):
    p = counting.BoundParams(args.m, args.s, args.k, args.q, args.delta, args.D, args.d)
    res = {}
    for case in ("k2", "k3", "general"):
        try:
            res[f"main-{case}"] = _num(counting.bound_thm_main(p, case))
        except ValueError as exc:
            res[f"main-{case}"] = f"n/a: {exc}"
        if args.s == 1:
            try:
                res[f"hypersurface-{case}"] = _num(counting.bound_hypersurface(p, case))
            except ValueError as exc:
                res[f"hypersurface-{case}"] = f"n/a: {exc}"
    res["slice"] = counting.bound_slice(p)
    res["main_term"] = args.q ** (args.m - args.s)
    res["nonempty_threshold"] = counting.nonempty_threshold(p)
    rows = [[k, json.dumps(v, sort_keys=True) if isinstance(v, dict) else v] for k, v in res.items()]
    _emit(args, res, rows, ["quantity", "value"])


# ---------------------------------------------------------------------------
# patterns


def _parse_prescribe(text: str, n: int, F) -> dict[int, int]:
    out = {}
    for part in filter(None, (t.strip() for t in text.split(","))):
        if "=" not in part or not part.startswith("a"):
            raise ParseError(f"expected aJ=value, got {part!r}")
        name, val = part.split("=", 1)
        try:
            j = int(name[1:])
        except ValueError as exc:
            raise ParseError(f"bad coefficient name {name!r}") from exc
        if not 1 <= j <= n - 1:
            raise ParseError(f"a{j} is not a free coefficient of a monic degree-{n} polynomial")
        out[j] = parse_element(val, F)
    return out


def cmd_patterns(args):
    F = parse_field(args.field) if args.field else parse_field(str(args.q))
    n = args.n
    fam = patterns.PolyFamily.from_ascending(n, F, _parse_prescribe(args.prescribe or "", n, F))
    c = patterns.census(fam, budget=args.budget)
    res = {"n": n, "q": F.q, "family": fam.label, "size": c.family_size, "rows": []}
    failed = []
    bound_rows = {}
    if args.bounds:
        bound_rows = {r.lam: r for r in patterns.pattern_bound_rows(fam, c)}
        hyp = patterns.family_hypotheses(fam)
        res["hypotheses"] = {"char": hyp.char_ok, "late_variables_free": hyp.no_late_variables,
                             "A1": hyp.A1, "A2": hyp.A2, "q>n": hyp.q_gt_n}
    wanted = None
    if args.lam:
        wanted = {unipoly.Lambda.parse(t, n) for t in args.lam.split(";")}
    csv_rows = []
    for lam, total, sq in c.rows():
        if wanted is not None and lam not in wanted:
            continue
        row = {"lambda": str(lam), "total": total, "squarefree": sq}
        line = [str(lam), total, sq]
        if args.bounds:
            b = bound_rows[lam]
            row.update(main_term=_num(b.main_term), total_bound=_num(b.total_bound),
                       sq_bound=_num(b.sq_bound), total_ok=b.total_ok,
                       squarefree_ok=b.squarefree_ok, vacuous=b.vacuous)
            line += [frac_str(b.main_term), frac_str(b.total_bound), int(b.vacuous),
                     int(b.total_ok and b.squarefree_ok)]
            if not (b.total_ok and b.squarefree_ok):
                failed.append(str(lam))
        res["rows"].append(row)
        csv_rows.append(line)
    res["failed"] = failed
    header = ["lambda", "total", "squarefree"]
    if args.bounds:
        header += ["main_term", "bound", "vacuous", "satisfied"]
    _emit(args, res, csv_rows, header)
    if failed:
        raise CheckFailed(", ".join(failed))


# ---------------------------------------------------------------------------
# deep holes


def cmd_deep_holes(args):
    F = parse_field(str(args.q))
    eps = Fraction(args.eps)
    res = {"q": F.q, "k": args.k, "d": args.d}
    failed = []
    if args.mode in ("search", "verify"):
        coeffs = [F.coerce(v) for v in parse_list(args.tail)] if args.tail else [0] * args.d
        if len(coeffs) != args.d:
            raise ParseError(f"tail needs d = {args.d} coefficients f_0..f_(d-1)")
        tail = rscodes.TailPoly(F, args.k, tuple(coeffs))
        code = rscodes.RSCode(F, args.k)
        res["tail"] = tail.poly().format()
        res["H_f"] = rscodes.H_f_expr(tail).format()
        found = rscodes.good_zero_search(tail, code, budget=args.budget)
        res["good_zero"] = list(found) if found is not None else None
        if args.mode == "verify":
            dist = rscodes.distance(code.word(tail.poly()), code, code.codewords(args.budget))
            res["distance"] = dist
            res["covering_radius"] = code.covering_radius
            res["deep_hole"] = dist == code.covering_radius
            if found is not None and dist > F.q - args.k - 2:
                failed.append("good zero but distance exceeds q-k-2")
    if args.mode == "criteria":
        b = rscodes.bounds_report(F.q, args.k, args.d, eps)
        res.update(
            eps=frac_str(eps),
            count_error=_num(b.count_error),
            N1_bound=_num(b.N1_bound),
            N2_bound=_num(b.N2_bound),
            N_lower=_num(b.N_lower),
            N_lower_positive=b.N_positive,
            domain=b.domain,
            criteria=b.verdicts,
        )
        if b.N_lower != b.N_lower_split:
            failed.append("N lower bound does not decompose")
    res["failed"] = failed
    _emit(args, res)
    if failed:
        raise CheckFailed(", ".join(failed))


# ---------------------------------------------------------------------------
# subdiscriminants


def cmd_subdisc(args):
    if args.generic:
        m = args.generic
        G = multipoly.generic_subdisc_elementary(m, args.j)
        res = {"m": m, "j": args.j, "elementary": G.format()}
        _emit(args, res)
        return
    if not args.f:
        raise ParseError("give --f POLY or --generic M")
    ring = QQ if args.field in ("Q", "QQ") else parse_field(args.field)
    f = parse_unipoly(args.f, ring)
    if not f.is_monic() or f.degree < 2 or not 0 <= args.j < f.degree - 1:
        raise ParseError("need monic f of degree >= 2 and 0 <= j < deg f - 1")
    val = unipoly.subdisc(f, args.j)
    res = {"f": f.format(), "j": args.j,
           "value": _num(val) if ring is QQ else ring.format(val)}
    _emit(args, res, [[f.format(), args.j, res["value"]]], ["f", "j", "value"])


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--shards", type=int, default=1)
    common.add_argument("--budget", type=int, default=counting.DEFAULT_BUDGET)
    common.add_argument("--cap", type=int, default=None, help="largest field order to enumerate")

    ap = argparse.ArgumentParser(prog="symsys", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", parents=[common], help="describe a finite field")
    p.add_argument("--field", "--q", dest="field", required=True)
    p.add_argument("--elements", action="store_true")
    p.add_argument("--op", nargs=3, metavar=("A", "OP", "B"))
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("verify", parents=[common], help="run an identity suite")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="identities")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", parents=[common], help="count points of a symmetric system")
    p.add_argument("--system", help="JSON file {m, k, G, field}")
    p.add_argument("--field", default="7")
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--G", action="append", help="equation in E1..E(m-k); repeat for several")
    p.add_argument("--hypersurface", action="store_true")
    p.add_argument("--predicate", default="all")
    p.add_argument("--cases", default="k2,k3")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bounds", parents=[common], help="evaluate the error bounds")
    for name in ("m", "s", "k", "q"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--delta", type=int, default=1)
    p.add_argument("--D", type=int, default=0)
    p.add_argument("--d", type=int, default=1)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("patterns", parents=[common], help="factorization-pattern census")
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--field", default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prescribe", default="", help='e.g. "a4=1,a3=0" (a_j is the coefficient of T^j)')
    p.add_argument("--lambda", dest="lam", default=None,
                   help='restrict rows to these patterns, e.g. "1^1 2^2" (separate several with ;)')
    p.add_argument("--bounds", action="store_true")
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("deep-holes", parents=[common], help="Reed-Solomon deep-hole experiments")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--tail", default=None, help="f_0..f_(d-1) as a list, e.g. [0]")
    p.add_argument("--mode", choices=("search", "verify", "criteria"), default="search")
    p.add_argument("--eps", default="1")
    p.set_defaults(func=cmd_deep_holes)

    p = sub.add_parser("subdisc", parents=[common], help="subdiscriminants")
    p.add_argument("--f", default=None)
    p.add_argument("--field", default="Q")
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--generic", type=int, default=None, metavar="M")
    p.set_defaults(func=cmd_subdisc)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.cap is not None:
            set_cap(args.cap)
        args.func(args)
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except CapExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ParseError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
