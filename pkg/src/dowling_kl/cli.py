"""Command line front end: ``dowling-kl {pz,table,verify,roots,series,counts}``.

Exit codes: 0 success, 2 usage error or cap violation, 3 verification failure.
"""
import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import factorial

from .algebra import QPoly, TQPoly, qpoly_eval, qpoly_shift_to_u, scale_t_by_qsquared, tq_eval_at_q
from .errors import CapExceeded, DegreeMismatch, DowlingKLError, InvalidGroup, Mismatch
from .genfun import series_A, series_AG, series_C, series_S, series_SG
from .group import parse_group
from .klengine import (
    PZResult,
    Report,
    dowling_pz,
    lattice_pz,
    verify_genfun,
    verify_group_independence,
    verify_labelings,
    verify_leading,
    verify_theorem1,
)
from .qsp import qsp_all, weighted_counts
from .rootcheck import (
    FULL_SWEEP_MAX_DIM,
    Certificate,
    all_minors_positive_in_u,
    bezout_matrix,
    det,
    interlaces,
    leading_minors_positive_in_u,
    sampled_minors_positive,
    sturm_real_rooted,
)

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 2, 3


class UsageError(Exception):
    pass


# -- LaTeX


def latex_q(p):
    """Descending expanded form in q, e.g. ``q^{2} + 5 q + 10``."""
    terms = []
    for k in range(p.degree, -1, -1):
        c = p[k]
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "q" if k == 1 else f"q^{{{k}}}"
            body = var if mag == 1 else f"{mag} {var}"
        terms.append(("-" if c < 0 else "+", body))
    return _join(terms) or "0"


def _join(terms):
    out = ""
    for i, (sign, body) in enumerate(terms):
        if i == 0:
            out = body if sign == "+" else f"-{body}"
        else:
            out += f" {sign} {body}"
    return out


def latex_factored(p, style="table"):
    """Descending in t, each coefficient written as content times primitive part.

    ``style="table"`` wraps with ``{\\left(...\\right)}``, ``"plain"`` with ``(...)``.
    """
    terms = []
    for i in range(p.degree, -1, -1):
        c = p[i]
        if not c:
            continue
        g = c.content()
        if c.coeffs[-1] < 0:
            g = -g
        sign = "-" if g < 0 else "+"
        g = abs(g)
        tpart = "" if i == 0 else ("t" if i == 1 else f"t^{{{i}}}")
        if c.is_constant():
            coef = "" if (g == 1 and i > 0) else str(g)
        else:
            prim = QPoly([x // (g if sign == "+" else -g) for x in c.coeffs])
            inner = latex_q(prim)
            wrapped = f"{{\\left({inner}\\right)}}" if style == "table" else f"({inner})"
            coef = wrapped if g == 1 else f"{g} {wrapped}"
        terms.append((sign, " ".join(x for x in (coef, tpart) if x)))
    return _join(terms) or "0"


def latex_table(rows):
    lines = ["\\begin{cases}"]
    for k, (n, poly) in enumerate(rows):
        end = "." if k == len(rows) - 1 else ", \\\\"
        lines.append(f"{latex_factored(poly)} & n = {n}{end}")
    lines.append("\\end{cases}")
    return "\n".join(lines) + "\n"


# -- helpers


def _jobs_default():
    try:
        return max(1, int(os.environ.get("DOWLING_KL_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items, jobs):
    """Order-preserving map, in worker processes when ``jobs > 1``."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None


def _group_or_none(args):
    if getattr(args, "group", None):
        return parse_group(args.group)
    return None


def _concrete_scaled(coeffs, q):
    out = []
    for i, c in enumerate(coeffs):
        v, r = divmod(c, q ** (2 * i))
        if r:
            raise ArithmeticError(f"t^{i} coefficient {c} not divisible by q^{2 * i}")
        out.append(v)
    return out


def _pz(n, G):
    return lattice_pz(n, G) if G is not None else dowling_pz(n)


def _scaled_P(res):
    if res.q == "symbolic":
        return scale_t_by_qsquared(res.P)
    return TQPoly([QPoly([c]) for c in _concrete_scaled([p.constant() for p in res.P], res.q)])


def _csv_rows(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- commands


def cmd_pz(args):
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    res = _pz(args.n, _group_or_none(args))
    P = _scaled_P(res) if args.scaled else res.P
    if args.format == "json":
        d = res.to_dict()
        d["P"] = P.to_nested()
        if args.scaled:
            d["scaled"] = True
        return json.dumps(d) + "\n"
    if args.format == "csv":
        rows = []
        for name, poly in (("P", P), ("Z", res.Z)):
            for i, c in enumerate(poly):
                rows += [(name, i, k, x) for k, x in enumerate(c.coeffs) if x]
        return _csv_rows(["poly", "t_power", "q_power", "coeff"], rows)
    lhs = "P(t/q^2)" if args.scaled else "P(t)"
    return f"{lhs} = {latex_factored(P, 'plain')}\nZ(t) = {latex_factored(res.Z, 'plain')}\n"


def cmd_table(args):
    if not 1 <= args.max_n <= 40:
        raise UsageError("--max-n must be between 1 and 40")
    G = _group_or_none(args)
    rows = []
    for n in range(1, args.max_n + 1):
        res = dowling_pz(n)
        if G is not None:
            res = PZResult(n, TQPoly([QPoly([x]) for x in tq_eval_at_q(res.P, G.order)]),
                           TQPoly([QPoly([x]) for x in tq_eval_at_q(res.Z, G.order)]), G.name, G.order)
        rows.append((n, _scaled_P(res) if args.scaled else res.P, res))
    if args.format == "latex":
        return latex_table([(n, P) for n, P, _ in rows])
    if args.format == "csv":
        out = []
        for n, P, _ in rows:
            for i, c in enumerate(P):
                out += [(n, i, k, x) for k, x in enumerate(c.coeffs) if x]
        return _csv_rows(["n", "t_power", "q_power", "coeff"], out)
    data = []
    for n, P, res in rows:
        d = res.to_dict()
        d["P"] = P.to_nested()
        if args.scaled:
            d["scaled"] = True
        data.append(d)
    return json.dumps(data) + "\n"


def _theorem1_one(n):
    counts = weighted_counts(n, cap=n)
    checks = verify_theorem1(n, "P", counts).checks + verify_theorem1(n, "Z", counts).checks
    return checks


def _lattice_one(task):
    n, specs = task
    return verify_group_independence(n, [parse_group(s) for s in specs]).checks


def cmd_verify(args):
    suite = args.suite
    jobs = args.jobs
    if suite == "theorem1":
        max_n = args.max_n or 6
        report = Report(f"theorem1 max_n={max_n}", [])
        for checks in pmap(_theorem1_one, range(1, max_n + 1), jobs):
            report.checks += checks
    elif suite == "lattice":
        max_n = args.max_n or 4
        specs = [s for s in (args.groups or "cyclic:1,cyclic:2,cyclic:3").split(",") if s]
        for s in specs:
            parse_group(s)
        report = Report(f"lattice max_n={max_n}", [])
        for checks in pmap(_lattice_one, [(n, specs) for n in range(1, max_n + 1)], jobs):
            report.checks += checks
    elif suite == "genfun":
        report = verify_genfun(args.max_n or 6, tuple(_int_list(args.q or "1,2,3")))
    elif suite == "labelings":
        report = verify_labelings(args.max_n or 5, tuple(_int_list(args.q or "2,3")))
    else:
        max_m = args.max_m or 7
        report = verify_leading(max_m, enumerate_up_to=min(max_m, 4))
    return json.dumps({"suite": report.name, "ok": report.ok, "checks": report.checks}, indent=1) + "\n"


def _parse_poly(text):
    try:
        return [Fraction(x.strip()) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad polynomial {text!r}") from None


def _pair_poly(tag, scaled_P=True):
    kind, idx = tag[:1].upper(), tag[1:]
    if kind not in "PZ" or not idx.isdigit():
        raise UsageError(f"bad polynomial tag {tag!r}; expected like P6 or Z10")
    res = dowling_pz(int(idx))
    if kind == "P":
        return list(scale_t_by_qsquared(res.P) if scaled_P else res.P)
    return list(res.Z)


def _numeric(poly, q):
    return [qpoly_eval(c, q) for c in poly]


def _sturm_task(task):
    n, qs = task
    res = dowling_pz(n)
    out = []
    for q in qs:
        for name, poly in (("P", res.P), ("Z", res.Z)):
            s = sturm_real_rooted(tq_eval_at_q(poly, q))
            out.append(Certificate("sturm", n, q, s.real_rooted, level="exact",
                                   detail={"poly": name, "distinct_real_roots": s.distinct_real_roots}))
    return out


def _pairs(n):
    """(label, larger, smaller) Bezoutian pairs for index n, skipping vacuous ones."""
    out = []
    P1, P0 = _pair_poly(f"P{n + 1}"), _pair_poly(f"P{n}")
    if P1[-1] and len(P1) > 1:
        out.append(("P", P1, P0))
    out.append(("Z", _pair_poly(f"Z{n + 1}"), _pair_poly(f"Z{n}")))
    return out


def _interlace_task(task):
    n, qs = task
    out = []
    for name, f, g in _pairs(n):
        for q in qs:
            v = interlaces(_numeric(f, q), _numeric(g, q))
            out.append(Certificate("pd", n, q, v, level="exact", detail={"pair": [f"{name}{n + 1}", f"{name}{n}"]}))
    return out


def _tp_certificate(M, n, tags):
    detail = {"pair": list(tags), "dim": M.dim}
    if M.dim <= FULL_SWEEP_MAX_DIM:
        r = all_minors_positive_in_u(M)
        w = None if r.certified else {"rows": list(r.witness[0]), "cols": list(r.witness[1]),
                                      "minor_in_u": str(r.witness_poly).replace("q", "u")}
        detail["minors_checked"] = r.minors_checked
        return Certificate("total_positivity", n, "symbolic", r.certified, w, "all_minors", detail)
    ok, _ = leading_minors_positive_in_u(M)
    sampled, bad = sampled_minors_positive(M, [1, 2, 3, 4, 5], samples=100, seed=n)
    w = None if bad is None else {"q": bad[0], "rows": list(bad[1]), "cols": list(bad[2])}
    return Certificate("total_positivity", n, "symbolic", ok and sampled, w,
                       "leading_principal_minors+sampled_minors", detail)


def _tp_task(n):
    return [_tp_certificate(bezout_matrix(f, g), n, (f"{name}{n + 1}", f"{name}{n}"))
            for name, f, g in _pairs(n)]


def cmd_roots(args):
    certs = []
    lines = []
    if args.poly:
        f = _parse_poly(args.poly)
        s = sturm_real_rooted(f)
        certs.append(Certificate("sturm", len(f) - 1, None, s.real_rooted, level="exact",
                                 detail={"poly": args.poly, "distinct_real_roots": s.distinct_real_roots}))
    if args.pair:
        tags = args.pair.split(",")
        if len(tags) != 2:
            raise UsageError("--pair takes two tags, e.g. P6,P5")
        f, g = _pair_poly(tags[0]), _pair_poly(tags[1])
        try:
            M = bezout_matrix(f, g)
        except DegreeMismatch as e:
            raise UsageError(str(e)) from None
        n = int(tags[1][1:])
        if args.q and not args.symbolic:
            for q in _int_list(args.q):
                v = interlaces(_numeric(f, q), _numeric(g, q))
                certs.append(Certificate("pd", n, q, v, level="exact", detail={"pair": tags}))
        else:
            d = det(M.entries)
            lines.append({"kind": "bezout", "pair": tags,
                          "matrix": [[str(x) for x in row] for row in M.entries],
                          "det": str(d), "det_in_u": str(qpoly_shift_to_u(d)).replace("q", "u")})
            certs.append(_tp_certificate(M, n, tags))
    if args.max_n:
        qs = _int_list(args.q or "1,2,3,4,5")
        run_sturm = args.sturm or not (args.interlace or args.tp)
        if run_sturm:
            for batch in pmap(_sturm_task, [(n, qs) for n in range(1, args.max_n + 1)], args.jobs):
                certs += batch
        if args.interlace:
            for batch in pmap(_interlace_task, [(n, qs) for n in range(1, args.max_n)], args.jobs):
                certs += batch
        if args.tp:
            for batch in pmap(_tp_task, range(1, args.max_n), args.jobs):
                certs += batch
    if not (args.poly or args.pair or args.max_n):
        raise UsageError("roots needs --poly, --pair or --max-n")
    body = "".join(json.dumps(x) + "\n" for x in lines)
    body += "".join(c.to_json() + "\n" for c in certs)
    return body, all(c.verdict for c in certs)


SERIES = {"C": series_C, "A": series_A, "S": series_S}


def cmd_series(args):
    if args.which in SERIES:
        s = SERIES[args.which](args.order)
    else:
        fn = series_AG if args.which == "AG" else series_SG
        s = fn(args.order, args.q)
    rows = []
    for n in range(s.N + 1):
        for k, c in enumerate(s.coeffs[n]):
            if not c:
                continue
            scaled = c * factorial(n)
            rows.append((n, k, c.numerator, c.denominator,
                         scaled.numerator if scaled.denominator == 1 else ""))
    return _csv_rows(["n", "k", "numerator", "denominator", "scaled"], rows)


def cmd_counts(args):
    table = weighted_counts(args.n, cap=args.cap)
    out = {"n": args.n, "rows": table.rows()}
    if args.list:
        out["matroids"] = [M.to_dict() for M in qsp_all(args.n, cap=args.cap)]
    return json.dumps(out) + "\n"


# -- entry point


def build_parser():
    p = argparse.ArgumentParser(prog="dowling-kl", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=_jobs_default(),
                        help="worker processes (default: $DOWLING_KL_THREADS or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    def src(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--symbolic", action="store_true", help="symbolic in q (default)")
        g.add_argument("--group", help="concrete group, cyclic:m or sym:k")

    sp = sub.add_parser("pz", parents=[common], help="P and Z of one Dowling geometry")
    sp.add_argument("--n", type=int, required=True)
    src(sp)
    sp.add_argument("--scaled", action="store_true", help="substitute t -> t/q^2 in P")
    sp.add_argument("--format", choices=["json", "csv", "latex"], default="json")

    sp = sub.add_parser("table", parents=[common], help="table of P for n = 1..max_n")
    sp.add_argument("--max-n", type=int, required=True)
    src(sp)
    sp.add_argument("--scaled", action="store_true")
    sp.add_argument("--format", choices=["json", "csv", "latex"], default="latex")

    sp = sub.add_parser("verify", parents=[common], help="run a cross-check suite")
    sp.add_argument("suite", choices=["theorem1", "lattice", "genfun", "labelings", "leading"])
    sp.add_argument("--max-n", type=int)
    sp.add_argument("--max-m", type=int)
    sp.add_argument("--groups", help="comma separated group specs (lattice suite)")
    sp.add_argument("--q", help="comma separated group orders")

    sp = sub.add_parser("roots", parents=[common], help="real-rootedness and interlacing certificates")
    sp.add_argument("--max-n", type=int)
    sp.add_argument("--q", help="comma separated q values (default 1,2,3,4,5)")
    sp.add_argument("--sturm", action="store_true")
    sp.add_argument("--interlace", action="store_true")
    sp.add_argument("--tp", action="store_true", help="symbolic total-positivity certificates")
    sp.add_argument("--pair", help="Bezoutian of two polynomials, e.g. P6,P5 or Z10,Z9")
    sp.add_argument("--symbolic", action="store_true")
    sp.add_argument("--poly", help="ascending rational coefficients, e.g. 1,35,385,735")

    sp = sub.add_parser("series", parents=[common], help="generating-function coefficients as CSV")
    sp.add_argument("--which", choices=["C", "A", "S", "AG", "SG"], required=True)
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--q", type=int, default=1)

    sp = sub.add_parser("counts", parents=[common], help="weighted QSP matroid counts")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--cap", type=int, default=8)
    sp.add_argument("--list", action="store_true", help="also list the matroids")
    return p


COMMANDS = {"pz": cmd_pz, "table": cmd_table, "verify": cmd_verify, "roots": cmd_roots,
            "series": cmd_series, "counts": cmd_counts}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    ok = True
    try:
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        result = COMMANDS[args.command](args)
        if isinstance(result, tuple):
            result, ok = result
    except (UsageError, CapExceeded, InvalidGroup, DegreeMismatch, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Mismatch as e:
        print(json.dumps({"ok": False, "first_mismatch": {"where": e.where, "left": e.left,
                                                          "right": e.right}}), file=sys.stderr)
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    except DowlingKLError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(result)
    else:
        sys.stdout.write(result)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
