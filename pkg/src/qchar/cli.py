"""Command line front end.

Exit codes: 0 success, 1 identity mismatch, 2 usage error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import identities as ids
from .kato import DEFAULT_BOUND, EnumerationBoundError, degree_histogram, enumerate_fillings, kato_graded_dim
from .partitions import format_partition, parse_partition
from .series import QPoly
from .symfunc import SymPoly, expand_schur_basis
from .whittaker import CACHE_ENV, WhittakerTable, set_default_table, whittaker_p

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# identity registry: tag -> (required params, runner)

def _mu(params):
    return (params["mu1"], params["mu2"])


IDENTITIES = {
    "cauchy-schur": (("n", "m", "D"), lambda p: ids.verify_cauchy_schur(p["n"], p["m"], p["D"])),
    "cauchy-whittaker": (("n", "m", "D", "Q"),
                         lambda p: ids.verify_cauchy_whittaker(p["n"], p["m"], p["D"], p["Q"])),
    "wedge": (("n", "D", "Q"), lambda p: ids.verify_wedge_identity(p["n"], p["D"], p["Q"])),
    "schur-weyl-current": (("n_boxes", "m_vars", "Q"),
                           lambda p: ids.verify_schur_weyl_current(p["n_boxes"], p["m_vars"], p["Q"])),
    "bgg-gl2": (("mu1", "mu2", "Q", "cutoff"),
                lambda p: ids.verify_bgg_gl2(_mu(p), p["Q"], p["cutoff"])),
    "kato-vs-whittaker": (("max_size",), lambda p: ids.verify_kato_vs_whittaker(p["max_size"])),
    "dim-product": (("max_size", "max_vars"),
                    lambda p: ids.verify_dim_product(p["max_size"], p["max_vars"])),
    "sign-multiplicity": (("max_size",), lambda p: ids.verify_sign_multiplicity(p["max_size"])),
    "q0-schur": (("max_size", "max_vars"), lambda p: ids.verify_q0_schur(p["max_size"], p["max_vars"])),
    "q1-elementary": (("max_size", "max_vars"),
                      lambda p: ids.verify_q1_elementary(p["max_size"], p["max_vars"])),
}

# upper bounds for custom grids; keeps runs at desk scale
PARAM_LIMITS = {"n": 4, "m": 4, "D": 10, "Q": 12, "n_boxes": 6, "m_vars": 5, "mu1": 4, "mu2": 4,
                "cutoff": 12, "max_size": 8, "max_vars": 5}


def _desk_grid() -> list[dict]:
    grid = []
    for n, m, D, Q in ((1, 1, 4, 8), (2, 2, 4, 8), (2, 3, 4, 6)):
        grid.append({"identity": "cauchy-whittaker", "params": {"n": n, "m": m, "D": D, "Q": Q}})
    for n in (1, 2, 3):
        grid.append({"identity": "wedge", "params": {"n": n, "D": 6, "Q": 8}})
    for nb in (1, 2, 3, 4):
        for mv in (1, 2, 3, 4):
            grid.append({"identity": "schur-weyl-current", "params": {"n_boxes": nb, "m_vars": mv, "Q": 8}})
    for n in (1, 2, 3):
        for m in (1, 2, 3):
            grid.append({"identity": "cauchy-schur", "params": {"n": n, "m": m, "D": 8}})
    for mu in ((1, 0), (1, 1), (2, 0), (2, 1)):
        grid.append({"identity": "bgg-gl2", "params": {"mu1": mu[0], "mu2": mu[1], "Q": 4, "cutoff": 0}})
    grid.append({"identity": "kato-vs-whittaker", "params": {"max_size": 7}})
    grid.append({"identity": "sign-multiplicity", "params": {"max_size": 6}})
    grid.append({"identity": "dim-product", "params": {"max_size": 6, "max_vars": 4}})
    grid.append({"identity": "q0-schur", "params": {"max_size": 7, "max_vars": 4}})
    grid.append({"identity": "q1-elementary", "params": {"max_size": 7, "max_vars": 4}})
    return grid


def _extended_grid() -> list[dict]:
    grid = _desk_grid()
    grid += [
        {"identity": "cauchy-whittaker", "params": {"n": 3, "m": 3, "D": 5, "Q": 6}},
        {"identity": "wedge", "params": {"n": 4, "D": 7, "Q": 10}},
        {"identity": "schur-weyl-current", "params": {"n_boxes": 5, "m_vars": 5, "Q": 8}},
        {"identity": "kato-vs-whittaker", "params": {"max_size": 8}},
        {"identity": "sign-multiplicity", "params": {"max_size": 8}},
    ]
    return grid


SUITES = {"desk": _desk_grid, "extended": _extended_grid}


def validate_entry(entry: dict, limits: bool = True) -> dict:
    tag = entry.get("identity")
    if tag not in IDENTITIES:
        raise UsageError(f"unknown identity {tag!r}; choose from {', '.join(IDENTITIES)}")
    required, _ = IDENTITIES[tag]
    params = dict(entry.get("params", {}))
    missing = [k for k in required if k not in params]
    if missing:
        raise UsageError(f"{tag}: missing parameters {missing}")
    for k, v in params.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise UsageError(f"{tag}: parameter {k} must be a nonnegative integer, got {v!r}")
        if limits and k in PARAM_LIMITS and v > PARAM_LIMITS[k]:
            raise UsageError(f"{tag}: parameter {k}={v} exceeds the limit {PARAM_LIMITS[k]}")
    if tag == "cauchy-whittaker" and params["n"] > params["m"]:
        raise UsageError(f"cauchy-whittaker needs n <= m, got n={params['n']}, m={params['m']}")
    if tag in ("cauchy-schur", "cauchy-whittaker", "wedge") and params["n"] < 1:
        raise UsageError(f"{tag} needs n >= 1")
    if tag == "cauchy-schur" and params["m"] < 1:
        raise UsageError("cauchy-schur needs m >= 1")
    if tag == "schur-weyl-current" and params["m_vars"] < 1:
        raise UsageError("schur-weyl-current needs m_vars >= 1")
    if tag == "bgg-gl2" and params["mu2"] > params["mu1"]:
        raise UsageError("bgg-gl2 needs mu1 >= mu2")
    return {"identity": tag, "params": {k: params[k] for k in required}}


def run_entry(entry: dict) -> ids.IdentityReport:
    _, runner = IDENTITIES[entry["identity"]]
    return runner(entry["params"])


def _init_worker(cache_dir):
    set_default_table(WhittakerTable(cache_dir))


def run_grid(grid: list[dict], jobs: int = 1, cache_dir=None) -> list[ids.IdentityReport]:
    if jobs <= 1 or len(grid) <= 1:
        return [run_entry(e) for e in grid]
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(cache_dir,)) as pool:
        return list(pool.map(run_entry, grid))


def summarize(reports: list[ids.IdentityReport], wall_ms: int) -> dict:
    statuses = [r.status for r in reports]
    return {"total": len(reports), "verified": statuses.count("verified"),
            "failed": statuses.count("failed"), "inconclusive": statuses.count("inconclusive"),
            "wall_time": wall_ms}


def exit_code(reports: list[ids.IdentityReport]) -> int:
    if any(r.status == "failed" for r in reports):
        return EXIT_MISMATCH
    if any(r.status == "inconclusive" for r in reports):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# rendering


def _compact(c) -> str:
    return str(c).replace(" ", "")


def render_monomial(f: SymPoly) -> str:
    terms = []
    for e in sorted(f.terms, reverse=True):
        c = f.terms[e]
        mono = "*".join(f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k) or "1"
        if c == 1:
            terms.append(mono)
        elif mono == "1":
            terms.append(_compact(c))
        else:
            terms.append(f"({_compact(c)})*{mono}")
    return "+".join(terms) or "0"


def render_schur(coeffs: dict) -> str:
    terms = []
    for mu in sorted(coeffs, reverse=True):
        c = coeffs[mu]
        label = f"s[{format_partition(mu)}]"
        if c == 1:
            terms.append(label)
        else:
            text = str(c)
            if isinstance(c, QPoly) and sum(1 for v in c.coeffs if v) > 1:
                text = f"({text})"
            terms.append(f"{text}·{label}")
    return " + ".join(terms) or "0"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + ("" if text.endswith("\n") else "\n"))
    else:
        print(text)


# commands


def cmd_whittaker(args) -> int:
    lam = parse_partition(args.lam)
    if len(lam) > args.vars:
        raise UsageError(f"--lambda {args.lam} has {len(lam)} parts but --vars is {args.vars}")
    p = whittaker_p(lam, args.vars)
    if args.basis == "schur":
        coeffs = expand_schur_basis(p)
        if args.format == "json":
            payload = {"lambda": list(lam), "vars": args.vars, "basis": "schur",
                       "coefficients": [{"partition": list(mu), "coefficient": QPoly.const(c).to_json()
                                         if isinstance(c, int) else c.to_json()}
                                        for mu, c in sorted(coeffs.items(), reverse=True)]}
            _emit(json.dumps(payload, indent=2), args.out)
        else:
            _emit(render_schur(coeffs), args.out)
    elif args.format == "json":
        payload = {"lambda": list(lam), "vars": args.vars, "basis": "monomial", "polynomial": p.to_json()}
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        _emit(render_monomial(p), args.out)
    return EXIT_OK


def cmd_fillings(args) -> int:
    lam = parse_partition(args.lam)
    try:
        if args.histogram:
            hist = degree_histogram(lam, args.bound)
            if args.format == "json":
                payload = {"lambda": list(lam), "histogram": {str(d): c for d, c in hist.items()},
                           "total": sum(hist.values()), "graded_dim": kato_graded_dim(lam, args.bound).to_json()}
                _emit(json.dumps(payload, indent=2), args.out)
            else:
                lines = [f"{d} {c}" for d, c in hist.items()]
                lines.append(f"total {sum(hist.values())}")
                _emit("\n".join(lines), args.out)
        else:
            fillings = list(enumerate_fillings(lam, args.bound))
            if args.format == "json":
                payload = [{"columns": [list(c) for c in f.columns], "degree": f.degree} for f in fillings]
                _emit(json.dumps(payload, indent=2), args.out)
            else:
                _emit("\n".join(str(f) for f in fillings), args.out)
    except EnumerationBoundError as exc:
        raise UsageError(str(exc)) from exc
    return EXIT_OK


def _verify_entry(args) -> dict:
    tag = args.identity
    p: dict[str, int] = {}
    if tag in ("cauchy-schur", "cauchy-whittaker"):
        p = {"n": args.n, "m": args.m, "D": args.deg}
        if tag == "cauchy-whittaker":
            p["Q"] = args.qdeg
    elif tag == "wedge":
        p = {"n": args.n, "D": args.deg, "Q": args.qdeg}
    elif tag == "schur-weyl-current":
        p = {"n_boxes": args.n, "m_vars": args.m, "Q": args.qdeg}
    elif tag == "bgg-gl2":
        mu = parse_partition(args.lam or "")
        if len(mu) > 2:
            raise UsageError("bgg-gl2 needs --lambda with at most two parts")
        mu = tuple(mu) + (0,) * (2 - len(mu))
        p = {"mu1": mu[0], "mu2": mu[1], "Q": args.qdeg, "cutoff": args.cutoff}
    elif tag in ("kato-vs-whittaker", "sign-multiplicity"):
        p = {"max_size": args.max_size}
    elif tag in ("dim-product", "q0-schur", "q1-elementary"):
        p = {"max_size": args.max_size, "max_vars": args.vars}
    missing = [k for k, v in p.items() if v is None]
    if missing:
        raise UsageError(f"{tag}: missing flags for {missing}")
    return validate_entry({"identity": tag, "params": p}, limits=False)


def cmd_verify(args) -> int:
    entry = _verify_entry(args)
    report = run_entry(entry)
    if args.format == "json" or args.out:
        _emit(json.dumps(report.to_json(not args.no_timings), indent=2), args.out)
    else:
        line = f"{report.identity} {report.params}: {report.status}"
        if report.first_mismatch:
            line += f" first mismatch {report.first_mismatch.to_json()}"
        print(line)
    return exit_code([report])


def cmd_report(args) -> int:
    if args.suite == "custom":
        if not args.grid:
            raise UsageError("--suite custom needs --grid FILE")
        raw = json.loads(Path(args.grid).read_text())
        if not isinstance(raw, list):
            raise UsageError("a custom grid is a JSON array of {identity, params} records")
        grid = [validate_entry(e) for e in raw]
    else:
        grid = [validate_entry(e, limits=False) for e in SUITES[args.suite]()]
    t0 = time.perf_counter()
    reports = run_grid(grid, args.jobs, args.cache)
    wall = int(round((time.perf_counter() - t0) * 1000)) if not args.no_timings else 0
    payload = {"suite": args.suite,
               "reports": [r.to_json(not args.no_timings) for r in reports],
               "summary": summarize(reports, wall)}
    _emit(json.dumps(payload, indent=2), args.out)
    if args.out:
        s = payload["summary"]
        print(f"{s['total']} identities: {s['verified']} verified, {s['failed']} failed, "
              f"{s['inconclusive']} inconclusive", file=sys.stderr)
    return exit_code(reports)


def cmd_relations(args) -> int:
    rels = ids.current_group_relations(args.n, args.order)
    if args.format == "json":
        payload = [{"m": m, "terms": [{"monomial": [[v.i, v.j, v.k] for v in mono], "coefficient": c}
                                      for mono, c in sorted(p.items())]}
                   for m, p in enumerate(rels)]
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        _emit("\n".join(f"P_{m} = {ids.format_zpoly(p)}" for m, p in enumerate(rels)), args.out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qchar", description=__doc__.splitlines()[0])
    parser.add_argument("--cache", metavar="DIR", default=os.environ.get(CACHE_ENV),
                        help=f"p_lambda cache directory (default: ${CACHE_ENV}, else in-memory only)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("whittaker", help="print p_lambda(x; q)")
    p.add_argument("--lambda", dest="lam", required=True, help='partition, e.g. "3,1"')
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--basis", choices=("monomial", "schur"), default="monomial")
    common(p)
    p.set_defaults(func=cmd_whittaker)

    p = sub.add_parser("fillings", help="list fillings or their degree histogram")
    p.add_argument("lam", nargs="?", default=None, metavar="LAMBDA")
    p.add_argument("--lambda", dest="lam_flag")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--list", action="store_true")
    mode.add_argument("--histogram", action="store_true")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    common(p)
    p.set_defaults(func=cmd_fillings)

    p = sub.add_parser("verify", help="verify one identity")
    p.add_argument("identity", choices=sorted(IDENTITIES))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--deg", type=int)
    p.add_argument("--qdeg", type=int)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--cutoff", type=int, default=0)
    p.add_argument("--max-size", type=int)
    p.add_argument("--vars", type=int)
    p.add_argument("--no-timings", action="store_true", help="write elapsed_ms as 0")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="run a suite and write an aggregate JSON report")
    p.add_argument("--suite", choices=("desk", "extended", "custom"), default="desk")
    p.add_argument("--grid", metavar="FILE", help="JSON grid for --suite custom")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timings", action="store_true", help="write elapsed_ms and wall_time as 0")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("relations", help="t-expansion of det(z(t)) - 1")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--order", type=int, default=2)
    common(p)
    p.set_defaults(func=cmd_relations)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "fillings":
            args.lam = args.lam if args.lam is not None else args.lam_flag
            if args.lam is None:
                raise UsageError("fillings needs a partition")
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        set_default_table(WhittakerTable(args.cache))
        return args.func(args)
    except (UsageError, EnumerationBoundError) as exc:
        print(f"qchar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"qchar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
