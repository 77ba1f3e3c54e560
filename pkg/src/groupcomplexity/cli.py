"""Command-line interface: every computation behind one executable.

Exit codes: 0 success or property verified; 1 refuted or property violation;
2 usage or parse error; 3 resource cap hit (coset overflow, search budget).
Presentation files flow between subcommands; `-` reads standard input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

from . import abelian, contfrac, coset, families, presentation, search

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


@dataclass
class RunReport:
    subcommand: str
    inputs: dict
    outputs: dict
    timing: float = 0.0
    exit_code: int = 0

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        data = json.loads(text)
        return cls(**data)


def _read_presentation(path: str) -> presentation.Presentation:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return presentation.parse_presentation(text)


def _flat_lines(data: dict, prefix: str = "") -> list[str]:
    lines = []
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            lines.extend(_flat_lines(value, prefix=f"{name}."))
        else:
            lines.append(f"{name}: {value}")
    return lines


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (outputs, exit_code, plain_text or None)


def _cmd_bounds(args):
    pres = _read_presentation(args.file)
    report = abelian.bounds_report(pres)
    inv = abelian.abelian_invariants(pres)
    lhs, rhs, holds = abelian.per_relator_bound_check(pres)
    outputs = {
        "length": presentation.length(pres),
        "t_cost": presentation.t_cost(pres),
        "torsion": inv.torsion_order,
        "free_rank": inv.free_rank,
        "invariant_factors": list(inv.diagonal),
        "lower_c_log2": max(e.value for e in report.entries
                            if e.rule == "log2-of-torsion"),
        "lower_c_cuberoot3": max(e.value for e in report.entries
                                 if e.rule == "log-cbrt3-of-torsion"),
        "lower_t_log3": report.value("lower-T"),
        "rules": [e.rule for e in report.entries],
        "per_relator_check": {"lhs": lhs, "rhs": rhs, "holds": holds},
    }
    return outputs, EXIT_OK if holds else EXIT_REFUTED, None


def _cmd_present(args):
    if args.family == "cyclic":
        pres = families.cyclic_presentation(args.p, args.strategy)
    elif args.family == "abelian":
        pres = families.abelian_presentation(args.orders, args.strategy)
    else:
        spec = families.MilnorSpec(args.milnor_family, n=args.n, k=args.k,
                                   q=args.q)
        pres = families.milnor_presentation(spec, args.strategy)
    text = presentation.format_presentation(pres)
    outputs = {"presentation": text,
               "length": presentation.length(pres),
               "t_cost": presentation.t_cost(pres)}
    return outputs, EXIT_OK, text.rstrip("\n")


def _cmd_verify(args):
    pres = _read_presentation(args.file)
    inv = abelian.abelian_invariants(pres)
    snf = {"invariant_factors": list(inv.diagonal),
           "free_rank": inv.free_rank,
           "torsion": inv.torsion_order}
    if args.cyclic:
        verdict = coset.verify_cyclic(pres, args.order, args.coset_cap)
        code = {"verified": EXIT_OK, "refuted": EXIT_REFUTED,
                "inconclusive": EXIT_RESOURCE}[verdict.status]
        outputs = {"status": verdict.status, "reason": verdict.reason,
                   "order_found": verdict.order_found, "snf": snf}
        return outputs, code, None
    outcome = coset.enumerate_cosets(pres, args.coset_cap)
    if outcome.overflowed:
        return ({"status": "inconclusive", "order_found": None, "snf": snf,
                 "reason": f"coset cap {args.coset_cap} reached"},
                EXIT_RESOURCE, None)
    status = "verified" if outcome.order == args.order else "refuted"
    outputs = {"status": status, "order_found": outcome.order, "snf": snf,
               "reason": f"group order is {outcome.order}"}
    return outputs, EXIT_OK if status == "verified" else EXIT_REFUTED, None


def _cmd_search(args):
    result = search.exact_cyclic_complexity(args.n, args.max_length,
                                            max_gens=args.max_gens,
                                            coset_cap=args.coset_cap,
                                            jobs=args.jobs)
    outputs = result.as_dict()
    if result.witness is not None:
        outputs["witness"] = presentation.format_presentation(result.witness)
    code = EXIT_OK if result.exact else EXIT_RESOURCE
    return outputs, code, None


def _scan_one(p: int):
    q, worst, ok = contfrac.zaremba_partner_scan(p)
    return p, q, worst, ok


def _cmd_zaremba(args):
    if args.action == "check":
        exp = contfrac.cf_expand(args.p, args.q)
        outputs = {"p": args.p, "q": args.q,
                   "quotients": list(exp.quotients),
                   "sum": exp.sum, "max_quotient": exp.max_quotient,
                   "is_zaremba": exp.is_zaremba,
                   "is_weak_zaremba": exp.is_weak_zaremba}
        if args.q > 1 and (exp.is_zaremba or exp.is_weak_zaremba):
            s, bound, holds = contfrac.cf_sum_bound_check(args.p, args.q)
            outputs["sum_bound"] = {"bound": bound, "holds": holds}
        return outputs, EXIT_OK if exp.is_zaremba else EXIT_REFUTED, None
    if args.action == "scan":
        ps = range(3, args.max_p + 1)
        if args.jobs > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                rows = list(pool.map(_scan_one, ps))
        else:
            rows = [_scan_one(p) for p in ps]
        all_ok = all(ok for _, _, _, ok in rows)
        outputs = {"max_p": args.max_p, "all_cusick": all_ok,
                   "rows": [[p, q, worst] for p, q, worst, _ in rows]}
        text = "\n".join(f"{p},{q},{worst}" for p, q, worst, _ in rows)
        return outputs, EXIT_OK if all_ok else EXIT_REFUTED, text
    # fib
    p, q = contfrac.fibonacci_pair(args.k)
    exp = contfrac.cf_expand(p, q)
    outputs = {"k": args.k, "p": p, "q": q,
               "quotients": list(exp.quotients),
               "is_zaremba": exp.is_zaremba}
    return outputs, EXIT_OK if exp.is_zaremba else EXIT_REFUTED, None


def _cmd_manifold(args):
    if args.kind == "lens":
        bounds = contfrac.lens_bounds(args.p, args.q)
        if bounds.hypothesis == "weak-zaremba" and not args.weak:
            return ({"error": f"({args.p}, {args.q}) is not a Zaremba pair; "
                              "pass --weak to use the weak hypothesis"},
                    EXIT_REFUTED, None)
    else:
        bounds = contfrac.seifert_manifold_bounds(args.p, args.q)
    outputs = {"p": args.p, "q": args.q, "lower": bounds.lower,
               "upper": bounds.upper, "hypothesis": bounds.hypothesis}
    if bounds.p_below_6q is not None:
        outputs["p_below_6q"] = bounds.p_below_6q
    return outputs, EXIT_OK, None


def _cmd_roots(args):
    value = abelian.largest_root(args.a, args.c)
    return {"a": args.a, "c": args.c, "largest_root": value}, EXIT_OK, None


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupcomplexity",
        description="Presentation complexity toolkit for finitely presented groups.")
    parser.add_argument("--json", action="store_true",
                        help="emit a machine-readable run report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="two-sided invariant bounds from a presentation file")
    p.add_argument("file", help="presentation file, or - for stdin")
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("present", help="emit a generated presentation file")
    fam = p.add_subparsers(dest="family", required=True)
    c = fam.add_parser("cyclic")
    c.add_argument("p", type=int)
    a = fam.add_parser("abelian")
    a.add_argument("orders", type=int, nargs="+")
    m = fam.add_parser("milnor")
    m.add_argument("milnor_family",
                   choices=["Q", "D", "P24", "P48", "P120", "Pprime"])
    m.add_argument("--n", type=int, default=1)
    m.add_argument("--k", type=int, default=0)
    m.add_argument("--q", type=int, default=1)
    for sp in (c, a, m):
        sp.add_argument("--strategy", choices=sorted(families.STRATEGIES),
                        default="base2")
        sp.set_defaults(handler=_cmd_present)

    p = sub.add_parser("verify", help="verify a presentation's group order")
    p.add_argument("file", help="presentation file, or - for stdin")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--cyclic", action="store_true",
                   help="additionally certify the group is cyclic")
    p.add_argument("--coset-cap", type=int, default=coset.DEFAULT_MAX_COSETS)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("search", help="exhaustive minimal-presentation search")
    tgt = p.add_subparsers(dest="target", required=True)
    s = tgt.add_parser("cyclic")
    s.add_argument("n", type=int)
    s.add_argument("--max-length", type=int, required=True)
    s.add_argument("--max-gens", type=int, default=None)
    s.add_argument("--coset-cap", type=int, default=coset.DEFAULT_MAX_COSETS)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(handler=_cmd_search)

    p = sub.add_parser("zaremba", help="continued-fraction quotient bounds")
    act = p.add_subparsers(dest="action", required=True)
    c = act.add_parser("check")
    c.add_argument("p", type=int)
    c.add_argument("q", type=int)
    s = act.add_parser("scan")
    s.add_argument("--max-p", type=int, required=True)
    s.add_argument("--jobs", type=int, default=1)
    f = act.add_parser("fib")
    f.add_argument("k", type=int)
    for sp in (c, s, f):
        sp.set_defaults(handler=_cmd_zaremba)

    p = sub.add_parser("manifold", help="lens / Seifert complexity bounds")
    kind = p.add_subparsers(dest="kind", required=True)
    l = kind.add_parser("lens")
    l.add_argument("p", type=int)
    l.add_argument("q", type=int)
    l.add_argument("--weak", action="store_true",
                   help="accept weak Zaremba pairs")
    s = kind.add_parser("seifert")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    for sp in (l, s):
        sp.set_defaults(handler=_cmd_manifold)

    p = sub.add_parser("roots", help="largest root of x = a*log2(x) + c")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.set_defaults(handler=_cmd_roots)

    return parser


def run(argv: list[str]) -> tuple[RunReport, str | None]:
    """Parse argv and execute; returns the run report and optional plain text.

    Raises SystemExit(2) on grammar errors (argparse behavior).
    """
    parser = _build_parser()
    args = parser.parse_args(argv)
    start = time.monotonic()
    try:
        outputs, code, text = args.handler(args)
    except presentation.ParseError as exc:
        outputs, code, text = {"error": str(exc)}, EXIT_USAGE, None
    except FileNotFoundError as exc:
        outputs, code, text = {"error": str(exc)}, EXIT_USAGE, None
    except abelian.NoRootError as exc:
        outputs, code, text = {"error": str(exc)}, EXIT_REFUTED, None
    except ValueError as exc:
        outputs, code, text = {"error": str(exc)}, EXIT_USAGE, None
    report = RunReport(subcommand=" ".join(argv), inputs=vars_without_handler(args),
                       outputs=outputs, timing=time.monotonic() - start,
                       exit_code=code)
    return report, text


def vars_without_handler(args: argparse.Namespace) -> dict:
    return {k: v for k, v in vars(args).items() if k != "handler"}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    report, text = run(argv)
    if "--json" in argv:
        print(report.to_json())
    elif report.outputs.get("error"):
        print(f"error: {report.outputs['error']}", file=sys.stderr)
    elif text is not None:
        print(text)
    else:
        for line in _flat_lines(report.outputs):
            print(line)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
