"""Command-line front end for the verification suites and expansions.

Subcommands: list-suites, verify, census, pbw, magnus, expand.  Exit code 0
means every requested check passed, 1 means a counterexample was found, and 2
signals a usage or configuration problem.  With --format json the output is
schema-stable and, for a fixed seed, byte-deterministic apart from the
elapsed_ms timing fields.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import hopf, lyndon
from .dendriform import ell, r as r_fold, w_left, w_right
from .magnus import magnus_omega
from .errors import InvalidPermutation
from .ncalg import Elem, Word, WORD_SORT
from .structures import from_selector
from .suites import SUITES, Options, run_suites, suite_generator, suite_names

class UsageError(Exception):
    """Raised for configuration problems that should exit with code 2."""


EXPAND_OPS = ("w-right", "w-left", "ell", "r", "dynkin", "antipode",
              "comp-right", "comp-left")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dendralg",
        description="exact verification suites for dendriform identities")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list-suites", help="show the suite catalogue")

    def common(p, with_suite=False):
        if with_suite:
            p.add_argument("--suite", help="suite name (default: all)")
        p.add_argument("--structure", help="structure selector, e.g. shuffle "
                                           "or rb-seqmat:theta=1,k=2,N=4")
        p.add_argument("--n", type=int, help="size bound / sweep size")
        p.add_argument("--degree", type=int, help="basis degree bound")
        p.add_argument("--cap", type=int, help="series truncation order")
        p.add_argument("--theta", help="weight for operator structures, e.g. 2/3")
        p.add_argument("--seed", type=int, default=0,
                       help="PRNG seed for random-element checks (default 0)")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker threads for independent checks")
        p.add_argument("--format", choices=("text", "json"), default="text")

    common(sub.add_parser("verify", help="run verification suites"),
           with_suite=True)

    census = sub.add_parser("census", help="tabulate permutations by E-block type")
    census.add_argument("--n", type=int, default=5)
    census.add_argument("--format", choices=("text", "json"), default="text")

    pbw = sub.add_parser("pbw", help="print a bracketed E-block expansion")
    pbw.add_argument("--n", type=int, default=4)
    pbw.add_argument("--beta", help="relabelling in one-line notation, e.g. 4,3,2,1 "
                                    "(default: the order reversal of size n)")
    pbw.add_argument("--format", choices=("text", "json"), default="text")

    mg = sub.add_parser("magnus", help="run the Magnus checks, optionally "
                                       "printing the omega coefficients")
    common(mg)
    mg.add_argument("--emit-omega", action="store_true",
                    help="print each omega coefficient")

    ex = sub.add_parser("expand", help="print one expansion of a generator")
    ex.add_argument("--structure", required=True)
    ex.add_argument("--op", required=True, choices=EXPAND_OPS)
    ex.add_argument("--n", type=int, required=True)
    ex.add_argument("--theta")
    ex.add_argument("--seed", type=int, default=0)
    ex.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _options(args) -> Options:
    theta = None
    if getattr(args, "theta", None) is not None:
        try:
            theta = Fraction(args.theta.replace("−", "-"))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"cannot parse theta {args.theta!r}")
    if getattr(args, "structure", None):
        try:
            from_selector(args.structure, theta=theta)
        except (ValueError, TypeError) as exc:
            raise UsageError(str(exc))
    return Options(structure=getattr(args, "structure", None),
                   n=getattr(args, "n", None),
                   degree=getattr(args, "degree", None),
                   cap=getattr(args, "cap", None),
                   theta=theta,
                   seed=getattr(args, "seed", 0),
                   jobs=getattr(args, "jobs", 1))


def _emit_reports(reports, fmt: str) -> int:
    if fmt == "json":
        payload = {"reports": [rep.to_dict() for rep in reports]}
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for rep in reports:
            params = ",".join(f"{k}={v}" for k, v in sorted(rep.params.items()))
            print(f"[{rep.status}] {rep.suite:<14} {rep.structure:<28} "
                  f"checks={rep.checks:<6} ({params}; {rep.elapsed_ms} ms)")
            if rep.counterexample:
                ce = rep.counterexample
                print(f"    check:      {ce['check']}")
                print(f"    lhs:        {ce['lhs']}")
                print(f"    rhs:        {ce['rhs']}")
                if ce.get("difference"):
                    print(f"    difference: {ce['difference']}")
    return 0 if all(rep.status == "pass" for rep in reports) else 1


def _cmd_list_suites() -> int:
    width = max(len(name) for name in SUITES)
    for name, (_, description) in SUITES.items():
        print(f"{name:<{width}}  {description}")
    return 0


def _cmd_verify(args) -> int:
    options = _options(args)
    if args.suite:
        if args.suite not in SUITES:
            raise UsageError(
                f"unknown suite {args.suite!r}; choose from: "
                + ", ".join(suite_names()))
        names = [args.suite]
    else:
        names = suite_names()
    return _emit_reports(run_suites(names, options), args.format)


def _cmd_census(args) -> int:
    n = args.n
    if n < 1:
        raise UsageError("census needs --n >= 1")
    census = lyndon.lyndon_census(n)
    rows = [{"composition": list(comp), "count": count,
             "formula": lyndon.census_formula(comp)}
            for comp, count in sorted(census.items())]
    ok = all(row["count"] == row["formula"] for row in rows)
    total = sum(census.values())
    if args.format == "json":
        print(json.dumps({"n": n, "rows": rows, "total": total,
                          "matches_formula": ok}, indent=2, sort_keys=True))
    else:
        width = max(len(repr(tuple(row["composition"]))) for row in rows)
        for row in rows:
            comp = repr(tuple(row["composition"]))
            print(f"{comp:<{width}}  count={row['count']:<8} "
                  f"formula={row['formula']}")
        print(f"total {total} permutations over {len(rows)} compositions; "
              f"formula {'matches' if ok else 'DISAGREES'}")
    return 0 if ok else 1


def _parse_beta(text: str, fallback_n: int):
    if text is None:
        return tuple(range(fallback_n, 0, -1))
    text = text.strip()
    if "," in text:
        parts = [p for p in text.split(",") if p.strip()]
    else:
        parts = list(text)
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"cannot parse one-line permutation {text!r}")


def _cmd_pbw(args) -> int:
    if args.beta is None and args.n < 1:
        raise UsageError("pbw needs --n >= 1")
    image = _parse_beta(args.beta, args.n)
    if not image:
        raise UsageError("pbw needs a nonempty permutation")
    try:
        expansion = lyndon.pbw_expansion(image)
    except InvalidPermutation as exc:
        raise UsageError(str(exc))
    n = len(image)
    target = Elem.term(WORD_SORT, Word(tuple(range(1, n + 1))))
    ok = expansion == target
    if args.format == "json":
        print(json.dumps({"beta": list(image),
                          "expansion": expansion.render(),
                          "terms": len(expansion),
                          "matches_word": ok}, indent=2, sort_keys=True))
    else:
        print(f"beta = {image}")
        print(f"expansion ({len(expansion)} words once expanded):")
        print(f"  {expansion.render()}")
        print(f"equals x1..x{n}: {'yes' if ok else 'NO'}")
    return 0 if ok else 1


def _cmd_magnus(args) -> int:
    options = _options(args)
    reports = run_suites(["magnus"], options)
    code = _emit_reports(reports, args.format)
    if args.emit_omega and args.format == "text":
        cap = options.cap or 6
        selectors = ([options.structure] if options.structure
                     else [rep.structure for rep in reports])
        for sel in selectors:
            S = from_selector(sel, theta=options.theta)
            a = suite_generator(S, options.seed)
            om = magnus_omega(S, a, cap)
            print(f"omega coefficients for {sel} (cap {cap}):")
            for d in range(1, cap + 1):
                print(f"  t^{d}: {om.coeff(d).render(max_terms=20)}")
    return code


def _cmd_expand(args) -> int:
    options = _options(args)
    if args.n < 0 or (args.n == 0 and args.op in ("ell", "r", "dynkin")):
        raise UsageError(f"op {args.op} needs --n >= 1")
    S = from_selector(args.structure, theta=options.theta)
    a = suite_generator(S, options.seed)
    ops = {
        "w-right": lambda: w_right(S, a, args.n),
        "w-left": lambda: w_left(S, a, args.n),
        "ell": lambda: ell(S, *([a] * args.n)),
        "r": lambda: r_fold(S, *([a] * args.n)),
        "dynkin": lambda: hopf.dynkin_w(S, a, args.n),
        "antipode": lambda: hopf.w_antipode(S, a, args.n),
        "comp-right": lambda: hopf.w_right_from_compositions(S, a, args.n),
        "comp-left": lambda: hopf.w_left_from_compositions(S, a, args.n),
    }
    value = ops[args.op]()
    if args.format == "json":
        print(json.dumps({"structure": args.structure, "op": args.op,
                          "n": args.n, "generator": a.render(),
                          "element": value.render()},
                         indent=2, sort_keys=True))
    else:
        print(f"generator: {a.render()}")
        print(f"{args.op}({args.n}): {value.render()}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "list-suites":
            return _cmd_list_suites()
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "census":
            return _cmd_census(args)
        if args.command == "pbw":
            return _cmd_pbw(args)
        if args.command == "magnus":
            return _cmd_magnus(args)
        if args.command == "expand":
            return _cmd_expand(args)
        parser.error(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"dendralg: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
