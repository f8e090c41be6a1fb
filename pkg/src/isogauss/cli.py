"""Command-line front end.

Three subcommands: eval (one value, with oracle cross-check), table
(closed-form values over classes), verify (identity suites). Exit
codes: 0 success or oracle-skipped, 1 mismatch, 2 usage error. JSON
output carries big integers as decimal strings.
"""

import argparse
import json
import os
import sys

from . import formulas, oracle, verify
from .cyclotomic import embed
from .field import prime_context
from .oracle import Budget, BudgetExceeded
from .quadform import NONSQ, SQ, FormClass, all_classes, canonical_matrix, classify

_DISC_NAMES = {SQ: "sq", NONSQ: "nonsq"}
_DISC_VALUES = {"sq": SQ, "nonsq": NONSQ}


class UsageError(Exception):
    pass


def _budget(args) -> Budget:
    if getattr(args, "max_terms", None) is not None:
        if args.max_terms <= 0:
            raise UsageError("--max-terms must be positive")
        return Budget(max_terms=args.max_terms)
    return Budget()


def _jobs(args) -> int:
    if getattr(args, "jobs", None) is not None:
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        return args.jobs
    return os.cpu_count() or 1


def _context(p: int):
    try:
        return prime_context(p)
    except ValueError as e:
        raise UsageError(str(e))


def _parse_matrix(ctx, text):
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed matrix JSON: {e}")
    if not isinstance(rows, list) or not rows:
        raise UsageError("matrix must be a nonempty list of rows")
    n = len(rows)
    mat = []
    for row in rows:
        if not isinstance(row, list) or len(row) != n:
            raise UsageError("matrix must be square")
        if not all(isinstance(x, int) for x in row):
            raise UsageError("matrix entries must be integers")
        mat.append(tuple(x % ctx.p for x in row))
    mat = tuple(mat)
    for i in range(n):
        for j in range(n):
            if mat[i][j] != mat[j][i]:
                raise UsageError("matrix must be symmetric")
    return mat


def _qv_json(v):
    return {"a": str(v.a), "b": str(v.b)}


def cmd_eval(args) -> int:
    ctx = _context(args.p)
    budget = _budget(args)
    jobs = _jobs(args)
    if args.matrix is not None:
        mat = _parse_matrix(ctx, args.matrix)
        cls = classify(ctx, mat)
    else:
        if args.n is None or args.rank is None:
            raise UsageError("need --matrix or both --n and --rank")
        disc = _DISC_VALUES[args.disc]
        if args.n < 1 or not 0 <= args.rank <= args.n:
            raise UsageError("need n >= 1 and 0 <= rank <= n")
        if args.rank == 0 and disc == NONSQ:
            raise UsageError("rank 0 has no nonsquare class")
        cls = FormClass(args.n, args.rank, disc)
        mat = canonical_matrix(ctx, cls)
    r = args.restrict
    if r is not None and not 0 <= r <= cls.n:
        raise UsageError("--restrict must lie between 0 and n")
    try:
        if r is None:
            value = formulas.thm11_value(ctx, cls.n, cls.d, cls.disc)
        else:
            value = formulas.prop41_value(ctx, cls.n, cls.d, cls.disc, r)
    except ValueError as e:
        raise UsageError(str(e))
    emb = embed(value, ctx)
    out = {
        "p": ctx.p,
        "n": cls.n,
        "d": cls.d,
        "disc": _DISC_NAMES[cls.disc],
        "restrict": r,
        "value": _qv_json(value),
        "embedding": [str(c) for c in emb.coeffs],
        "oracle": None,
        "match": None,
    }
    code = 0
    try:
        if r is None:
            orc = oracle.gauss_twisted_bf(ctx, mat, budget, jobs)
        else:
            orc = oracle.gauss_restricted_bf(ctx, mat, r, budget, jobs)
        out["oracle"] = [str(c) for c in orc.coeffs]
        out["match"] = emb == orc
        code = 0 if out["match"] else 1
    except BudgetExceeded as e:
        out["skipped"] = str(e)
    print(json.dumps(out))
    return code


def _table_rows(ctx, max_n, restrict_all):
    for n in range(1, max_n + 1):
        for cls in all_classes(n):
            if cls.d == 0:
                continue
            if restrict_all:
                rs = range(0, n + 1)
            else:
                rs = (n,)
            for r in rs:
                if r == n and not restrict_all:
                    v = formulas.thm11_value(ctx, cls.n, cls.d, cls.disc)
                else:
                    v = formulas.prop41_value(ctx, cls.n, cls.d, cls.disc, r)
                yield {
                    "p": ctx.p,
                    "n": cls.n,
                    "d": cls.d,
                    "disc": _DISC_NAMES[cls.disc],
                    "r": r,
                    "a": str(v.a),
                    "b": str(v.b),
                }


def cmd_table(args) -> int:
    ctx = _context(args.p)
    if args.max_n < 1:
        raise UsageError("--max-n must be at least 1")
    rows = list(_table_rows(ctx, args.max_n, args.restrict_all))
    if args.format == "json":
        print(json.dumps(rows))
    elif args.format == "csv":
        print("p,n,d,disc,r,a,b")
        for row in rows:
            print(",".join(str(row[k]) for k in ("p", "n", "d", "disc", "r", "a", "b")))
    else:
        for row in rows:
            print(
                f"p={row['p']} n={row['n']} d={row['d']} disc={row['disc']} "
                f"r={row['r']} value={row['a']}+{row['b']}g"
            )
    return 0


def _inst_str(inst):
    return " ".join(f"{k}={v}" for k, v in inst.items())


def cmd_verify(args) -> int:
    if args.suites == "all":
        names = list(verify.SUITES)
    else:
        names = [s.strip() for s in args.suites.split(",") if s.strip()]
        for s in names:
            if s not in verify.SUITES:
                raise UsageError(f"unknown suite {s!r}")
    primes = None
    if args.primes is not None:
        try:
            primes = [int(x) for x in args.primes.split(",") if x.strip()]
        except ValueError:
            raise UsageError("--primes must be a comma-separated integer list")
        for p in primes:
            _context(p)
    budget = _budget(args)
    jobs = _jobs(args)
    passed = failed = skipped = 0
    for name in names:
        reports = verify.run_suite(
            name, primes=primes, max_n=args.max_n, budget=budget, jobs=jobs
        )
        for rep in reports:
            if rep.skipped:
                skipped += 1
            elif rep.match:
                passed += 1
            else:
                failed += 1
            if args.format == "json":
                print(json.dumps(rep.to_json()))
            elif args.format == "csv":
                print(
                    f"{rep.suite},{_inst_str(rep.instance).replace(' ', ';')},"
                    f"\"{rep.lhs}\",\"{rep.rhs}\",{rep.match},{rep.skipped},"
                    f"{rep.elapsed:.6f}"
                )
            else:
                tag = "SKIP" if rep.skipped else ("PASS" if rep.match else "FAIL")
                line = f"[{tag}] {rep.suite} {_inst_str(rep.instance)}"
                if rep.skipped:
                    line += f" ({rep.reason})"
                elif not rep.match:
                    line += f" lhs={rep.lhs} rhs={rep.rhs}"
                print(line)
    summary = {"passed": passed, "failed": failed, "skipped": skipped}
    if args.format == "json":
        print(json.dumps({"summary": summary}))
    else:
        print(f"passed {passed} failed {failed} skipped {skipped}")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isogauss",
        description="Exact twisted Gauss sums of symmetric matrix arguments",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    pe = sub.add_parser("eval", help="evaluate one class, cross-check the oracle")
    pe.add_argument("--p", type=int, required=True)
    pe.add_argument("--matrix", type=str, help="symmetric matrix as JSON rows")
    pe.add_argument("--n", type=int)
    pe.add_argument("--rank", type=int)
    pe.add_argument("--disc", choices=("sq", "nonsq"), default="sq")
    pe.add_argument("--restrict", type=int, default=None)
    pe.add_argument("--max-terms", type=int, default=None)
    pe.add_argument("--jobs", type=int, default=None)
    pe.set_defaults(func=cmd_eval)

    pt = sub.add_parser("table", help="closed-form values over all classes")
    pt.add_argument("--p", type=int, required=True)
    pt.add_argument("--max-n", type=int, required=True)
    pt.add_argument("--format", choices=("json", "csv", "text"), default="text")
    pt.add_argument("--restrict-all", action="store_true")
    pt.set_defaults(func=cmd_table)

    pv = sub.add_parser("verify", help="run identity suites")
    pv.add_argument("--suites", type=str, default="all")
    pv.add_argument("--primes", type=str, default=None)
    pv.add_argument("--max-n", type=int, default=None)
    pv.add_argument("--format", choices=("json", "csv", "text"), default="text")
    pv.add_argument("--max-terms", type=int, default=None)
    pv.add_argument("--jobs", type=int, default=None)
    pv.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
