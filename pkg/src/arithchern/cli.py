"""Command-line driver.

    arithchern curvature --kind curvature --n 2 --q split-alt --p 3 --p2 5 --order 5
    arithchern oneprime --q file:form.json --p 3 --precision 5
    arithchern verify --suite all --primes 3,5,7

Exit codes: 0 success, 1 usage error, 2 mathematical violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .chern import FormMatrix, InvalidForm, load_form, split_form
from .curvature import CurvatureReport, curvature11, curvature2, curvature3
from .oneprime import lhs_engine, rhs_sunny
from .reduced import so_curvature
from .series import DivisibilityViolation
from .unitary import unitary_curvature
from .verify import TARGETS, get_target, run_target

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2
THREADS_ENV = "ARITHCHERN_THREADS"

_Q_KINDS = {
    "split-sym": lambda n: split_form("split-sym-even" if n % 2 == 0 else "split-sym-odd", n),
    "split-alt": lambda n: split_form("symplectic", n),
    "split-odd": lambda n: split_form("split-sym-odd", n),
    "identity": lambda n: split_form("identity", n),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _primes(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of primes: {text!r}") from None
    for p in out:
        if p < 3 or p % 2 == 0 or any(p % d == 0 for d in range(3, int(p ** 0.5) + 1, 2)):
            raise argparse.ArgumentTypeError(f"{p} is not an odd prime")
    return out


def resolve_form(spec: str, n: int | None) -> FormMatrix:
    if spec.startswith("file:"):
        q = load_form(spec[5:])
        if n is not None and q.n != n:
            raise UsageError(f"--n {n} does not match the form file (n={q.n})")
        return q
    if spec not in _Q_KINDS:
        raise UsageError(f"unknown form {spec!r}; use one of {', '.join(_Q_KINDS)} or file:PATH")
    if n is None:
        raise UsageError("--n is required for named forms")
    return _Q_KINDS[spec](n)


def report_emit(report: CurvatureReport, fmt: str) -> bytes:
    """Byte-stable serialisation: sorted keys, canonical num/den rationals."""
    if fmt == "json":
        return (json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n").encode()
    return (report.to_text() + "\n").encode()


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for --kind {args.kind}")


def cmd_curvature(args) -> CurvatureReport:
    kind = args.kind
    _need(args, "p")
    if kind == "so":
        _need(args, "p2", "n")
        return so_curvature(args.n, args.p, args.p2, args.order)
    if kind == "unitary":
        _need(args, "p2")
        return unitary_curvature(args.p, args.p2, args.order)
    q = resolve_form(args.q, args.n)
    if kind == "curvature":
        _need(args, "p2")
        if args.p == args.p2:
            raise UsageError("curvature needs --p != --p2")
        return curvature2(q, args.p, args.p2, args.order)
    if kind == "three":
        _need(args, "p2", "p3")
        if args.p2 == args.p3:
            raise UsageError("3-curvature needs --p2 != --p3")
        return curvature3(q, args.p, args.p2, args.p3, args.order)
    if kind == "mixed":
        p2 = args.p2 if args.p2 is not None else args.p
        return curvature11(q, args.p, p2, args.order)
    raise UsageError(f"unknown kind {kind!r}")


def cmd_oneprime(args) -> dict:
    q = resolve_form(args.q, args.n)
    k = args.precision
    rhs = rhs_sunny(q, args.p, k)
    lhs = lhs_engine(q, args.p, args.order, k).value
    digits = k - 1
    return {
        "p": args.p,
        "n": q.n,
        "digits": digits,
        "closed_form": rhs.residues(),
        "engine": lhs.residues(),
        "agree": rhs.congruent(lhs, digits),
        "vanishes": rhs.is_zero_mod(digits),
    }


def _run_one(args):
    tid, primes = args
    return tid, run_target(tid, primes)


def cmd_verify(args) -> tuple[bool, list]:
    ids = [t.id for t in TARGETS] if args.suite == ["all"] else args.suite
    for tid in ids:
        try:
            get_target(tid)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    primes = args.primes
    if len(primes) < 3:
        raise UsageError("--primes needs at least three primes")
    threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    work = [(tid, primes) for tid in ids]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = dict(pool.map(_run_one, work))
    else:
        results = dict(map(_run_one, work))
    rows = [(tid, *results[tid]) for tid in sorted(ids)]
    return all(ok for _, ok, _ in rows), rows


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arithchern", description="Curvature of arithmetic Chern connections.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("curvature", help="compute a curvature report")
    c.add_argument("--kind", required=True, choices=["curvature", "three", "mixed", "so", "unitary"])
    c.add_argument("--n", type=int)
    c.add_argument("--q", default="split-sym", help="split-sym, split-alt, split-odd, identity or file:PATH")
    c.add_argument("--p", type=int)
    c.add_argument("--p2", type=int)
    c.add_argument("--p3", type=int)
    c.add_argument("--order", type=int, required=True)
    c.add_argument("--precision", type=int, default=None, help="accepted for symmetry with oneprime")
    c.add_argument("--format", choices=["json", "text"], default="text")

    o = sub.add_parser("oneprime", help="one-prime (1,1)-curvature at the identity")
    o.add_argument("--q", required=True)
    o.add_argument("--n", type=int)
    o.add_argument("--p", type=int, required=True)
    o.add_argument("--order", type=int, default=2)
    o.add_argument("--precision", type=int, default=5)
    o.add_argument("--format", choices=["json", "text"], default="text")

    v = sub.add_parser("verify", help="run verification targets")
    v.add_argument("--suite", nargs="+", default=["all"])
    v.add_argument("--primes", type=_primes, default=[3, 5, 7])
    v.add_argument("--json", action="store_true")
    v.add_argument("--list", action="store_true", help="print the target coverage listing and exit")
    return parser


def _coverage() -> str:
    return "\n".join(f"{t.id:<10} [{t.expected}] {t.statement}" for t in TARGETS)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "curvature":
            for name in ("p", "p2", "p3"):
                val = getattr(args, name)
                if val is not None:
                    _primes(str(val))
            if args.order < 0:
                raise UsageError("--order must be non-negative")
            report = cmd_curvature(args)
            out.write(report_emit(report, args.format).decode())
            return EXIT_OK
        if args.command == "oneprime":
            _primes(str(args.p))
            if args.precision < 2:
                raise UsageError("--precision must be at least 2")
            res = cmd_oneprime(args)
            if args.format == "json":
                out.write(json.dumps(res, sort_keys=True, indent=2) + "\n")
            else:
                out.write(
                    f"p={res['p']} n={res['n']} mod p^{res['digits']}\n"
                    f"closed form: {res['closed_form']}\n"
                    f"engine:      {res['engine']}\n"
                    f"agree: {res['agree']}  vanishes: {res['vanishes']}\n"
                )
            return EXIT_OK if res["agree"] else EXIT_VIOLATION
        if args.list:
            out.write(_coverage() + "\n")
            return EXIT_OK
        ok, rows = cmd_verify(args)
        if args.json:
            payload = {
                "primes": args.primes,
                "results": [{"id": tid, "pass": good, "detail": detail} for tid, good, detail in rows],
                "all_pass": ok,
            }
            out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        else:
            for tid, good, detail in rows:
                out.write(f"{'PASS' if good else 'FAIL'} {tid}: {detail}\n")
            out.write("\ncoverage:\n" + _coverage() + "\n")
        return EXIT_OK if ok else EXIT_VIOLATION
    except (UsageError, InvalidForm, argparse.ArgumentTypeError, FileNotFoundError) as exc:
        sys.stderr.write(f"arithchern: error: {exc}\n")
        return EXIT_USAGE
    except DivisibilityViolation as exc:
        sys.stderr.write(f"arithchern: divisibility violation: {exc}\n")
        return EXIT_VIOLATION
    except ValueError as exc:
        sys.stderr.write(f"arithchern: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
