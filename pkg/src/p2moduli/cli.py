"""Command-line entry point: classify, reduce, kronecker, chi, sample, verify.

Exit codes: 0 success, 1 mathematical error or failed verification (the
error class name goes to stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .beilinson import save_rep, sample_rep
from .chern import ChernData, chi_twist, natural_cohomology
from .errors import NoValidTwist, P2ModuliError
from .exactlin import DEFAULT_PRIME, FieldSpec
from .kronecker import kron_decompose
from .oracle import SUITES, VerifyConfig, verify_suite
from .quivercore import parse_dimvec
from .reduction import classify, reduce

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _dim_arg(length):
    def parse(text):
        try:
            return parse_dimvec(text, length)
        except ValueError as err:
            raise argparse.ArgumentTypeError(str(err)) from None

    parse.__name__ = f"dimvec{length}"
    return parse


def _positive(text):
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if val < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {val}")
    return val


def _seed(text):
    try:
        val = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= val < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return val


def _add_chern(p):
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--c1", type=int, required=True)
    p.add_argument("--c2", type=int, required=True)


def _add_random(p, trials=True):
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=_seed, default=0)
    if trials:
        p.add_argument("--trials", type=_positive, default=100)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="p2moduli", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="depth, matrix normal form and rationality of (r, c1, c2)")
    _add_chern(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--verify", action="store_true", help="certify the hypothesis by sampling")
    _add_random(p)

    p = sub.add_parser("reduce", help="run the reduction engine on a dimension vector")
    p.add_argument("--alpha", type=_dim_arg(3), required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("kronecker", help="canonical decomposition for the u-arrow Kronecker quiver")
    p.add_argument("--arrows", type=int, required=True)
    p.add_argument("--dim", type=_dim_arg(2), required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("chi", help="Euler characteristic of E(j)")
    _add_chern(p)
    p.add_argument("--twist", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sample", help="write a random representation to a JSON file")
    p.add_argument("--alpha", type=_dim_arg(3), required=True)
    _add_random(p, trials=False)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="run a randomised verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    _add_random(p)
    p.add_argument("--size-cap", type=_positive, default=5)
    p.add_argument("--arrows", type=int, default=None, help="pin u (kronecker suite)")
    p.add_argument("--dim", default=None, help="pin the dimension vector (kronecker, reduction suites)")
    p.add_argument("--json", action="store_true")
    return parser


def _chern(args) -> ChernData:
    if args.rank < 1:
        raise _UsageError(f"--rank must be positive, got {args.rank}")
    return ChernData(args.rank, args.c1, args.c2)


def _field(prime: int) -> FieldSpec:
    try:
        return FieldSpec.prime(prime)
    except ValueError as err:
        raise _UsageError(str(err)) from None


def _emit(obj: dict) -> None:
    print(json.dumps(obj, sort_keys=False))


def _print_steps(steps) -> None:
    for k, step in enumerate(steps, 1):
        st, dec = step.before, step.decomp
        line = (f"  step {k}: inner ({st.inner.x},{st.inner.y}) over Q({st.t}) "
                f"outer {st.outer_type}x{st.outer_mult} [{st.side.value}] -> {dec.verdict.value}")
        if step.terminal:
            line += f", type {step.terminal_type}"
        else:
            line += f" mults ({dec.mult_low},{dec.mult_high})"
        print(line)


def _print_warnings(warnings) -> None:
    for w in warnings:
        print(f"warning: {w}")


def _cmd_classify(args) -> int:
    ch = _chern(args)
    verification = None
    certified = False
    if args.verify:
        from .chern import normalize_twist

        _field(args.prime)
        alpha = normalize_twist(ch).alpha
        cfg = VerifyConfig("reduction", prime=args.prime, seed=args.seed, trials=args.trials, dim=tuple(alpha))
        vrep = verify_suite(cfg)
        certified = vrep.passed
        verification = {"seed": args.seed, "prime": args.prime, **vrep.to_dict()}
    report = classify(ch, certified=certified)
    report.verification = verification
    if args.json:
        _emit(report.to_dict())
    else:
        tw = report.twist
        print(f"chern: r={ch.r} c1={ch.c1} c2={ch.c2}")
        print(f"twist: t={tw.t} alpha=({tw.alpha})")
        print(f"depth: {report.depth}")
        _print_steps(report.reduction.steps)
        print(f"matrix_size: {report.matrix_size}")
        print(f"matrix_count: {report.matrix_count if report.matrix_count is not None else 'n/a'}")
        print(f"rationality: {report.rationality.value}")
        if verification is not None:
            print(f"verification: seed={args.seed} prime={args.prime} "
                  f"{'pass' if certified else 'FAIL'} ({verification['generic_rate']:.0%} generic)")
        _print_warnings(report.reduction.warnings)
    if verification is not None and not certified:
        print("VerificationFailed: sampled representations do not certify the hypothesis", file=sys.stderr)
        return EXIT_MATH
    return EXIT_OK


def _cmd_reduce(args) -> int:
    if sum(args.alpha) == 0:
        raise _UsageError("--alpha must be nonzero")
    rep = reduce(args.alpha)
    if args.json:
        _emit(rep.to_dict())
    else:
        print(f"alpha: ({rep.alpha})")
        _print_steps(rep.steps)
        print(f"matrix_size: {rep.h}")
        print(f"matrix_count: {rep.matrix_count if rep.matrix_count is not None else 'n/a'}")
        _print_warnings(rep.warnings)
    return EXIT_OK


def _cmd_kronecker(args) -> int:
    if args.arrows < 0:
        raise _UsageError("--arrows must be non-negative")
    dec = kron_decompose(args.arrows, args.dim)
    if args.json:
        _emit(dec.to_dict())
    else:
        for key, val in dec.to_dict().items():
            if isinstance(val, list):
                val = ",".join(map(str, val))
            print(f"{key}: {val}")
    return EXIT_OK


def _cmd_chi(args) -> int:
    ch = _chern(args)
    chi = chi_twist(ch, args.twist)
    try:
        coh = natural_cohomology(ch, args.twist)
    except NoValidTwist:
        coh = None
    if args.json:
        _emit({"chern": ch.to_dict(), "twist": args.twist, "chi": chi,
               "natural_cohomology": list(coh) if coh is not None else None})
    else:
        print(f"chi: {chi}")
        if coh is not None:
            print(f"natural_cohomology: h0={coh[0]} h1={coh[1]} h2={coh[2]}")
    return EXIT_OK


def _cmd_sample(args) -> int:
    F = _field(args.prime)
    R = sample_rep(args.alpha, F, args.seed)
    save_rep(R, args.out)
    print(f"seed: {args.seed}")
    print(f"wrote {args.alpha} over F_{args.prime} to {args.out}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    _field(args.prime)
    dim = None
    if args.dim is not None:
        if args.suite not in ("kronecker", "reduction"):
            raise _UsageError("--dim applies to the kronecker and reduction suites only")
        try:
            dim = tuple(parse_dimvec(args.dim, 2 if args.suite == "kronecker" else 3))
        except ValueError as err:
            raise _UsageError(str(err)) from None
        if args.suite == "kronecker" and args.arrows is None:
            raise _UsageError("--dim for the kronecker suite needs --arrows")
    if args.arrows is not None and (args.suite != "kronecker" or args.arrows < 0):
        raise _UsageError("--arrows must be non-negative and applies to the kronecker suite only")
    cfg = VerifyConfig(args.suite, prime=args.prime, seed=args.seed, trials=args.trials,
                       size_cap=args.size_cap, arrows=args.arrows, dim=dim)
    rep = verify_suite(cfg)
    if args.json:
        _emit({"seed": args.seed, "prime": args.prime, **rep.to_dict()})
    else:
        print(f"suite: {rep.suite}  seed: {args.seed}  prime: {args.prime}  trials: {rep.trials}")
        print(f"exact checks: {rep.exact_checks}  failures: {rep.exact_failures}")
        print(f"generic checks: {rep.generic_checks}  misses: {rep.generic_misses}  "
              f"rate: {rep.generic_rate:.1%} (need {rep.threshold:.0%})")
        if rep.skipped:
            print(f"skipped trials: {rep.skipped}")
        for f in rep.failures:
            kind = "exact" if f.exact else "generic"
            print(f"  [{kind}] trial {f.trial} seed {f.seed}: {f.description}")
        print("PASS" if rep.passed else "FAIL")
    return EXIT_OK if rep.passed else EXIT_MATH


_COMMANDS = {
    "classify": _cmd_classify,
    "reduce": _cmd_reduce,
    "kronecker": _cmd_kronecker,
    "chi": _cmd_chi,
    "sample": _cmd_sample,
    "verify": _cmd_verify,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as err:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except P2ModuliError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_MATH
    except OSError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_MATH


def main() -> None:
    sys.exit(run())
