"""Command-line entry point.

Exit codes: 0 success, 2 usage error, 3 when an identity check is refuted.
Reports go to stdout as JSON (one object per line); diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Any

from . import __version__, _accel
from . import density as dens
from . import fibcore, identities, randomfib, realbase, words, zeckendorf
from .fibcore import FibConvention
from .identities import IdentityReport, Interval
from .quadratic import QuadraticReal, to_decimal_str

SEED_ENV = "FIBTOOLS_SEED"
EXIT_USAGE = 2
EXIT_REFUTED = 3


class UsageError(Exception):
    pass


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return value


def _seed(text: str) -> int:
    value = _natural(text)
    if value >= 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return _seed(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{SEED_ENV}: {exc}") from None


# ------------------------------------------------------------------ encoding


def _encode(value: Any, precision: int) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return {"exact": str(value), "approx": to_decimal_str(value, precision)}
    if isinstance(value, QuadraticReal):
        return {"exact": str(value), "approx": to_decimal_str(value, precision)}
    if isinstance(value, Interval):
        return {"lo": _encode(value.lo, precision), "hi": _encode(value.hi, precision)}
    if isinstance(value, FibConvention):
        return value.value
    if isinstance(value, dict):
        return {str(k): _encode(v, precision) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v, precision) for v in value]
    if hasattr(value, "value") and isinstance(value.value, str):
        return value.value
    return str(value)


class Emitter:
    def __init__(self, args: argparse.Namespace, command: str):
        self.args = args
        self.command = command
        self.precision = args.precision

    def header(self, params: dict[str, Any], convention: str | None = None) -> dict[str, Any]:
        head: dict[str, Any] = {
            "tool": "fibtools",
            "version": __version__,
            "subcommand": self.command,
            "params": params,
        }
        if convention is not None:
            head["convention"] = convention
        return head

    def json(self, payload: dict[str, Any]) -> None:
        encoded = _encode(payload, self.precision)
        sys.stdout.write(json.dumps(encoded, sort_keys=True, ensure_ascii=False) + "\n")

    def plain(self, text: str) -> None:
        sys.stdout.write(text + "\n")


def _report_payload(em: Emitter, rep: IdentityReport) -> dict[str, Any]:
    body = em.header(rep.params, rep.convention.value)
    body.update(
        identity=rep.identity,
        lhs=rep.lhs,
        rhs=rep.rhs,
        verdict=rep.verdict.value,
        witness=rep.witness,
        tail_bound=rep.tail_bound,
        details=rep.details,
    )
    return body


# ------------------------------------------------------------------ handlers


def cmd_fib(args, em: Emitter) -> int:
    conv = FibConvention.parse(args.convention)
    if args.action == "value":
        result = {"n": args.n, "value": fibcore.fib(args.n, conv)}
        params, convention = {"n": args.n}, conv.value
    elif args.action == "rbonacci":
        if args.r < 2:
            raise UsageError("--r must be at least 2")
        result = {"value": fibcore.order_r_fib(args.r, args.n)}
        params, convention = {"r": args.r, "n": args.n}, None
    elif args.action == "pisano":
        if args.m < 1:
            raise UsageError("--m must be positive")
        result = {"period": fibcore.pisano_period(args.m), "residues": sorted(fibcore.fib_residues(args.m))}
        params, convention = {"m": args.m}, "classic"
    else:
        if args.count < 1:
            raise UsageError("--count must be positive")
        result = {"convergents": fibcore.sqrt5_convergents(args.count)}
        params, convention = {"count": args.count}, None
    if args.format == "plain":
        em.plain(" ".join(str(v) for v in result.values()))
    else:
        em.json({**em.header(params, convention), **result})
    return 0


def cmd_zeckendorf(args, em: Emitter) -> int:
    if args.action == "encode":
        if args.value < 1:
            raise UsageError("--value must be at least 1")
        rep = zeckendorf.encode(args.value)
    else:
        try:
            coefficients = tuple(int(c) for c in reversed(args.digits.strip()))
            value = zeckendorf.decode(coefficients)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rep = zeckendorf.ZeckendorfRep(coefficients, value)
    if args.format == "plain":
        em.plain(f"{rep.value} {rep}")
    else:
        params = {"value": args.value} if args.action == "encode" else {"digits": args.digits}
        em.json(
            {
                **em.header(params, "shifted"),
                "value": rep.value,
                "digits": str(rep),
                "indices": list(rep.indices),
                "terms": [fibcore.fib(s, "shifted") for s in rep.indices],
            }
        )
    return 0


def cmd_realrep(args, em: Emitter) -> int:
    try:
        value = realbase.parse_real(args.value)
        base = realbase.parse_real(args.base) if args.base != "fib" else None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    params = {"base": args.base, "value": args.value, "digits": args.digits}
    if base is None:
        if value < 0:
            raise UsageError("--value must be non-negative")
        rep = realbase.fib_fraction_digits(value, args.digits)
        partial = realbase.fib_fraction_partial(rep)
        body = {"integer_part": rep.integer_part, "digits": list(rep.digits), "partial_sum": partial}
        convention = "shifted"
    else:
        if not 0 <= value < 1:
            raise UsageError("--value must lie in [0, 1)")
        if not base > 1:
            raise UsageError("--base must exceed 1")
        exp = realbase.theta_digits(value, base, args.digits)
        partial = realbase.theta_partial_sum(exp)
        body = {"digits": list(exp.digits), "partial_sum": partial}
        convention = None
    if args.format == "plain":
        em.plain(" ".join(str(d) for d in body["digits"]))
    else:
        em.json({**em.header(params, convention), **body})
    return 0


def cmd_randomfib(args, em: Emitter) -> int:
    if args.action == "mc":
        try:
            est = randomfib.estimate_viswanath(args.n, args.trials, args.seed, workers=args.workers)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        params = {"n": args.n, "trials": args.trials, "seed": args.seed}
        if args.format == "plain":
            em.plain(f"{est.estimate:.{em.precision}f}")
        else:
            body = est.to_dict()
            body["randomness"] = {"generator": "splitmix64", "master_seed": args.seed}
            em.json({**em.header(params), **body})
    elif args.action == "exact":
        try:
            value = randomfib.exact_expectation(args.n, cap=args.cap)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        params = {"n": args.n, "cap": args.cap}
        if args.format == "plain":
            em.plain(str(value))
        else:
            em.json(
                {
                    **em.header(params),
                    "expected_abs": value,
                    "nth_root": float(value) ** (1.0 / args.n),
                }
            )
    else:
        try:
            tol = Fraction(args.tol)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad tolerance {args.tol!r}") from None
        if tol <= 0:
            raise UsageError("--tol must be positive")
        res = randomfib.rittaud_root(tol)
        digits = max(em.precision, len(str(tol.denominator)))
        if args.format == "plain":
            em.plain(to_decimal_str(res.root, digits))
        else:
            em.json(
                {
                    **em.header({"tol": args.tol}),
                    "root": to_decimal_str(res.root, digits),
                    "root_minus_one": to_decimal_str(res.growth_limit, digits),
                    "bracket": [res.lo, res.hi],
                    "iterations": res.iterations,
                    "note": "the limit of E|t_n|^(1/n) is reported as root - 1; "
                    "the root of x^3 - 2x^2 - 1 itself is about 2.2056",
                }
            )
    return 0


def _parse_set(text: str) -> dens.IntegerSet:
    if text == "fib":
        return dens.IntegerSet.fibonacci()
    if text == "evil":
        return dens.IntegerSet.gelfond()
    if text.startswith("file:"):
        try:
            return dens.IntegerSet.from_file(text[len("file:") :])
        except OSError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"unknown set {text!r}; use fib, evil or file:<path>")


def cmd_density(args, em: Emitter) -> int:
    if args.action == "profile":
        s = _parse_set(args.set)
        try:
            points = [int(x) for x in args.points.split(",") if x.strip()]
            prof = dens.density_profile(s, points)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.format in ("csv", "plain"):
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["x", "count", "ratio", "ratio_decimal", "tail_min", "tail_max"])
            for x, c, r, lo, hi in prof.rows():
                writer.writerow([x, c, str(r), to_decimal_str(r, em.precision), str(lo), str(hi)])
            sys.stdout.write(buf.getvalue())
        else:
            body = {
                "set": args.set,
                "rows": [
                    {"x": x, "count": c, "ratio": r, "tail_min": lo, "tail_max": hi}
                    for x, c, r, lo, hi in prof.rows()
                ],
            }
            if s.kind is dens.SetKind.FIBONACCI:
                body["log_bounds"] = [dens.fib_count_bounds(x) for x in prof.points]
            em.json({**em.header({"set": args.set, "points": list(prof.points)}), **body})
    else:
        try:
            res = dens.fib_residue_density(args.p, args.exponent)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.format == "plain":
            em.plain(str(res.density))
        else:
            em.json(
                {
                    **em.header({"p": args.p, "lambda": args.exponent}, "classic"),
                    "modulus": res.modulus,
                    "period": res.period,
                    "count": res.count,
                    "density": res.density,
                }
            )
    return 0


def cmd_words(args, em: Emitter) -> int:
    if args.action == "generate":
        preset = args.preset
        if preset == "fib":
            w = words.morphic_prefix(words.FIBONACCI, 0, args.length)
        elif preset == "thue-morse":
            w = words.morphic_prefix(words.THUE_MORSE, 0, args.length)
        elif preset.startswith("kfib:"):
            try:
                k = int(preset[len("kfib:") :])
            except ValueError:
                raise UsageError(f"bad preset {preset!r}") from None
            if k < 1:
                raise UsageError("k must be positive")
            n = 1
            w = words.kfib_word(k, 1)
            while len(w) < args.length:
                n += 1
                w = words.kfib_word(k, n)
            w = w[: args.length]
        else:
            raise UsageError(f"unknown preset {preset!r}")
        if args.format == "plain":
            em.plain(str(w))
        else:
            em.json({**em.header({"preset": preset, "length": args.length}), "word": str(w)})
    elif args.action == "balanced":
        try:
            rep = words.is_balanced(words.Word.from_string(args.word, 2))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        witness = None if rep.witness is None else [str(x) for x in rep.witness]
        if args.format == "plain":
            em.plain("balanced" if rep.balanced else f"unbalanced {witness[0]} {witness[1]}")
        else:
            em.json({**em.header({"word": args.word}), "balanced": rep.balanced, "witness": witness})
    else:
        try:
            if args.method == "brute":
                count = words.count_balanced_bruteforce(args.n)
            else:
                if args.n < 1:
                    raise UsageError("--n must be at least 1 for the formula")
                count = words.balanced_formula(args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.format == "plain":
            em.plain(str(count))
        else:
            em.json({**em.header({"n": args.n, "method": args.method}), "count": count})
    return 0


def cmd_identities(args, em: Emitter) -> int:
    if args.action == "sweep":
        reports = list(identities.sweep())
    else:
        try:
            reports = [_run_identity(args)]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    for rep in reports:
        em.json(_report_payload(em, rep))
    return EXIT_REFUTED if any(r.refuted for r in reports) else 0


def _run_identity(args) -> IdentityReport:
    need = {
        "reciprocal": ("k", "terms"),
        "symmetry": ("a", "b"),
        "sqrt5cf": ("terms",),
        "dflemma": ("k", "n"),
    }[args.id]
    missing = [f"--{name}" for name in need if getattr(args, name) is None]
    if missing:
        raise UsageError(f"identity {args.id} needs {', '.join(missing)}")
    if args.id == "reciprocal":
        return identities.check_reciprocal_sum(args.k, args.terms)
    if args.id == "symmetry":
        return identities.check_symmetry(args.a, args.b)
    if args.id == "sqrt5cf":
        return identities.check_sqrt5_cf(args.terms)
    return identities.check_df_lemma(args.k, args.n, args.convention)


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "plain"], default="json")
    common.add_argument("--precision", type=_natural, default=12, help="decimal digits shown")
    common.add_argument("--workers", type=_natural, default=None, help="numba threads")
    common.add_argument("--convention", choices=["classic", "shifted"], default="classic")

    parser = argparse.ArgumentParser(prog="fibtools", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"fibtools {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    fib = sub.add_parser("fib", help="Fibonacci numbers and friends").add_subparsers(dest="action", required=True)
    p = fib.add_parser("value", parents=[common])
    p.add_argument("--n", type=_natural, required=True)
    p = fib.add_parser("rbonacci", parents=[common])
    p.add_argument("--r", type=_natural, required=True)
    p.add_argument("--n", type=_natural, required=True)
    p = fib.add_parser("pisano", parents=[common])
    p.add_argument("--m", type=_natural, required=True)
    p = fib.add_parser("convergents", parents=[common])
    p.add_argument("--count", type=_natural, required=True)

    zk = sub.add_parser("zeckendorf", help="Zeckendorf encode/decode").add_subparsers(dest="action", required=True)
    p = zk.add_parser("encode", parents=[common])
    p.add_argument("--value", type=_natural, required=True)
    p = zk.add_parser("decode", parents=[common])
    p.add_argument("--digits", required=True, help="0/1 string, most significant first")

    p = sub.add_parser("realrep", parents=[common], help="digit expansions in base theta or over 1/F_k")
    p.add_argument("--base", required=True, help="rational, phi, a+b*sqrt5, or fib")
    p.add_argument("--value", required=True)
    p.add_argument("--digits", type=_natural, default=20)

    rf = sub.add_parser("randomfib", help="random Fibonacci sequences").add_subparsers(dest="action", required=True)
    p = rf.add_parser("mc", parents=[common])
    p.add_argument("--n", type=_natural, required=True)
    p.add_argument("--trials", type=_natural, required=True)
    p.add_argument("--seed", type=_seed, default=None)
    p = rf.add_parser("exact", parents=[common])
    p.add_argument("--n", type=_natural, required=True)
    p.add_argument("--cap", type=_natural, default=randomfib.DEFAULT_EXACT_CAP)
    p = rf.add_parser("root", parents=[common])
    p.add_argument("--tol", default="1e-9")

    de = sub.add_parser("density", help="counting functions and densities").add_subparsers(dest="action", required=True)
    p = de.add_parser("profile", parents=[common])
    p.add_argument("--set", required=True, help="fib, evil or file:<path>")
    p.add_argument("--points", required=True, help="comma-separated sample points")
    p = de.add_parser("fibmod", parents=[common])
    p.add_argument("--p", type=_natural, required=True)
    p.add_argument("--lambda", dest="exponent", type=_natural, required=True)

    wd = sub.add_parser("words", help="morphic words and balance").add_subparsers(dest="action", required=True)
    p = wd.add_parser("generate", parents=[common])
    p.add_argument("--preset", required=True, help="fib, thue-morse or kfib:<k>")
    p.add_argument("--length", type=_natural, required=True)
    p = wd.add_parser("balanced", parents=[common])
    p.add_argument("--word", required=True)
    p = wd.add_parser("count", parents=[common])
    p.add_argument("--n", type=_natural, required=True)
    p.add_argument("--method", choices=["formula", "brute"], default="formula")

    ids = sub.add_parser("identities", help="exact identity checks").add_subparsers(dest="action", required=True)
    p = ids.add_parser("check", parents=[common])
    p.add_argument("--id", required=True, choices=["reciprocal", "symmetry", "sqrt5cf", "dflemma"])
    for name in ("k", "n", "a", "b", "terms"):
        p.add_argument(f"--{name}", type=_natural, default=None)
    ids.add_parser("sweep", parents=[common])
    return parser


HANDLERS = {
    "fib": cmd_fib,
    "zeckendorf": cmd_zeckendorf,
    "realrep": cmd_realrep,
    "randomfib": cmd_randomfib,
    "density": cmd_density,
    "words": cmd_words,
    "identities": cmd_identities,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = f"{args.command} {getattr(args, 'action', '')}".strip()
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        if args.format == "csv" and command != "density profile":
            raise UsageError("csv output is only available for density profile")
        _accel.set_workers(args.workers)
        return HANDLERS[args.command](args, Emitter(args, command))
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"fibtools: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
