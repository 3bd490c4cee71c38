# Command-line front end for the polymzv engine.
#
#   polymzv word eval 110
#   polymzv poset eval samples/example3.json
#   polymzv beta '[[2,1],[3,1]]'
#   polymzv verify all
#
# Every command writes JSON (default) or plain text to stdout.  Domain errors
# go to stderr as {"error": {"type", "message"}} with exit code 1; malformed
# arguments exit with 2.

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import mpmath

from . import beta, numeric, polylog, poset, regularization, verify, words
from .errors import InvalidInput, PolyMZVError, UnknownCatalog

ENV_PREFIX = "POLYMZV_"

# global flag -> (environment variable suffix, type, default)
_GLOBALS = {
    "tol": ("TOL", float, 1e-20),
    "prec_bits": ("PREC_BITS", int, 128),
    "max_terms": ("MAX_TERMS", int, 100_000),
    "max_extensions": ("MAX_EXTENSIONS", int, poset.DEFAULT_MAX_EXTENSIONS),
    "format": ("FORMAT", str, "json"),
    "split": ("SPLIT", str, "1/2"),
}

# input problems the caller can fix by changing arguments
_USAGE_ERRORS = (InvalidInput, UnknownCatalog)


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # on subparsers the defaults are suppressed so a flag given before the
    # subcommand is not overwritten by the subparser's default
    default = argparse.SUPPRESS if suppress else None
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--tol", type=float, default=default, help="numeric target tolerance (default 1e-20)")
    g.add_argument("--prec-bits", type=int, default=default, help="working precision in bits (default 128)")
    g.add_argument("--max-terms", type=int, default=default, help="series term cap (default 100000)")
    g.add_argument("--max-extensions", type=int, default=default, help="linear extension enumeration cap")
    g.add_argument("--format", choices=["json", "text"], default=default, help="output format")
    g.add_argument("--split", default=default, help="interior split point for word evaluation (default 1/2)")
    return p


def build_parser() -> argparse.ArgumentParser:
    shared = _global_flags(suppress=True)
    ap = argparse.ArgumentParser(
        prog="polymzv",
        description="Exact MZV evaluation of poset integrals and polylog integrands, with numeric verification.",
        parents=[_global_flags(suppress=False)],
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("word", parents=[shared], help="numeric value of a convergent word")
    p.add_argument("action", choices=["eval"])
    p.add_argument("word", help="word over 0 (dt/t) and 1 (dt/(1-t)), e.g. 110, or a composition like zeta(1,2)")

    p = sub.add_parser("shuffle", parents=[shared], help="shuffle product of two words")
    p.add_argument("u")
    p.add_argument("v")

    p = sub.add_parser("reg", parents=[shared], help="shuffle-regularized value of a word")
    p.add_argument("word")

    p = sub.add_parser("poset", parents=[shared], help="poset integrals")
    p.add_argument("action", choices=["eval", "extensions", "check"])
    p.add_argument("file", help="poset JSON file, or - for stdin")

    p = sub.add_parser("polylog", parents=[shared], help="integrals of products of polylogarithms")
    p.add_argument("action", choices=["build", "eval", "eval-reg"])
    p.add_argument("file", help="integrand JSON file, or - for stdin")

    p = sub.add_parser("beta", parents=[shared], help="exact multiple Beta value")
    p.add_argument("index", help="JSON list of [alpha, beta] pairs, e.g. [[2,1],[3,1]]")

    p = sub.add_parser("series", parents=[shared], help="exact partial sums of the series families")
    p.add_argument("action", choices=["partial"])
    p.add_argument("family", choices=[f.value for f in beta.SeriesFamily])
    p.add_argument("params", help='JSON object of parameters, e.g. {"k": 2, "l": 3}')
    p.add_argument("M", type=int, help="bound on every summation index")

    p = sub.add_parser("verify", parents=[shared], help="run identity checks")
    p.add_argument("catalog", help=f"one of: {', '.join(verify.CATALOG)}, all")
    return ap


def _resolve_globals(args: argparse.Namespace) -> None:
    for name, (env, typ, default) in _GLOBALS.items():
        if getattr(args, name, None) is not None:
            continue
        raw = os.environ.get(ENV_PREFIX + env)
        try:
            setattr(args, name, typ(raw) if raw is not None else default)
        except ValueError as exc:
            raise InvalidInput(f"environment variable {ENV_PREFIX + env}={raw!r} is not a valid {typ.__name__}") from exc
    if args.format not in ("json", "text"):
        raise InvalidInput(f"format must be json or text, got {args.format!r}")


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc})") from exc


def _word_arg(text: str) -> str:
    text = text.strip()
    if "(" in text:
        return words.word_from_composition(words.parse_composition(text))
    return words.as_word(text)


def _numeric_fields(value: words.FormalSum, cfg: numeric.PrecisionConfig, split) -> dict:
    num = numeric.formal_sum_value(value, cfg, split).to_json()
    return {"numeric": num["value"], "error_bound": num["error_bound"]}


def _cmd_word(args, cfg, split):
    w = _word_arg(args.word)
    with mpmath.workprec(cfg.prec_bits):
        out = {"word": w, **numeric.zeta_word(w, cfg, split).to_json()}
    text = f"{words.format_composition(words.composition_from_word(w)) if w else '1'} = {out['value']} +- {out['error_bound']}"
    return out, text


def _cmd_shuffle(args, cfg, split):
    s = words.shuffle(_word_arg(args.u), _word_arg(args.v))
    return {"result": s.to_json()}, s.pretty()


def _cmd_reg(args, cfg, split):
    r = regularization.decompose(_word_arg(args.word))
    lines = [f"constant: {r.constant.pretty()}"]
    for (i, j), c in sorted(r.terms.items()):
        lines.append(f"X0^{i} X1^{j}: {c.pretty()}")
    return r.to_json(), "\n".join(lines)


def _eval_output(value: words.FormalSum, cfg, split):
    with mpmath.workprec(cfg.prec_bits):
        out = {"result": value.to_json(), **_numeric_fields(value, cfg, split)}
    return out, f"{value.pretty()} = {out['numeric']} +- {out['error_bound']}"


def _cmd_poset(args, cfg, split):
    P = poset.LabeledPoset.from_json(_read_json(args.file))
    if args.action == "eval":
        return _eval_output(poset.evaluate(P), cfg, split)
    if args.action == "extensions":
        exts = poset.linear_extensions(P, args.max_extensions)
        ws = [poset.word_of_extension(P, e) for e in exts]
        out = {"count": len(exts), "extensions": [list(e) for e in exts], "words": ws}
        return out, "\n".join(f"{' < '.join(e)}  {w}" for e, w in zip(exts, ws))
    out = {
        "vertices": P.size,
        "convergent": poset.poset_is_convergent(P),
        "minimal": P.minimal(),
        "maximal": P.maximal(),
        "extension_count": poset.count_linear_extensions(P),
    }
    text = "\n".join(f"{k}: {v}" for k, v in out.items())
    return out, text


def _cmd_polylog(args, cfg, split):
    spec = polylog.IntegrandSpec.from_json(_read_json(args.file))
    if args.action == "build":
        P = polylog.build_poset(spec)
        return P.to_json(), f"{spec}\n{json.dumps(P.to_json())}"
    if args.action == "eval":
        return _eval_output(polylog.integral_value(spec), cfg, split)
    return _eval_output(polylog.integral_value_reg(spec), cfg, split)


def _cmd_beta(args, cfg, split):
    try:
        pairs = json.loads(args.index)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"beta index is not valid JSON: {exc}") from exc
    v = beta.beta_exact(pairs)
    return {"result": words.format_rational(v)}, words.format_rational(v)


def _cmd_series(args, cfg, split):
    try:
        params = json.loads(args.params)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"series params are not valid JSON: {exc}") from exc
    if not isinstance(params, dict):
        raise InvalidInput("series params must be a JSON object")
    if args.M < 0:
        raise InvalidInput("M must be >= 0")
    norm = beta.series_params(args.family, params)
    s = beta.eq_series_partial(args.family, args.M, norm)
    with mpmath.workprec(cfg.prec_bits):
        dec = mpmath.nstr(mpmath.mpf(s.numerator) / s.denominator, 30)
        bound = mpmath.nstr(numeric.series_tail_bound(args.family, args.M, norm), 3) if args.M >= 1 else "inf"
    out = {
        "family": args.family,
        "params": {k: list(v) if isinstance(v, tuple) else v for k, v in norm.items()},
        "M": args.M,
        "partial_sum": words.format_rational(s),
        "decimal": dec,
        "tail_bound": bound,
    }
    return out, f"S_{args.M} = {dec}  (tail <= {bound})"


def _cmd_verify(args, cfg, split):
    vcfg = verify.VerifyConfig(precision=cfg, max_extensions=args.max_extensions)
    results = verify.run_catalog(args.catalog, vcfg)
    out = {"passed": all(r.passed for r in results), "checks": [r.to_json() for r in results]}
    return out, "\n".join(r.line() for r in results)


_COMMANDS = {
    "word": _cmd_word,
    "shuffle": _cmd_shuffle,
    "reg": _cmd_reg,
    "poset": _cmd_poset,
    "polylog": _cmd_polylog,
    "beta": _cmd_beta,
    "series": _cmd_series,
    "verify": _cmd_verify,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _resolve_globals(args)
        cfg = numeric.PrecisionConfig(args.prec_bits, args.tol, args.max_terms)
        split = Fraction(args.split)
        out, text = _COMMANDS[args.command](args, cfg, split)
    except PolyMZVError as exc:
        print(json.dumps(exc.to_json()), file=sys.stderr)
        return 2 if isinstance(exc, _USAGE_ERRORS) else 1
    except (ValueError, ZeroDivisionError) as exc:
        # e.g. an unparsable --split
        print(json.dumps({"error": {"type": "invalid_input", "message": str(exc)}}), file=sys.stderr)
        return 2
    print(json.dumps(out, indent=2) if args.format == "json" else text)
    if args.command == "verify" and not out["passed"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
