"""Command line interface: ``taufin <command> ...``.

Exit status: 0 on success, 2 on a parse error (or invalid flags), 3 when a
crosscheck finds an inconsistency, 4 when ``--require-finite`` is set and the
explorer runs out of budget, 1 for any other refusal.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .algebra import (
    BoundPresentation,
    PresentationError,
    build_nakayama,
    build_truncated_polynomial,
    compute_algebra,
    radical_square_truncation,
    tensor_product,
    triangular_matrix,
)
from .algfile import ParseError, load_algebra, parse_algebra, serialize_algebra
from .classify import (
    CrosscheckConfig,
    HypothesisError,
    all_consistent,
    classify_silting_discreteness,
    classify_tn_tau_finiteness,
    crosscheck,
    load_corpus,
)
from .field import Field
from .oracle import OracleDomainError, brute_force_stau_count
from .quiver import component_types, separated_quiver
from .tautilt import DEFAULT_BUDGET, DEFAULT_MAX_MODULE_DIM, DEFAULT_SECONDS, explore, hasse_dot, hasse_json

EXIT_OK = 0
EXIT_REFUSED = 1
EXIT_PARSE = 2
EXIT_INCONSISTENT = 3
EXIT_BUDGET = 4


class UsageError(Exception):
    pass


def _read(path: str) -> BoundPresentation:
    if path == "-":
        return parse_algebra(sys.stdin.read())
    return load_algebra(path)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n"


def _positive_int(text: str) -> int:
    val = int(text)
    if val <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return val


def _module_dim(text: str) -> int | None:
    val = int(text)
    if val < 0:
        raise argparse.ArgumentTypeError("must be non-negative (0 disables the limit)")
    return val or None


def _positive_float(text: str) -> float:
    val = float(text)
    if val <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return val


# -- commands ----------------------------------------------------------------------

def build_construction(spec: str, source: str) -> BoundPresentation:
    kind, _, arg = spec.partition(":")
    if kind == "nakayama":
        try:
            r, shape, cap = arg.split(",")
            if shape not in ("linear", "cyclic"):
                raise ValueError
            return build_nakayama(int(r), shape == "cyclic", int(cap))
        except ValueError:
            raise UsageError("nakayama takes <r>,<linear|cyclic>,<cap>") from None
    if kind == "local":
        try:
            return build_truncated_polynomial(int(arg))
        except ValueError:
            raise UsageError("local takes <m>") from None
    base = _read(source)
    if kind == "tn":
        try:
            n = int(arg)
        except ValueError:
            raise UsageError("tn takes <n>") from None
        return triangular_matrix(base, n)
    if kind == "tensor":
        other = load_algebra(arg)
        if other.field != base.field:
            raise UsageError(f"field mismatch: {base.field.spec()} vs {other.field.spec()}")
        return tensor_product(base, other)
    if kind == "rad2":
        return radical_square_truncation(base)
    raise UsageError(f"unknown construction {spec!r}")


def cmd_build(args) -> int:
    pres = build_construction(args.construction, args.input)
    _emit(serialize_algebra(pres), args.output)
    return EXIT_OK


def cmd_separated(args) -> int:
    pres = _read(args.input)
    sep = separated_quiver(pres.quiver)
    comps = [{"vertices": list(c), "type": str(t)} for c, t in component_types(sep)]
    if args.dot:
        _emit(sep.to_dot("separated"), args.dot)
    if args.dot != "-":
        sys.stdout.write(_dump({"components": comps}))
    return EXIT_OK


def cmd_classify(args) -> int:
    pres = _read(args.input)
    if args.mode == "tau":
        verdict = classify_tn_tau_finiteness(pres, args.n)
    else:
        verdict = classify_silting_discreteness(pres, args.n)
    sys.stdout.write(_dump(verdict.to_json()))
    return EXIT_OK


def _explore_args(args):
    pres = _read(args.input)
    if args.field:
        pres = pres.with_field(Field.parse(args.field))
    alg = compute_algebra(pres)
    return explore(alg, args.budget, args.seconds, args.seed, args.workers, args.max_module_dim)


def cmd_explore(args) -> int:
    report = _explore_args(args)
    sys.stdout.write(report.dumps(include_elapsed=not args.no_elapsed))
    sys.stdout.write("\n")
    if args.require_finite and not report.finite:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_hasse(args) -> int:
    report = _explore_args(args)
    if not report.finite:
        sys.stderr.write(f"exploration stopped: {report.status} after {report.count} pairs\n")
        return EXIT_BUDGET
    if args.dot:
        _emit(hasse_dot(report), args.dot)
    if args.json:
        _emit(_dump(hasse_json(report)), args.json)
    if not args.dot and not args.json:
        sys.stdout.write(_dump(hasse_json(report)))
    return EXIT_OK


def cmd_stau_count(args) -> int:
    pres = _read(args.input)
    if args.mod2:
        pres = pres.with_field(Field(2))
    try:
        count = brute_force_stau_count(compute_algebra(pres))
    except OracleDomainError as exc:
        sys.stderr.write(f"oracle refused: {exc}\n")
        return EXIT_REFUSED
    sys.stdout.write(_dump({"count": count, "field": pres.field.spec()}))
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    items = load_corpus(args.corpus)
    cfg = CrosscheckConfig(budget=args.budget, max_seconds=args.seconds, seed=args.seed,
                           max_module_dim=args.max_module_dim)
    for f in args.sd_shadow or []:
        cfg.sd_shadow.append((Path(f).stem, load_algebra(f)))
    for f, n in args.rad2 or []:
        cfg.rad2_pairs.append((Path(f).stem, load_algebra(f), int(n)))
    rows = crosscheck(items, cfg, workers=args.workers)
    text = json.dumps(rows, sort_keys=True, ensure_ascii=False, indent=1) + "\n"
    _emit(text, args.output)
    return EXIT_OK if all_consistent(rows) else EXIT_INCONSISTENT


# -- parser ------------------------------------------------------------------------

def _add_explore_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET, help="maximum number of pairs")
    p.add_argument("--seconds", type=_positive_float, default=DEFAULT_SECONDS, help="wall-clock limit")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--field", help="override the field, e.g. fp:10007 or qq")
    _add_module_dim_flag(p)


def _add_module_dim_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-module-dim", type=_module_dim, default=DEFAULT_MAX_MODULE_DIM,
                   help="stop when a tau-rigid module exceeds this dimension (0: no limit)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="taufin", description="tau-tilting finiteness of triangular matrix algebras")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a presentation and write it as an algebra file")
    p.add_argument("input", help="algebra file, or - (stdin / no input for nakayama and local)")
    p.add_argument("construction", help="tn:<n> | tensor:<file> | rad2 | nakayama:<r>,<linear|cyclic>,<cap> | local:<m>")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("separated", help="separated quiver and its component types")
    p.add_argument("input")
    p.add_argument("--dot", help="write the separated quiver as DOT (- for stdout)")
    p.set_defaults(func=cmd_separated)

    p = sub.add_parser("classify", help="rule-based verdict on T_n of the algebra")
    p.add_argument("input")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--mode", choices=("tau", "silting"), default="tau")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("explore", help="budgeted exchange-graph exploration")
    p.add_argument("input")
    _add_explore_flags(p)
    p.add_argument("--require-finite", action="store_true", help="exit 4 unless the search closes up")
    p.add_argument("--no-elapsed", action="store_true", help="omit the elapsed time from the report")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("hasse", help="Hasse quiver of the support tau-tilting poset")
    p.add_argument("input")
    _add_explore_flags(p)
    p.add_argument("--dot", help="DOT output path (- for stdout)")
    p.add_argument("--json", help="JSON output path (- for stdout)")
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("stau-count", help="brute-force count over the field with two elements")
    p.add_argument("input")
    p.add_argument("--mod2", action="store_true", help="reduce the presentation modulo 2 first")
    p.set_defaults(func=cmd_stau_count)

    p = sub.add_parser("crosscheck", help="classifier against explorer on a corpus")
    p.add_argument("corpus")
    p.add_argument("--budget", type=_positive_int, default=5000)
    p.add_argument("--seconds", type=_positive_float, default=120.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=_positive_int, default=1)
    _add_module_dim_flag(p)
    p.add_argument("--sd-shadow", action="append", metavar="FILE", help="compare A with A (x) K[x]/(x^2)")
    p.add_argument("--rad2", action="append", nargs=2, metavar=("FILE", "N"), help="compare T_n(A) with T_n(A/rad^2)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ParseError, UsageError, PresentationError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except HypothesisError as exc:
        sys.stderr.write(f"hypothesis violated: {exc}\n")
        return EXIT_REFUSED
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
