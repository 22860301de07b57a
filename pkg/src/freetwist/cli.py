"""Command-line interface.

Subcommands: ``check`` (class distinctness), ``remnant`` (remnant report),
``equalizer`` (triviality certificate), ``witness`` (bounded search for an
explicit conjugator), ``density`` (Monte Carlo experiments).  Words and
homomorphisms are taken inline or, when prefixed with ``@``, from a file.

Exit codes: 0 the command ran to completion (whatever the verdict),
2 usage or parse error, 3 precondition violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .words import (
    AlphabetMismatchError,
    ParseError,
    PreconditionError,
    format_word,
    parse_word,
)
from .homomorphisms import Homomorphism, free_product, identity_hom, parse_hom
from .remnant import RemnantReport, compute_remnant
from .conjugacy import conjugacy_witness, distinguish
from .genericity import DensityConfig, run_density


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freetwist",
        description="Doubly-twisted conjugacy certificates in free groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide whether [u] and [v] can be told apart")
    check.add_argument("--phi", required=True, help="first homomorphism, e.g. 'a=aba,b=Ba'")
    check.add_argument("--psi", help="second homomorphism; defaults to the identity")
    check.add_argument("-u", required=True, help="first target word")
    check.add_argument("-v", required=True, help="second target word")
    check.add_argument(
        "--oracle-depth", type=int, default=0, metavar="K",
        help="also search for an equality witness up to length K (exponential; default 0)",
    )
    check.add_argument("--json", action="store_true", help="machine-readable output")
    check.set_defaults(func=_cmd_check)

    remnant = sub.add_parser("remnant", help="remnant report for one homomorphism")
    remnant.add_argument("--hom", required=True, help="homomorphism to analyse")
    remnant.add_argument("--json", action="store_true")
    remnant.set_defaults(func=_cmd_remnant)

    equalizer = sub.add_parser(
        "equalizer", help="certify that two homomorphisms agree only on the identity"
    )
    equalizer.add_argument("--phi", required=True)
    equalizer.add_argument("--psi", required=True)
    equalizer.add_argument("--json", action="store_true")
    equalizer.set_defaults(func=_cmd_equalizer)

    witness = sub.add_parser(
        "witness", help="breadth-first search for g with u = phi(g) v psi(g)^-1"
    )
    witness.add_argument("--phi", required=True)
    witness.add_argument("--psi", help="defaults to the identity")
    witness.add_argument("-u", required=True)
    witness.add_argument("-v", required=True)
    witness.add_argument("--depth", type=int, required=True, metavar="K")
    witness.add_argument("--json", action="store_true")
    witness.set_defaults(func=_cmd_witness)

    density = sub.add_parser("density", help="run a Monte Carlo density experiment")
    density.add_argument("--config", required=True, help="JSON experiment description")
    density.add_argument("--out", help="write the report as CSV to this path")
    density.add_argument("--workers", type=int, default=1, help="worker processes")
    density.add_argument("--json", action="store_true")
    density.set_defaults(func=_cmd_density)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: bad JSON: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AlphabetMismatchError, PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def _resolve(value: str) -> str:
    """Values starting with '@' are read from the named file."""
    if value.startswith("@"):
        with open(value[1:], "r", encoding="utf-8") as f:
            return f.read()
    return value


def _load_pair(args) -> tuple[Homomorphism, Homomorphism]:
    phi = parse_hom(_resolve(args.phi))
    if args.psi is not None:
        psi = parse_hom(_resolve(args.psi))
    else:
        if phi.domain != phi.codomain:
            raise PreconditionError(
                "--psi can only default to the identity when --phi is an endomorphism"
            )
        psi = identity_hom(phi.domain)
        print(
            "warning: --psi omitted, using the identity; "
            "the remnant certificate can then never report distinct classes",
            file=sys.stderr,
        )
    return phi, psi


def _print_remnant_report(report: RemnantReport) -> None:
    for g in report.per_generator:
        print(
            f"  {g.name} -> {format_word(g.image)}   "
            f"remnant {format_word(g.remnant)} (left {g.left_cancel}, right {g.right_cancel})"
        )
    print(f"has remnant: {report.has_remnant}")
    print(f"min remnant length: {report.min_remnant_length}")
    print(f"min remnant ratio: {report.min_remnant_ratio}")


def _cmd_check(args) -> int:
    phi, psi = _load_pair(args)
    u = parse_word(_resolve(args.u), phi.codomain)
    v = parse_word(_resolve(args.v), phi.codomain)
    if args.oracle_depth < 0:
        raise PreconditionError("--oracle-depth must be nonnegative")
    result = distinguish(phi, psi, u, v, oracle_depth=args.oracle_depth)
    if args.json:
        print(json.dumps(result.to_json(), indent=2))
        return 0
    print(f"verdict: {result.verdict}")
    print(f"method: {result.method}")
    if result.orientation is not None:
        print(f"orientation: {result.orientation}")
    if result.witness is not None:
        print(f"witness: {format_word(result.witness)}")
    if result.eta_report is not None:
        print("eta table:")
        _print_remnant_report(result.eta_report)
    if result.verdict == "unknown":
        print("(the test is one-sided: unknown does not mean the classes are equal)")
    return 0


def _cmd_remnant(args) -> int:
    h = parse_hom(_resolve(args.hom))
    report = compute_remnant(h)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        _print_remnant_report(report)
    return 0


def _cmd_equalizer(args) -> int:
    phi = parse_hom(_resolve(args.phi))
    psi = parse_hom(_resolve(args.psi))
    report = compute_remnant(free_product(phi, psi))
    if args.json:
        print(json.dumps(
            {"certified_trivial": report.has_remnant, "remnant": report.to_json()},
            indent=2,
        ))
        return 0
    if report.has_remnant:
        print("certified_trivial: true")
        print("the free product has remnant, so the equalizer subgroup is trivial")
    else:
        print("certified_trivial: false")
        print("no remnant certificate; the result is inconclusive")
    return 0


def _cmd_witness(args) -> int:
    phi, psi = _load_pair(args)
    u = parse_word(_resolve(args.u), phi.codomain)
    v = parse_word(_resolve(args.v), phi.codomain)
    g = conjugacy_witness(phi, psi, u, v, depth=args.depth)
    if args.json:
        print(json.dumps(
            {"witness": None if g is None else format_word(g), "depth": args.depth},
            indent=2,
        ))
        return 0
    if g is None:
        print(f"none <= {args.depth}")
    else:
        print(format_word(g))
    return 0


def _cmd_density(args) -> int:
    with open(args.config, "r", encoding="utf-8") as f:
        config = DensityConfig.from_json(json.load(f))
    if args.workers < 1:
        raise PreconditionError("--workers must be at least 1")
    report = run_density(config, workers=args.workers)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            f.write(report.to_csv())
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
        return 0
    header = f"{'property':<18}{'p':>5}{'trials':>8}{'count':>7}{'fraction':>10}  95% interval"
    print(header)
    for r in report.rows:
        print(
            f"{r.property:<18}{r.p:>5}{r.trials:>8}{r.count:>7}{r.fraction:>10.4f}"
            f"  [{r.ci_low:.4f}, {r.ci_high:.4f}]"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
