"""
Command Line Interface.
`python -m superjordan <command>`; exit codes: 0 success / positive verdict,
1 negative verdict, 2 inconclusive, 64 usage, 65 parse, 66 validation,
70 resource limit or internal error.
"""
import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional

from superjordan.config import settings
from superjordan.errors import ParseError, RangeTooLarge, SuperJordanError
from superjordan.models.algebra import AlgebraSpec
from superjordan.services.bundle import certify_bundle, graded_window_dims
from superjordan.services.indecomposability import indecomposability
from superjordan.services.jordan_analysis import (
    check_cjt,
    is_endotrivial,
    jordan_type_at,
    jordan_type_table,
    projectivity_report,
)
from superjordan.services.module_io import build_recipe, load_module, parse_point, save_module
from superjordan.services.superalgebra import restrict_to_subalgebra, superdim, validate
from superjordan.utils.logging_config import configure_console, get_logger

logger = get_logger(__name__)

EXIT_OK, EXIT_NEGATIVE, EXIT_INCONCLUSIVE = 0, 1, 2
EXIT_USAGE, EXIT_INTERNAL = 64, 70

_VERDICT_EXIT = {
    "constant": EXIT_OK, "not_constant": EXIT_NEGATIVE, "inconclusive": EXIT_INCONCLUSIVE,
    "bundle": EXIT_OK, "not_bundle": EXIT_NEGATIVE,
    "indecomposable": EXIT_OK, "decomposable": EXIT_NEGATIVE,
}


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _emit_json(payload: Dict):
    payload = dict(payload)
    payload["schema_version"] = settings.report_schema_version
    payload["tool_version"] = settings.version
    print(json.dumps(payload, indent=2, sort_keys=True))


def _print_witnesses(report):
    for w in report.witnesses:
        chart = f" [{w.chart}]" if w.chart else ""
        print(f"  witness {w.point}: {w.jordan_type}{chart}")


# -- subcommands -----------------------------------------------------------------

def cmd_validate(args) -> int:
    m = load_module(args.file, check=False)
    violations = validate(m)
    if args.json:
        _emit_json({"command": "validate", "valid": not violations, "violations": violations,
                    "algebra": m.algebra.descriptor, "superdim": str(superdim(m))})
    elif violations:
        print(f"{args.file}: INVALID")
        for v in violations:
            print(f"  {v}")
    else:
        print(f"{args.file}: valid {m.algebra} module of superdimension {superdim(m)}")
    return 66 if violations else EXIT_OK


def cmd_jordan_type(args) -> int:
    m = load_module(args.file)
    points = [parse_point(text, m.algebra) for text in args.point]
    if args.json:
        results = []
        for p in points:
            t = jordan_type_at(m, p)
            results.append({"point": str(p), "jordan_type": t.model_dump(), "printed": str(t),
                            "in_weak_cone": p.in_weak_cone()})
        _emit_json({"command": "jordan-type", "results": results})
    elif len(points) == 1:
        print(jordan_type_at(m, points[0]))
    else:
        print(jordan_type_table(m, points).to_string(index=False))
    return EXIT_OK


def cmd_check_cjt(args) -> int:
    m = load_module(args.file)
    report = check_cjt(m, args.cone, args.method, samples=args.samples, seed=args.seed)
    if args.json:
        _emit_json({"command": "check-cjt", **report.model_dump(mode="json")})
    else:
        line = f"{report.verdict} ({report.cone} cone, {report.method})"
        if report.jordan_type is not None:
            line += f": {report.jordan_type}"
        print(line)
        if report.sampled_type is not None:
            print(f"  sampled type {report.sampled_type} (probabilistic)")
        if report.reason:
            print(f"  reason: {report.reason}")
        _print_witnesses(report)
    return _VERDICT_EXIT[report.verdict]


def cmd_projective(args) -> int:
    m = load_module(args.file)
    projective, report = projectivity_report(m)
    if args.json:
        _emit_json({"command": "projective", "projective": projective,
                    "evidence": report.model_dump(mode="json")})
    else:
        evidence = str(report.jordan_type) if report.jordan_type else report.verdict
        print(f"projective: {str(projective).lower()} (strong cone: {evidence})")
        _print_witnesses(report)
    return EXIT_OK if projective else EXIT_NEGATIVE


def cmd_endotrivial(args) -> int:
    m = load_module(args.file)
    report = is_endotrivial(m, allow_probabilistic=args.allow_probabilistic, seed=args.seed)
    if args.json:
        _emit_json({"command": "endotrivial", **report.model_dump(mode="json")})
    else:
        print(f"endotrivial: {str(report.verdict).lower()}")
        print(f"  constant type route: {report.cjt_route} ({report.cjt_type})")
        method = {True: "certified", False: "probabilistic"}.get(report.direct_certified, "not run")
        print(f"  direct route: {report.direct_route} ({method})")
        for note in report.notes:
            print(f"  note: {note}")
    return EXIT_OK if report.verdict else EXIT_NEGATIVE


def cmd_indecomposable(args) -> int:
    m = load_module(args.file)
    report = indecomposability(m, seed=args.seed)
    if args.json:
        _emit_json({"command": "indecomposable", **report.model_dump(mode="json")})
    else:
        print(f"{report.verdict}: dim End_0 = {report.end_dim}, dim rad = {report.radical_dim}")
        if report.idempotent_rank is not None:
            print(f"  splitting idempotent of rank {report.idempotent_rank}")
        if report.reason:
            print(f"  reason: {report.reason}")
    return _VERDICT_EXIT[report.verdict]


def cmd_construct(args) -> int:
    algebra = AlgebraSpec.parse(args.algebra) if args.algebra else None
    m = build_recipe(args.recipe, algebra)
    violations = validate(m)
    if violations:
        logger.error(f"recipe {args.recipe!r} produced an invalid module: {violations[:3]}")
        return EXIT_INTERNAL
    out = save_module(m, args.output, name=args.name or args.recipe)
    print(f"wrote {out}: {m.algebra} module of superdimension {superdim(m)}")
    return EXIT_OK


def cmd_restrict(args) -> int:
    m = load_module(args.file)
    gens = [g.strip() for g in args.generators.split(",") if g.strip()]
    sub = restrict_to_subalgebra(m, gens)
    out = save_module(sub, args.output)
    print(f"wrote {out}: {sub.algebra} module of superdimension {superdim(sub)}")
    return EXIT_OK


def _parse_window(text: str) -> List[int]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise ParseError(f"bad window {text!r}", position="--window", expected="A..B")
    if not sep or b < a:
        raise ParseError(f"bad window {text!r}", position="--window", expected="A..B with A <= B")
    return list(range(a, b + 1))


def cmd_bundle(args) -> int:
    m = load_module(args.file)
    degrees = _parse_window(args.window) if args.window else []
    report = certify_bundle(m, fibers=args.fibers, seed=args.seed)
    window = graded_window_dims(m, degrees) if degrees else None
    if args.json:
        payload = {"command": "bundle", **report.model_dump(mode="json")}
        if window is not None:
            payload["window"] = [{"degree": int(d), **{k: int(v) for k, v in row.items()}}
                                 for d, row in window.iterrows()]
        _emit_json(payload)
    else:
        if report.verdict == "bundle":
            print(f"bundle: F1 rank {report.f1}, F2 rank {report.f2}")
        else:
            print(report.verdict)
        for fiber in report.fibers:
            print(f"  fiber at {fiber.point}: F1 {fiber.f1}, F2 {fiber.f2_dim}")
        if window is not None:
            print(window.to_string())
    return _VERDICT_EXIT[report.verdict]


def cmd_suite(args) -> int:
    from superjordan.evaluation.property_suite import PropertySuiteEvaluator

    evaluator = PropertySuiteEvaluator(seed=args.seed)
    results = evaluator.run(args.name, count=args.count)
    if args.save:
        path = evaluator.save(results)
        logger.info(f"suite results saved to {path}")
    if args.json:
        _emit_json({"command": "suite", **results.to_dict()})
    else:
        print(f"{results.suite}: {results.checked} checks, {results.counterexamples} counterexamples")
        for failure in results.failures[:10]:
            print(f"  {failure}")
    return EXIT_OK if results.counterexamples == 0 else EXIT_NEGATIVE


# -- parser --------------------------------------------------------------------

def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="superjordan", description="Super Jordan types of sl(1|1)^r and exterior modules.")
    parser.add_argument("--max-minors", type=int, help="cap on minors per certificate block")
    parser.add_argument("--max-spairs", type=int, help="cap on Buchberger S-pairs")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug output on stderr")
    parser.add_argument("-q", "--quiet", action="store_true", help="only errors on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check parity and relations")
    p.add_argument("file", type=Path)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("jordan-type", help="Jordan type at one or more points")
    p.add_argument("file", type=Path)
    p.add_argument("--point", action="append", required=True, help='e.g. "x1 + 2/3*y1"; repeatable')
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_jordan_type)

    p = sub.add_parser("check-cjt", help="constant Jordan type on the weak or strong cone")
    p.add_argument("file", type=Path)
    p.add_argument("--cone", choices=["weak", "strong"], default="weak")
    p.add_argument("--method", choices=["certify", "sample"], default="certify")
    p.add_argument("--samples", type=_positive_int, help="sample points for --method sample")
    p.add_argument("--seed", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_check_cjt)

    for name, handler, text in (("projective", cmd_projective, "projectivity via strong-cone type"),
                                ("endotrivial", cmd_endotrivial, "End(M) = k + projective"),
                                ("indecomposable", cmd_indecomposable, "indecomposability via End_0")):
        p = sub.add_parser(name, help=text)
        p.add_argument("file", type=Path)
        p.add_argument("--json", action="store_true")
        if name != "projective":
            p.add_argument("--seed", type=int)
        if name == "endotrivial":
            p.add_argument("--allow-probabilistic", action="store_true",
                           help="accept the sampled type when the certificate hits a resource limit")
        p.set_defaults(handler=handler)

    p = sub.add_parser("construct", help="materialize a construction recipe")
    p.add_argument("recipe")
    p.add_argument("-o", "--output", type=Path, required=True)
    p.add_argument("--algebra", help="algebra context, default exterior(2) or sl11 for Kac modules")
    p.add_argument("--name")
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("restrict", help="restrict to a subalgebra")
    p.add_argument("file", type=Path)
    p.add_argument("--generators", required=True, help="comma separated, e.g. z1,z2")
    p.add_argument("-o", "--output", type=Path, required=True)
    p.set_defaults(handler=cmd_restrict)

    p = sub.add_parser("bundle", help="vector bundle criterion for the fiber functors")
    p.add_argument("file", type=Path)
    p.add_argument("--fibers", type=int, default=0)
    p.add_argument("--seed", type=int)
    p.add_argument("--window", help="degree window A..B")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_bundle)

    p = sub.add_parser("suite", help="run a seeded property suite")
    p.add_argument("name", choices=["closure", "summands", "endotrivial", "classification", "duflo_serganova"])
    p.add_argument("--count", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--save", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_suite)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        configure_console("DEBUG")
    elif args.quiet:
        configure_console("ERROR")
    caps = {k: v for k, v in (("max_minors", args.max_minors), ("max_spairs", args.max_spairs)) if v is not None}
    certificate = settings.certificate
    # the caps apply to this invocation only
    settings.certificate = certificate.model_copy(update=caps)

    try:
        return args.handler(args)
    except SuperJordanError as exc:
        logger.error(f"{args.command}: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        logger.error(f"{args.command}: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception:
        logger.exception(f"{args.command} failed")
        return EXIT_INTERNAL
    finally:
        settings.certificate = certificate
