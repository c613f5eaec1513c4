"""
Command-line entry point.

    python src/lie_actions.py invariants --algebra "st(3,R)"
    python src/lie_actions.py analyze --algebra "sl(2,R)" --manifold genus-2 --regularity analytic
    python src/lie_actions.py validate --algebra-file fixtures/heisenberg.lie
    python src/lie_actions.py catalog list

Exit status: 0 on success, 1 on input errors, 2 when the rule engine finds
contradictory rules.
"""

import argparse
import logging
import sys

import jsonschema

import utils
from catalog import STANDARD_EXPRESSIONS, build, catalog_listing
from config import DEFAULT_CONFIG
from errors import EngineContradiction
from expressions import parse_expression
from lie_files import load_lie_file
from liecore import validate_structure
from manifolds import PRESETS, parse_manifold_argument
from obstruction import analyze_all, build_profile, needs_algebra
from report import build_report, render_text, validate_report
from rules import (
    COMPACT_HOMOGENEOUS,
    EFFECTIVE,
    FIXED_POINT_FREE,
    MODES,
    REGULARITIES,
    TRANSITIVE,
)

logger = logging.getLogger(__name__)

MODE_NAMES = {
    "effective": EFFECTIVE,
    "fixed-point-free": FIXED_POINT_FREE,
    "transitive": TRANSITIVE,
    "homogeneous": COMPACT_HOMOGENEOUS,
}


def _common_arguments() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    source = parent.add_mutually_exclusive_group()
    source.add_argument("--algebra", help='Algebra expression, e.g. "st(3,R) x abelian(2)"')
    source.add_argument("--algebra-file", help="Structure constants in .lie format")
    parent.add_argument("--manifold", help="Preset name, inline JSON, or @path to a JSON file")
    parent.add_argument("--format", choices=["text", "json"], default="text")
    parent.add_argument("--seed", type=int)
    parent.add_argument("--samples", type=int)
    parent.add_argument("--precision", type=int, help="Working precision in bits")
    parent.add_argument("--height-bound", type=int)
    parent.add_argument("--strict", action="store_true", help="Ignore rules resting on heuristic ranks")
    parent.add_argument("-v", "--verbose", action="store_true")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Invariants of real Lie algebras and obstructions to their actions on manifolds"
    )
    parent = _common_arguments()
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("validate", parents=[parent], help="Check structure constants or a manifold")
    commands.add_parser("invariants", parents=[parent], help="Print the algebra's invariants")
    analyze = commands.add_parser("analyze", parents=[parent], help="Decide action questions")
    analyze.add_argument("--regularity", choices=list(REGULARITIES) + ["all"], default="all")
    analyze.add_argument("--mode", choices=list(MODE_NAMES) + ["all"], default="effective")
    catalog = commands.add_parser("catalog", parents=[parent], help="List the named algebras")
    catalog.add_argument("action", choices=["list"])
    return parser


def _config(args):
    return DEFAULT_CONFIG.with_overrides(
        seed=args.seed,
        samples=args.samples,
        precision=args.precision,
        max_precision=max(DEFAULT_CONFIG.max_precision, args.precision or 0),
        height_bound=args.height_bound,
        strict=args.strict or None,
    )


def load_algebra(args):
    """The algebra and, when given as an expression, its parse tree."""
    if args.algebra:
        expr = parse_expression(args.algebra)
        return validate_structure(build(expr)), expr
    if args.algebra_file:
        L = load_lie_file(args.algebra_file)
        if not L.origin:
            L = L.with_origin(args.algebra_file)
        return validate_structure(L), None
    return None, None


def _emit(report: dict, fmt: str):
    validate_report(report)
    if fmt == "json":
        print(utils.dump_json(report))
    else:
        print(render_text(report), end="")


def command_validate(args) -> int:
    L, _ = load_algebra(args)
    manifold = parse_manifold_argument(args.manifold) if args.manifold else None
    if L is None and manifold is None:
        raise ValueError("validate needs --algebra, --algebra-file or --manifold")
    if args.format == "json":
        result = {}
        if L is not None:
            result["algebra"] = {"label": L.origin, "dim": L.dim, "valid": True}
        if manifold is not None:
            result["manifold"] = manifold.as_dict()
        print(utils.dump_json(result))
        return 0
    if L is not None:
        print(f"{L.origin}: dimension {L.dim}, antisymmetry and Jacobi identity hold")
    if manifold is not None:
        print(f"{manifold.label()}: consistent, euler {manifold.euler}")
    return 0


def command_invariants(args, cfg) -> int:
    L, expr = load_algebra(args)
    if L is None:
        raise ValueError("invariants needs --algebra or --algebra-file")
    profile = build_profile(L, expr, cfg)
    _emit(build_report(profile, None, [], cfg), args.format)
    return 0


def command_analyze(args, cfg) -> int:
    if not args.manifold:
        raise ValueError("analyze needs --manifold")
    manifold = parse_manifold_argument(args.manifold)
    regularities = REGULARITIES if args.regularity == "all" else (args.regularity,)
    modes = MODES if args.mode == "all" else (MODE_NAMES[args.mode],)

    L, expr = load_algebra(args)
    if L is None and needs_algebra(modes):
        raise ValueError(f"mode {args.mode} needs --algebra or --algebra-file")
    profile = build_profile(L, expr, cfg) if L is not None else None
    verdicts = analyze_all(profile, manifold, regularities, modes, cfg.strict)
    _emit(build_report(profile, manifold, verdicts, cfg), args.format)
    return 0


def command_catalog(args) -> int:
    listing = {
        "atoms": catalog_listing(),
        "expressions": STANDARD_EXPRESSIONS,
        "manifold_presets": sorted(PRESETS),
    }
    if args.format == "json":
        print(utils.dump_json(listing))
        return 0
    for atom in listing["atoms"]:
        print(f"{atom['form']:<22} dim {atom['dimension']:<28} {atom['description']}")
    print("Standard expressions: " + "; ".join(listing["expressions"]))
    print("Manifold presets: " + ", ".join(listing["manifold_presets"]))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    utils.setup_logging(logging.DEBUG if args.verbose else logging.INFO)
    cfg = _config(args)

    try:
        match args.command:
            case "validate":
                return command_validate(args)
            case "invariants":
                return command_invariants(args, cfg)
            case "analyze":
                return command_analyze(args, cfg)
            case "catalog":
                return command_catalog(args)
    except EngineContradiction as e:
        logger.error(f"Contradictory rules: {e}")
        return 2
    except (ValueError, jsonschema.ValidationError, OSError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 1
    return 1


run_cli = main


if __name__ == "__main__":
    sys.exit(main())
