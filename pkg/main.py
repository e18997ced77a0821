#!/usr/bin/env python3
"""
MTC-Engine Main Entry Point
Verification of modular tensor categories, Cardy algebras and sewing constraints

Usage:
    python main.py check-category --category fibonacci
    python main.py check-cardy --category ising --canonical
    python main.py check-sewing --category fibonacci --correlators config/correlators/fibonacci_inflated.json
    python main.py extract --category fibonacci --correlators config/correlators/fibonacci_inflated.json
    python main.py dim --category fibonacci --genus 1 --boundary 1:1
"""

import argparse
import asyncio
import logging
import os
import sys

# Add current directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from config.settings import (
    CATEGORY_DIR,
    CORRELATOR_SCHEMA,
    DEFAULT_SEED,
    DEFAULT_TOLERANCE,
    EXIT_FAILED,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    LOG_DIR,
    LOG_FILE,
    LOG_FORMAT,
    LOG_LEVEL,
    OUTPUT_FORMATS,
    RANDOM_TRIALS,
    SUITES,
    RunConfig,
)
from src.algebra.cardy import canonical_cardy, cardy_isomorphic, verify_cardy, verify_components
from src.algebra.io import build_cardy, dump_cardy, load_cardy, load_inputs, read_document, write_document
from src.center.center import center_embed
from src.errors import (
    ConsistencyError,
    NotIdempotent,
    ParseError,
    RelationFailure,
    ShapeMismatch,
    UnknownRelation,
)
from src.mtc_core.category import load_category, read_category
from src.reporting.report import CheckRecord, Report, emit
from src.sewing.correlators import canonical_correlators, load_correlators
from src.sewing.dimensions import stringnet_dim
from src.sewing.extraction import extract_cardy, retract_report
from src.suites.suite_manager import RunContext, SuiteManager

logger = logging.getLogger("mtc_engine.main")


def parse_arguments(argv=None):
    """Parse command line arguments"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--category',
        required=True,
        help='Category file, or the name of a shipped fixture (vect, fibonacci, ising, ...)'
    )
    common.add_argument(
        '--algebra',
        action='append',
        default=[],
        help='Algebra or Cardy algebra file; may be given more than once'
    )
    common.add_argument(
        '--correlators',
        help='Correlator file for check-sewing and extract'
    )
    common.add_argument(
        '--canonical',
        action='store_true',
        help='Use the canonical Cardy algebra (H_op = 1, H_cl = L(1))'
    )
    common.add_argument(
        '--tol',
        type=float,
        default=DEFAULT_TOLERANCE,
        help=f'Residual tolerance (default: {DEFAULT_TOLERANCE})'
    )
    common.add_argument(
        '--seed',
        type=int,
        default=DEFAULT_SEED,
        help=f'Seed for every randomized check (default: {DEFAULT_SEED})'
    )
    common.add_argument(
        '--suite',
        default='',
        help=f'Comma-separated suites to run instead of the defaults ({", ".join(SUITES)})'
    )
    common.add_argument(
        '--format',
        choices=OUTPUT_FORMATS,
        default='text',
        help='Report format (default: text)'
    )
    common.add_argument(
        '--out',
        help='Also write the report to this path'
    )
    common.add_argument(
        '--trials',
        type=int,
        default=RANDOM_TRIALS,
        help=f'Random trials per property check (default: {RANDOM_TRIALS})'
    )
    common.add_argument(
        '--verbose',
        action='store_true',
        help='Log at DEBUG level'
    )

    parser = argparse.ArgumentParser(
        description="MTC-Engine: modular tensor categories, Cardy algebras and sewing constraints",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Exit codes:
  0  every check passed
  1  a verification failed
  2  input error (unreadable or malformed data, bad flags)
        """
    )
    commands = parser.add_subparsers(dest='command', required=True)
    commands.add_parser('check-category', parents=[common], help='Verify the category axioms')
    commands.add_parser('check-cardy', parents=[common], help='Verify a Cardy algebra')
    commands.add_parser('check-sewing', parents=[common], help='Check relations R1-R32 on a correlator set')

    extract = commands.add_parser('extract', parents=[common], help='Extract a Cardy algebra from correlators')
    extract.add_argument('--reference', help='Cardy file to compare the extracted algebra with')
    extract.add_argument('--save', help='Write the extracted Cardy algebra to this path')

    dim = commands.add_parser('dim', parents=[common], help='Dimension of a string-net space')
    dim.add_argument('--genus', type=int, default=0, help='Genus of the surface (default: 0)')
    dim.add_argument(
        '--boundary',
        nargs='*',
        default=[],
        help='Boundary circles as centre simples i:j, by label name or index'
    )
    return parser.parse_args(argv)


def setup_logging(verbose=False):
    """Set up logging configuration"""
    # Create logs directory if it doesn't exist
    os.makedirs(LOG_DIR, exist_ok=True)

    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, LOG_LEVEL),
        format=LOG_FORMAT,
        handlers=[
            logging.FileHandler(LOG_FILE),
            logging.StreamHandler()
        ]
    )


def resolve_category(value):
    """A path as given, or a fixture name under config/categories"""
    if os.path.exists(value):
        return value
    return os.path.join(CATEGORY_DIR, f"{value}.json")


def build_config(args):
    return RunConfig(
        command=args.command,
        category=resolve_category(args.category),
        algebra=list(args.algebra),
        correlators=args.correlators,
        canonical=args.canonical,
        tolerance=args.tol,
        seed=args.seed,
        suites=[s.strip() for s in args.suite.split(',') if s.strip()],
        output_format=args.format,
        output=args.out,
        trials=args.trials,
    )


def finish(report, config):
    """Print the report and turn it into an exit code"""
    print(emit(report, config.output_format, config.output))
    return EXIT_OK if report.passed else EXIT_FAILED


def load_run_inputs(context):
    """Attach the Cardy algebra, extra algebras and correlators named on the command line"""
    config, lf = context.config, context.lf
    cardy, algebras = load_inputs(lf, config.algebra)
    context.algebras = algebras
    context.cardy = canonical_cardy(lf) if config.canonical or not cardy else cardy[0]
    if config.correlators:
        context.correlators = load_correlators(lf, config.correlators)


async def run_suites(context, report):
    manager = SuiteManager(context)
    report.extend(await manager.run(context.config.selected_suites()))


async def cmd_check_category(config, args):
    cat = read_category(config.category, config.tolerance)
    context = RunContext.build(config, cat)
    report = Report(config.command, cat.name, config.seed, config.tolerance)
    await run_suites(context, report)
    return finish(report, config)


async def cmd_check_cardy(config, args):
    cat = load_category(config.category, config.tolerance)
    context = RunContext.build(config, cat)
    load_run_inputs(context)
    report = Report(config.command, cat.name, config.seed, config.tolerance)
    report.extras["cardy"] = context.cardy.name
    await run_suites(context, report)
    return finish(report, config)


async def cmd_check_sewing(config, args):
    cat = load_category(config.category, config.tolerance)
    context = RunContext.build(config, cat)
    load_run_inputs(context)
    report = Report(config.command, cat.name, config.seed, config.tolerance)
    await run_suites(context, report)
    sewing = [r for r in report.records if r.suite == "sewing"]
    report.extras["relations"] = f"{sum(1 for r in sewing if r.passed)}/{len(sewing)}"
    return finish(report, config)


def reference_cardy(context, args):
    """--reference, else the Cardy recipe inside the correlator file, else the canonical algebra"""
    lf, config = context.lf, context.config
    if args.reference:
        return load_cardy(lf, args.reference)
    if config.correlators:
        doc = read_document(config.correlators, CORRELATOR_SCHEMA)
        recipe = {k: v for k, v in doc.get("cardy", {"construction": "canonical"}).items() if k != "corruption"}
        return build_cardy(lf, recipe)
    return context.cardy


async def cmd_extract(config, args):
    cat = load_category(config.category, config.tolerance)
    context = RunContext.build(config, cat)
    load_run_inputs(context)
    lf = context.lf
    corr = context.correlators or canonical_correlators(lf, context.cardy)
    report = Report(config.command, cat.name, config.seed, config.tolerance)

    print(f"🔄 Extracting a Cardy algebra from {corr.name}")
    extracted = await asyncio.to_thread(extract_cardy, lf, corr, config.tolerance)
    rows = retract_report(lf, corr, config.tolerance)
    for row in rows:
        residual = max(row["section_residual"], row["split_residual"])
        report.extend([CheckRecord(
            "extract", f"{row['sector']} retract", residual, residual < config.tolerance,
            "identity" if row["identity"] else "split",
            f"image {row['image']}",
        )])
    checks = verify_components(lf, extracted, config.tolerance) + verify_cardy(lf, extracted, config.tolerance)
    report.extend(CheckRecord.from_axiom("extract", check, extracted.name) for check in checks)

    reference = reference_cardy(context, args)
    result = cardy_isomorphic(lf, extracted, reference, context.rng, config.tolerance)
    if result:
        report.extend([CheckRecord(
            "extract", "isomorphic to reference", result.square_residual,
            result.square_residual < config.tolerance, reference.name,
            f"homomorphism residual {result.homomorphism_residual:.3e}",
        )])
    else:
        report.extend([CheckRecord("extract", "isomorphic to reference", float("inf"), False,
                                   reference.name, result.reason)])
    report.extras["retract"] = "identity" if all(row["identity"] for row in rows) else "split"
    report.extras["isomorphic"] = bool(result)

    if args.save:
        write_document(args.save, dump_cardy(lf, extracted))
        print(f"✅ Extracted algebra written to {args.save}")
    return finish(report, config)


def parse_label(cat, text):
    """Label name first, then a plain index"""
    if text not in cat.labels and text.isdigit():
        return cat.label_index(int(text))
    return cat.label_index(text)


def parse_boundary(cat, tokens):
    boundary = []
    for token in tokens:
        parts = token.split(':')
        if len(parts) != 2:
            raise ParseError(f"boundary circle '{token}' must look like i:j")
        boundary.append(center_embed(parse_label(cat, parts[0]), parse_label(cat, parts[1])))
    return boundary


async def cmd_dim(config, args):
    cat = load_category(config.category, config.tolerance)
    boundary = parse_boundary(cat, args.boundary)
    dimension = stringnet_dim(cat, args.genus, boundary)
    if config.output_format == "text" and not config.output:
        print(dimension)
        return EXIT_OK
    report = Report(config.command, cat.name, config.seed, config.tolerance)
    report.extras.update({"genus": args.genus, "boundary": list(args.boundary), "dimension": dimension})
    return finish(report, config)


HANDLERS = {
    "check-category": cmd_check_category,
    "check-cardy": cmd_check_cardy,
    "check-sewing": cmd_check_sewing,
    "extract": cmd_extract,
    "dim": cmd_dim,
}


async def async_main(args):
    """Async main function"""
    try:
        config = build_config(args)
        if args.command != "dim":
            print(f"\n🚀 {args.command} on {config.category}")
            print(f"📊 seed {config.seed}, tolerance {config.tolerance:.1e}")
        return await HANDLERS[args.command](config, args)
    except (ParseError, ShapeMismatch, UnknownRelation, ValueError, OSError) as e:
        logger.error(f"Input error: {e}")
        print(f"❌ Input error: {e}")
        return EXIT_INPUT_ERROR
    except (ConsistencyError, RelationFailure, NotIdempotent) as e:
        logger.error(f"Verification failed: {e}")
        print(f"❌ {e}")
        return EXIT_FAILED


def main(argv=None):
    """Main application entry point"""
    args = parse_arguments(argv)

    # Set up logging
    setup_logging(args.verbose)

    return asyncio.run(async_main(args))


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n\n👋 Interrupted")
        sys.exit(EXIT_FAILED)
