#!/usr/bin/env python3
"""
tropfan - Script Principal
==========================

Command-line front end of the fan engine. Every subcommand reads fans as
JSON (a path, or ``-`` for stdin) and writes a deterministic JSON report to
stdout (``--format table`` renders the same report as aligned rows):

    homology   (co)homology of Σ or of its compactification
    chow       Chow groups and pairings
    mw         Minkowski weights
    divisor    div(f) of a conewise linear function
    tropmod    tropical modification along div(f)
    bergman    Bergman fan of a matroid
    blowup     star subdivision
    product    product of two fans
    skeleton   k-skeleton
    check      property checks
    deligne    Deligne sequence exactness
    witness    shellability witness replay
    rebase     rewrite a fan over its ray lattice
    corpus     example corpus against golden files

Exit codes: 0 success, 1 input or engine error, 2 failed property check.

Autor: Otavio Feitosa
Data: 2025
"""

import argparse
import logging
import sys
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple

from src import utils
from src.chow import chow_report, minkowski_weights
from src.config_loader import ConfigLoader
from src.corpus import run_corpus
from src.divisors import divisor, tropical_modification
from src.exceptions import TropFanError
from src.fan import blow_up, k_skeleton, product
from src.fan_io import load_json, parse_function, parse_matroid, parse_witness, read_fan, rebase_report
from src.homology import FLAVORS, CellComplex, homology
from src.matroid import Matroid, bergman_fan
from src.properties import CHECKS, deligne_check, partial_deligne_check, run_checks
from src.shelling import CLASSES, replay_shell_witness
from src.utils import dump_json, format_duration, setup_logging, thread_budget

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAILED = 2


@dataclass
class Context:
    """Settings resolved from flags, environment and configuration"""

    coeff: str
    validate: bool
    marked: bool
    threads: int
    progress: bool
    config: ConfigLoader

    def fan(self, path: str):
        return read_fan(path, validate=self.validate, marked=self.marked)


# ----------------------------------------------------------------------
# subcommands: each returns (report, exit code)
# ----------------------------------------------------------------------

def cmd_homology(args, ctx: Context) -> Tuple[Any, int]:
    fan = ctx.fan(args.fan)
    space = CellComplex.compactification(fan) if args.compactified else fan
    result = homology(space, args.flavor, threads=ctx.threads, progress=ctx.progress)
    if ctx.coeff == "q":
        result = result.rationalize()
    report = result.to_dict()
    if args.p is not None or args.q is not None:
        report["groups"] = {k: g for k, g in report["groups"].items()
                            if (args.p is None or int(k.split(",")[0]) == args.p)
                            and (args.q is None or int(k.split(",")[1]) == args.q)}
    report["space"] = "compactification" if args.compactified else "fan"
    return report, EXIT_OK


def cmd_chow(args, ctx: Context) -> Tuple[Any, int]:
    return chow_report(ctx.fan(args.fan), ctx.coeff), EXIT_OK


def cmd_mw(args, ctx: Context) -> Tuple[Any, int]:
    fan = ctx.fan(args.fan)
    lattice = minkowski_weights(fan, args.k)
    return {"k": args.k, "cones": [list(c) for c in fan.faces_of_dim(args.k)],
            "rank": lattice.rank, "basis": lattice.vectors()}, EXIT_OK


def cmd_divisor(args, ctx: Context) -> Tuple[Any, int]:
    fan = ctx.fan(args.fan)
    return divisor(fan, parse_function(load_json(args.function), fan)).to_dict(), EXIT_OK


def cmd_tropmod(args, ctx: Context) -> Tuple[Any, int]:
    fan = ctx.fan(args.fan)
    return tropical_modification(fan, parse_function(load_json(args.function), fan)).to_dict(), EXIT_OK


def cmd_bergman(args, ctx: Context) -> Tuple[Any, int]:
    if args.uniform:
        matroid = Matroid.uniform(*args.uniform)
    else:
        matroid = parse_matroid(load_json(args.matroid))
    return bergman_fan(matroid).to_dict(), EXIT_OK


def cmd_blowup(args, ctx: Context) -> Tuple[Any, int]:
    return blow_up(ctx.fan(args.fan), args.cone, args.vector).to_dict(), EXIT_OK


def cmd_product(args, ctx: Context) -> Tuple[Any, int]:
    return product(ctx.fan(args.left), ctx.fan(args.right)).to_dict(), EXIT_OK


def cmd_skeleton(args, ctx: Context) -> Tuple[Any, int]:
    return k_skeleton(ctx.fan(args.fan), args.k).to_dict(), EXIT_OK


def cmd_check(args, ctx: Context) -> Tuple[Any, int]:
    fan = ctx.fan(args.fan)
    names = None if args.all else [n for n in CHECKS if getattr(args, n)]
    verdicts = run_checks(fan, names or None, threads=ctx.threads, progress=ctx.progress)
    code = EXIT_OK if all(verdicts) else EXIT_FAILED
    return {"verdicts": [v.to_dict() for v in verdicts]}, code


def cmd_deligne(args, ctx: Context) -> Tuple[Any, int]:
    fan = ctx.fan(args.fan)
    if args.partial is not None:
        report = partial_deligne_check(fan, args.partial)
    else:
        report = deligne_check(fan, args.p)
    return report.to_dict(), EXIT_OK if report.holds else EXIT_FAILED


def cmd_witness(args, ctx: Context) -> Tuple[Any, int]:
    witness = parse_witness(load_json(args.witness))
    return replay_shell_witness(witness, args.klass, args.verify_properties).to_dict(), EXIT_OK


def cmd_rebase(args, ctx: Context) -> Tuple[Any, int]:
    return rebase_report(ctx.fan(args.fan)), EXIT_OK


def cmd_corpus(args, ctx: Context) -> Tuple[Any, int]:
    corpus = ctx.config.get_corpus_config()
    names = args.only or corpus.get('examples')
    result = run_corpus(corpus['golden_dir'], names, args.update, ctx.threads, ctx.progress)
    return result.to_dict(), EXIT_OK if result.ok else EXIT_FAILED


COMMANDS: Dict[str, Callable[[argparse.Namespace, Context], Tuple[Any, int]]] = {
    'homology': cmd_homology,
    'chow': cmd_chow,
    'mw': cmd_mw,
    'divisor': cmd_divisor,
    'tropmod': cmd_tropmod,
    'bergman': cmd_bergman,
    'blowup': cmd_blowup,
    'product': cmd_product,
    'skeleton': cmd_skeleton,
    'check': cmd_check,
    'deligne': cmd_deligne,
    'witness': cmd_witness,
    'rebase': cmd_rebase,
    'corpus': cmd_corpus,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='Tropical homology and Chow rings of fans')
    parser.add_argument('--config', '-c', default='config.yml',
                        help='Configuration file (default: config.yml)')
    parser.add_argument('--verbose', '-v', action='store_true',
                        help='Verbose mode')
    parser.add_argument('--coeff', choices=['z', 'q'], default=None,
                        help='Integral groups (z) or ranks only (q)')
    parser.add_argument('--no-validate', action='store_true',
                        help='Skip the exact cone-overlap test on input fans')
    parser.add_argument('--marked-rays', action='store_true',
                        help='Accept non-primitive ray vectors as marks')
    parser.add_argument('--threads', type=int, default=None,
                        help='Worker threads (overrides TROPFAN_THREADS and engine.threads)')
    parser.add_argument('--output', '-o', default=None,
                        help='Write the report to a file instead of stdout')
    parser.add_argument('--format', choices=['json', 'table'], default='json',
                        help='Report format (default: json)')

    sub = parser.add_subparsers(dest='command', required=True)

    def with_fan(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument('fan', nargs='?', default='-', help='Fan JSON file (default: stdin)')
        return p

    p = with_fan('homology', '(co)homology groups')
    p.add_argument('--flavor', choices=FLAVORS, default='bm')
    p.add_argument('--compactified', action='store_true', help='Use the canonical compactification')
    p.add_argument('--p', type=int, default=None)
    p.add_argument('--q', type=int, default=None)

    with_fan('chow', 'Chow groups and pairings')

    p = with_fan('mw', 'Minkowski weights')
    p.add_argument('--k', type=int, required=True)

    for name in ('divisor', 'tropmod'):
        p = sub.add_parser(name, help='div(f)' if name == 'divisor' else 'tropical modification')
        p.add_argument('fan')
        p.add_argument('function', help='JSON with the ray values of f')

    p = sub.add_parser('bergman', help='Bergman fan of a matroid')
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--uniform', nargs=2, type=int, metavar=('R', 'M'))
    group.add_argument('--matroid', help='Matroid JSON file')

    p = with_fan('blowup', 'star subdivision along a cone')
    p.add_argument('--cone', nargs='+', type=int, required=True)
    p.add_argument('--vector', nargs='+', type=int, default=None)

    p = sub.add_parser('product', help='product of two fans')
    p.add_argument('left')
    p.add_argument('right')

    p = with_fan('skeleton', 'k-skeleton')
    p.add_argument('--k', type=int, required=True)

    p = with_fan('check', 'property checks')
    p.add_argument('--all', action='store_true')
    for name in CHECKS:
        p.add_argument(f"--{name.replace('_', '-')}", dest=name, action='store_true')

    p = with_fan('deligne', 'Deligne sequence exactness')
    p.add_argument('--p', type=int, default=0)
    p.add_argument('--partial', type=int, default=None, metavar='K',
                   help='Check the partial sequence in degree K instead')

    p = sub.add_parser('witness', help='replay a shellability witness')
    p.add_argument('witness', nargs='?', default='-')
    p.add_argument('--class', dest='klass', choices=CLASSES, default='all')
    p.add_argument('--verify-properties', action='store_true')

    with_fan('rebase', 'rewrite a fan over the lattice generated by its rays')

    p = sub.add_parser('corpus', help='example corpus against golden files')
    p.add_argument('--only', nargs='+', default=None, metavar='NAME')
    p.add_argument('--update', action='store_true', help='Regenerate the golden files')

    return parser


def load_config(path: str) -> ConfigLoader:
    config = ConfigLoader(path, allow_missing=True)
    if not config.validate_config():
        raise ValueError(f"Invalid configuration: {path}")
    return config


def main(argv: Optional[list] = None) -> int:
    """Run one subcommand and return its exit code"""

    args = build_parser().parse_args(argv)
    logger = logging.getLogger(__name__)

    try:
        config = load_config(args.config)

        log_level = logging.DEBUG if args.verbose else getattr(logging, config.get('logging.level', 'INFO'))
        setup_logging(
            level=log_level,
            log_file=config.get('logging.file'),
            format_str=config.get('logging.format')
        )
        if config.from_defaults:
            logger.warning(f"WARNING: {args.config} not found, using built-in defaults")

        engine = config.get_engine_config()
        ctx = Context(
            coeff=args.coeff or str(engine['coeff']).lower(),
            validate=bool(engine['validate']) and not args.no_validate,
            marked=args.marked_rays,
            threads=args.threads if args.threads else thread_budget(engine['threads']),
            progress=bool(engine['progress']),
            config=config,
        )
        utils.PROGRESS_DEFAULT = ctx.progress

        logger.info("=" * 60)
        logger.info(f"TROPFAN: {args.command.upper()}")
        logger.info("=" * 60)
        start = time.time()

        report, code = COMMANDS[args.command](args, ctx)
        dump_json(report, args.output, args.format)

        logger.info("=" * 60)
        if code == EXIT_OK:
            logger.info(f"SUCCESS: {args.command} finished in {format_duration(time.time() - start)}")
        else:
            logger.info(f"FAILED: {args.command} verdict is negative")
        logger.info("=" * 60)
        return code

    except (TropFanError, ValueError, FileNotFoundError) as e:
        logger.error(f"ERROR: {e}")
        return EXIT_ERROR
    except Exception as e:
        logger.error(f"ERRO FATAL: {e}")
        logger.exception("Detalhes do erro:")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
