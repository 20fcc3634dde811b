"""
Main Entry Point for VariPro

    python main.py run <subcommand> --config <path> --out <dir> [--seed N] [--dry-run]

Subcommands: denoise, deblur, mri, ct, pnp_sweep, segment, illposed.
Exit codes: 0 ok, 1 error, 2 solver stopped at max_iters.
"""

# Set matplotlib backend FIRST
import matplotlib
matplotlib.use('Agg')

# Core imports
import argparse
import logging
import sys

from core.config import load_config, resolve_thread_count
from core.errors import ConfigError
from core.logger import ProfessionalLogger
from Module_10_Experiments.commands import COMMANDS, EXIT_ERROR, run_command, validate_command


def build_parser():
    parser = argparse.ArgumentParser(prog="varipro",
                                     description="Variational and data-driven image reconstruction experiments")
    actions = parser.add_subparsers(dest="action", required=True)
    run = actions.add_parser("run", help="run one experiment from a JSON config")
    run.add_argument("subcommand", choices=sorted(COMMANDS))
    run.add_argument("--config", required=True, help="JSON run configuration")
    run.add_argument("--out", required=True, help="output directory")
    run.add_argument("--seed", type=int, default=None, help="override the config seed")
    run.add_argument("--dry-run", action="store_true", help="validate the config and exit")
    return parser


def main(argv=None):
    """Main execution framework for VariPro"""
    args = build_parser().parse_args(argv)

    if args.dry_run:
        logger = ProfessionalLogger(base_dir=None, console_level=logging.INFO)
        try:
            config = load_config(args.config)
            if args.seed is not None:
                config = config.with_seed(args.seed)
            validate_command(args.subcommand, config)
            resolve_thread_count()
        except ConfigError as e:
            logger.error(f"❌ Configuration error: {e}")
            return EXIT_ERROR
        logger.info(f"✅ {args.config} is a valid {args.subcommand} configuration")
        return 0

    # Initialize professional logging system
    logger = ProfessionalLogger(base_dir=args.out)

    try:
        config = load_config(args.config)
        if args.seed is not None:
            config = config.with_seed(args.seed)
        thread_count = resolve_thread_count()
    except ConfigError as e:
        logger.error(f"❌ Configuration error: {e}")
        logger.close()
        return EXIT_ERROR

    logger.info(f"🔧 {args.subcommand}: config {args.config}, seed {config.seed}, {thread_count} thread(s)")
    exit_code = run_command(args.subcommand, config, args.out, logger, thread_count)

    # Generate summary of all files created
    logger.generate_files_summary()
    logger.info(f"📋 TOTAL FILES CREATED: {len(logger.files_created)}")
    if exit_code == 0:
        logger.info(f"🎉 VariPro - {args.subcommand} COMPLETED SUCCESSFULLY!")
    logger.close()
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
