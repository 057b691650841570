#!/usr/bin/env python3
"""
BOLab CLI - Benjamin-Ono experiment runner
Main entry point: run an experiment file, or describe an experiment kind
"""
import sys
import os
import argparse
import logging

# Add the root directory to the path
sys.path.append(os.path.dirname(__file__))

from config import Config
from src.errors import BlowupError, BOLabError, ExperimentConfigError
from src.experiments import EXPERIMENT_KINDS, ExperimentRunner, describe_experiment, load_config

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_BLOWUP = 3


def cmd_run(args):
    """Handle run command"""
    if not Config.validate():
        print("❌ Configuration invalid!")
        print("   Check the BOLAB_* environment variables")
        return EXIT_CONFIG

    try:
        config, raw = load_config(args.config)
    except ExperimentConfigError as e:
        print(f"❌ Config error in {args.config}: {e}")
        return EXIT_CONFIG

    runner = ExperimentRunner(config, raw, output_root=args.output_root)

    try:
        manifest = runner.run()
    except ExperimentConfigError as e:
        print(f"❌ Config error in {args.config}: {e}")
        return EXIT_CONFIG
    except BlowupError as e:
        print(f"❌ Numerical blowup: {e}")
        return EXIT_BLOWUP
    except BOLabError as e:
        print(f"❌ Experiment failed: {e}")
        return EXIT_FAILURE
    except Exception as e:
        print(f"❌ Unexpected failure: {type(e).__name__}: {e}")
        return EXIT_FAILURE

    print(f"✅ Done, manifest at {manifest}")
    return EXIT_OK


def cmd_describe(args):
    """Print the config schema and output columns of an experiment kind"""
    try:
        print(describe_experiment(args.kind))
    except ExperimentConfigError as e:
        print(f"❌ {e}")
        return EXIT_CONFIG
    return EXIT_OK


def main(argv=None):
    """Main CLI entry point"""
    parser = argparse.ArgumentParser(
        description="BOLab - periodic Benjamin-Ono numerical toolkit",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"""
Examples:
  # Run an experiment file
  python bolab_cli.py run experiments/evolve_cos.toml

  # Show the schema and output columns of a kind
  python bolab_cli.py describe illposed

Kinds: {', '.join(EXPERIMENT_KINDS)}
Artifacts go under $BOLAB_OUTPUT_ROOT (default: {Config.OUTPUT_ROOT})
Exit codes: 0 success, 1 failure, 2 config error, 3 numerical blowup
        """
    )
    parser.add_argument('--verbose', action='store_true',
                        help='Log solver progress')

    subparsers = parser.add_subparsers(dest='command', help='Commands')

    run_parser = subparsers.add_parser('run', help='Run one experiment file')
    run_parser.add_argument('config', help='Path to a TOML experiment file')
    run_parser.add_argument('--output-root', default=None,
                            help='Root for relative output_dir values')
    run_parser.set_defaults(func=cmd_run)

    describe_parser = subparsers.add_parser('describe', help='Describe an experiment kind')
    describe_parser.add_argument('kind', help='Experiment kind')
    describe_parser.set_defaults(func=cmd_describe)

    args = parser.parse_args(argv)

    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(asctime)s %(name)s %(levelname)s %(message)s")

    if not args.command:
        parser.print_help()
        print("\n💡 Tip: Start with 'python bolab_cli.py describe evolve'")
        return EXIT_FAILURE

    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
