""" Command line: `byzsim run|zmax|sweep`. """

import sys
import argparse

from . import com
from .com import ByzsimError, logger
from .core import ExperimentConfig, run_experiment, run_sweep
from .defenses import DEFENSE_KINDS
from .attacks import ATTACK_KINDS
from .stats import compute_z_max

# flat config keys `run` flags may override
RUN_OVERRIDES = (
    "n",
    "m",
    "rounds",
    "defense",
    "attack",
    "z",
    "alpha",
    "seed",
    "dataset",
    "out_csv",
    "out_json",
    "n_threads",
)


def parse_floats(text):
    try:
        return [float(value) for value in text.split(",") if value.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("Expect comma-separated numbers, got `%s`." % text)


def parse_ints(text):
    try:
        return [int(value) for value in text.split(",") if value.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("Expect comma-separated integers, got `%s`." % text)


def get_parser():
    parser = argparse.ArgumentParser(
        prog="byzsim",
        description="Simulate parameter-server training under Byzantine workers and robust aggregation.",
    )
    parser.add_argument("--verbosity", type=int, default=2, choices=(0, 1, 2), help="2: info, 1: warnings, 0: errors")
    parser.add_argument("--log-file", default=None, help="Also write logs to this file")
    subparsers = parser.add_subparsers(dest="command", required=True)

    run = subparsers.add_parser("run", help="Run one experiment")
    run.add_argument("--config", default=None, help="Flat JSON configuration file")
    run.add_argument("--n", type=int, help="Number of workers")
    run.add_argument("--m", type=int, help="Number of corrupted workers")
    run.add_argument("--rounds", type=int, help="Number of training rounds")
    run.add_argument("--defense", choices=DEFENSE_KINDS, help="Aggregation rule of the parameter server")
    run.add_argument("--attack", choices=ATTACK_KINDS, help="Malicious intervention")
    run.add_argument("--z", type=float, help="Attack shift in standard deviations")
    run.add_argument("--alpha", type=float, help="Weight of the backdoor loss")
    run.add_argument("--seed", type=int, help="Master seed")
    run.add_argument("--dataset", choices=("blobs", "idx"), help="Dataset source")
    run.add_argument("--out-csv", dest="out_csv", help="Per-round CSV output")
    run.add_argument("--out-json", dest="out_json", help="Summary JSON output")
    run.add_argument("--threads", dest="n_threads", type=int, help="Worker-training threads, 0 for all CPUs")

    zmax = subparsers.add_parser("zmax", help="Print the attack budget of m corrupted workers out of n")
    zmax.add_argument("--n", type=int, required=True)
    zmax.add_argument("--m", type=int, required=True)

    sweep = subparsers.add_parser("sweep", help="Best accuracy over a grid of z and m")
    sweep.add_argument("--config", required=True, help="Flat JSON configuration file")
    sweep.add_argument("--zs", type=parse_floats, required=True, help="Comma-separated z values, e.g. 0,0.5,1,1.5")
    sweep.add_argument("--ms", type=parse_ints, default=None, help="Comma-separated m values, defaults to the config's m")
    sweep.add_argument("--out-csv", dest="out_csv", default=None, help="Sweep CSV output")
    return parser


def load_config(path, overrides):
    if path:
        return com.restore_config(path, **overrides)
    return ExperimentConfig.from_flat({key: value for key, value in overrides.items() if value is not None})


def main(argv=None):
    """ Entry point. Returns the process exit code. """
    args = get_parser().parse_args(argv)
    com.set_verbosity(args.verbosity)
    if args.log_file:
        com.set_log(args.log_file)

    try:
        if args.command == "zmax":
            budget = compute_z_max(args.n, args.m)
            print("n=%d m=%d s=%d" % (budget.n, budget.m, budget.s))
            print("threshold=%s" % format(budget.threshold, ".12g"))
            print("z_max=%.2f" % budget.z_max)
            print("z_continuous=%s" % format(budget.z_continuous, ".12g"))
        elif args.command == "run":
            overrides = {key: getattr(args, key) for key in RUN_OVERRIDES}
            _, summary = run_experiment(load_config(args.config, overrides))
            logger.info(
                "Best accuracy %.4f at round %d", summary["best_accuracy"], summary["best_round"],
            )
        else:
            rows = run_sweep(load_config(args.config, {}), args.zs, ms=args.ms, out_csv=args.out_csv)
            for row in rows:
                logger.info(
                    "z=%s m=%d: best accuracy %.4f at round %d",
                    row["z"], row["m"], row["best_accuracy"], row["best_round"],
                )
    except ByzsimError as e:
        logger.error("%s error: %s", e.category.capitalize(), e)
        return e.exit_code
    except OSError as e:
        logger.error("I/O error: %s", e)
        return 5
    except Exception:
        logger.exception("Unexpected error")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
