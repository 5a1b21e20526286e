"""
Command-line front end.

    python -m src.lotto_cli value instance.json
    python -m src.lotto_cli sweep instance.json --y-range 0.05:3:0.05 --k 2 --out sweep.csv
    python -m src.lotto_cli simulate --values 0.5,0.3,0.2 --budgets 1,1.5 --samples 1000000 --seed 7
    python -m src.lotto_cli multi instance.json --k 2 --restarts 50
    python -m src.lotto_cli oracle instance.json --grid 0.05 --iters 20000
    python -m src.lotto_cli plot --in sweep.csv --out sweep.svg

Exit codes: 0 success, 1 solver failure, 2 unreadable input or bad flags, 3 invalid values,
4 output not writable, 5 instance too large for the requested computation.
"""
import argparse
import logging
import sys

from src.discrete_oracle.discrete_game import build_discrete_game
from src.discrete_oracle.fictitious_play import fictitious_play
from src.lotto_cli.plot import plot_sweep_csv
from src.lotto_cli.run_configurations import (
    FP_ITERATIONS,
    NUM_SAMPLES,
    NUM_WORKERS,
    RESTARTS,
    SEED,
    WITHIN_BOUNDS_SE,
    Y_RANGE,
)
from src.lotto_cli.sweep import parse_y_range, sweep_frame, validate_sweep_frame, write_sweep_csv
from src.lotto_core.errors import (
    InstanceFormatError,
    InvalidArgumentError,
    SolverError,
    UnsupportedSizeError,
)
from src.lotto_core.game_instance import NORMALIZE, STRICT, GameInstance, load_instance
from src.lotto_core.serialization import dumps_report
from src.multi_bounds.optimizer import optimize_lower_K, optimize_upper_K
from src.single_bounds.bounds_report import compute_bounds
from src.strategy_lab.best_responses import (
    best_response_X_payoff,
    best_response_Y_payoff,
    exact_pair_payoff,
    single_attack_payoff,
)
from src.strategy_lab.monte_carlo import monte_carlo_payoff
from src.strategy_lab.strategies import XHatStrategy, YHatStrategy

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_SOLVER = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4
EXIT_UNSUPPORTED = 5


def float_list(text: str) -> list:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def instance_from_args(args) -> GameInstance:
    """Instance file first, then --values / --budgets overrides."""
    mode = NORMALIZE if args.normalize else STRICT
    X = Y = raw_v = None
    if args.instance is not None:
        inst = load_instance(args.instance, NORMALIZE)
        X, Y = inst.X, inst.Y
        raw_v = (inst.to_original(inst.v) * inst.scale).tolist()

    if args.budgets is not None:
        if len(args.budgets) != 2:
            raise InstanceFormatError(f"--budgets takes exactly two numbers X,Y, got {len(args.budgets)}")
        X, Y = args.budgets
    if args.values is not None:
        raw_v = args.values

    if X is None or raw_v is None:
        raise InstanceFormatError("give an instance file or both --values and --budgets")
    return GameInstance.from_valuations(X, Y, raw_v, mode)


def emit(text: str, out_path: str = None) -> None:
    if out_path is None:
        print(text)
        return
    with open(out_path, "w") as f:
        f.write(text + "\n")
    log.info(f"Wrote {out_path}")


def cmd_value(args) -> int:
    inst = instance_from_args(args)
    report = compute_bounds(inst)
    emit(report.format_text() if args.text else dumps_report(report.to_dict()), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    inst = instance_from_args(args)
    if args.out is None:
        raise InstanceFormatError("sweep needs --out for the CSV file")
    lo, hi, step = args.y_range
    ks = sorted(set(args.k or []))

    frame = sweep_frame(
        inst, lo, hi, step, ks=ks, restarts=args.restarts, seed=args.seed, show_progress=not args.quiet
    )
    violations = validate_sweep_frame(frame)
    write_sweep_csv(frame, args.out)
    log.info(f"Wrote {len(frame)} rows to {args.out} ({len(violations)} invariant violations)")
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.samples < 1:
        raise InvalidArgumentError(f"--samples must be at least 1, got {args.samples}")
    inst = instance_from_args(args)
    bounds = compute_bounds(inst)

    fx = XHatStrategy.optimal(bounds.lower.alpha_star, inst)
    fy = YHatStrategy.optimal(bounds.upper.p_star, inst)

    envelope_payoff, _ = best_response_Y_payoff(fx, inst)
    x_response_payoff, _ = best_response_X_payoff(fy, inst)
    mc = monte_carlo_payoff(fx, fy, args.samples, args.seed, num_workers=args.workers)

    band = WITHIN_BOUNDS_SE * mc.std_error
    report = {
        **mc.to_dict(),
        "lb": bounds.lb,
        "ub": bounds.ub,
        "within_bounds": bool(bounds.lb - band <= mc.estimate <= bounds.ub + band),
        "exact_pair_payoff": exact_pair_payoff(fx, fy),
        "single_attack_payoff": single_attack_payoff(fx, inst),
        "envelope_payoff": envelope_payoff,
        "best_response_X_payoff": x_response_payoff,
    }
    emit(dumps_report(report), args.out)
    return EXIT_OK


def cmd_multi(args) -> int:
    inst = instance_from_args(args)
    lower, lower_vars = optimize_lower_K(
        inst, args.k, restarts=args.restarts, seed=args.seed, show_progress=not args.quiet
    )
    upper, upper_vars = optimize_upper_K(
        inst, args.k, restarts=args.restarts, seed=args.seed, show_progress=not args.quiet
    )
    report = {
        "K": args.k,
        "lower": {"value": lower, **lower_vars.to_dict(inst)},
        "upper": {"value": upper, **upper_vars.to_dict(inst)},
        "restarts": args.restarts,
        "seed": args.seed,
    }
    emit(dumps_report(report), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = instance_from_args(args)
    game = build_discrete_game(inst, grid_step=args.grid, cap=args.cap, restricted_y=not args.unrestricted)
    result = fictitious_play(game, inst, iters=args.iters, seed=args.seed, show_progress=not args.quiet)

    report = {**result.to_dict(), "y_offset": game.grid_step / 2, "restricted_y": game.restricted_y}
    emit(dumps_report(report), args.out)
    return EXIT_OK


def cmd_plot(args) -> int:
    plot_sweep_csv(args.in_path, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="restricted-lotto",
        description="Security-value bounds for General Lotto games where one player attacks a single contest.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="log debug messages")
    verbosity.add_argument("--quiet", action="store_true", help="log warnings and errors only, no progress bars")

    instance_args = argparse.ArgumentParser(add_help=False)
    instance_args.add_argument("instance", nargs="?", help='JSON file {"X": ..., "Y": ..., "v": [...]}')
    instance_args.add_argument("--values", type=float_list, help="contest valuations, e.g. 0.5,0.3,0.2")
    instance_args.add_argument("--budgets", type=float_list, help="budgets X,Y, e.g. 1,0.5")
    instance_args.add_argument("--normalize", action="store_true", help="rescale valuations to sum to 1")
    instance_args.add_argument("--out", help="write the result to this file instead of stdout")

    subparsers = parser.add_subparsers(dest="command", required=True)

    value = subparsers.add_parser("value", parents=[instance_args], help="LB*, UB* and the classic value")
    value.add_argument("--text", action="store_true", help="aligned text instead of JSON")
    value.set_defaults(func=cmd_value)

    sweep = subparsers.add_parser("sweep", parents=[instance_args], help="bounds over a range of Y, as CSV")
    sweep.add_argument("--y-range", type=parse_y_range, default=Y_RANGE, help="lo:hi:step (default %(default)s)")
    sweep.add_argument("--k", type=int, action="append", help="also trace the K-contest bounds (repeatable)")
    sweep.add_argument("--restarts", type=int, default=RESTARTS)
    sweep.add_argument("--seed", type=int, default=SEED)
    sweep.set_defaults(func=cmd_sweep)

    simulate = subparsers.add_parser("simulate", parents=[instance_args], help="check the optimal strategy pair")
    simulate.add_argument("--samples", type=int, default=NUM_SAMPLES)
    simulate.add_argument("--seed", type=int, default=SEED)
    simulate.add_argument("--workers", type=int, default=NUM_WORKERS)
    simulate.set_defaults(func=cmd_simulate)

    multi = subparsers.add_parser("multi", parents=[instance_args], help="bounds when Y attacks K contests")
    multi.add_argument("--k", type=int, required=True)
    multi.add_argument("--restarts", type=int, default=RESTARTS)
    multi.add_argument("--seed", type=int, default=SEED)
    multi.set_defaults(func=cmd_multi)

    oracle = subparsers.add_parser("oracle", parents=[instance_args], help="fictitious play on a discretized game")
    oracle.add_argument("--grid", type=float, help="amount lattice step (default 0.05 * min(X, Y, 1))")
    oracle.add_argument("--cap", type=float, help="largest per-contest amount (default 4 * max(X, Y))")
    oracle.add_argument("--iters", type=int, default=FP_ITERATIONS)
    oracle.add_argument("--seed", type=int, default=SEED)
    oracle.add_argument("--unrestricted", action="store_true", help="let Y split its budget across contests")
    oracle.set_defaults(func=cmd_oracle)

    plot = subparsers.add_parser("plot", help="SVG line plot of a sweep CSV")
    plot.add_argument("--in", dest="in_path", required=True)
    plot.add_argument("--out", required=True)
    plot.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="[%(levelname)s]: %(message)s")

    try:
        return args.func(args)
    except InstanceFormatError as e:
        log.error(str(e))
        return EXIT_PARSE
    except UnsupportedSizeError as e:
        log.error(str(e))
        return EXIT_UNSUPPORTED
    except InvalidArgumentError as e:
        log.error(str(e))
        return EXIT_VALIDATION
    except SolverError as e:
        log.error(str(e))
        return EXIT_SOLVER
    except OSError as e:
        log.error(f"I/O error: {e}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
