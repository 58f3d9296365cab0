# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

import argparse
import sys
from contextlib import ExitStack
from enum import Enum, auto
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import threshold_rl.logging as logging
import threshold_rl.utils as utils

# Skip type checking to avoid mypy error
# Issue: https://github.com/python/mypy/issues/10632
import yaml  # type: ignore
from threshold_rl.constants import (
    DEFAULT_ARTIFACT_DIR,
    DEFAULT_GAMMA,
    DEFAULT_INIT_HALF_WIDTH,
    DEFAULT_LRATE,
    DEFAULT_REWARD_THRESHOLD,
    DEFAULT_SEED,
    DEFAULT_SWEEP_DIR,
    EXIT_CONVERGED,
    EXIT_NOT_CONVERGED,
    XOR_INIT_HALF_WIDTH,
)
from threshold_rl.environments import (
    MOTOR_ACTIONS,
    GridPhysics,
    physics_from_document,
)
from threshold_rl.exceptions import ConfigurationError
from threshold_rl.experiment_config import (
    DEFAULT_EXTINCTION_PRESENTATIONS,
    Algorithm,
    ExperimentConfig,
    Task,
    TraceLevel,
    default_punish_range,
)
from threshold_rl.export_data import OutputReporter, TraceWriter
from threshold_rl.export_data.weights_exporter import WeightsExporter
from threshold_rl.learning import LearningParams, PunishRange
from threshold_rl.network import load_weights
from threshold_rl.plots import PlotManager, RewardRecorder
from threshold_rl.plots.plot_manager import learning_curve_config, sweep_box_config
from threshold_rl.runner import multi_seed, run_experiment

from . import __version__


class Subcommand(Enum):
    RUN = auto()
    SWEEP = auto()
    INSPECT_WEIGHTS = auto()

    def to_lowercase(self):
        return self.name.lower().replace("_", "-")


logger = logging.getLogger(__name__)


def _check_experiment_args(
    parser: argparse.ArgumentParser, args: argparse.Namespace
) -> argparse.Namespace:
    """
    Convert task and algorithm names and check they were given somewhere.
    """
    for option, enum in [("task", Task), ("algo", Algorithm)]:
        value = getattr(args, option)
        if value is None:
            parser.error(
                f"The --{option} option is required, on the command line "
                "or in --config."
            )
        args = _convert_str_to_enum_entry(args, option, enum)
        if getattr(args, option) is None:
            parser.error(
                f"Unknown {option} '{value}'. Choose from "
                f"{', '.join(utils.get_enum_names(enum))}."
            )
    if getattr(args, "trace", None) is not None:
        value = args.trace
        args = _convert_str_to_enum_entry(args, "trace", TraceLevel)
        if args.trace is None:
            parser.error(f"Unknown trace level '{value}'.")
    return args


def _check_punish_range_args(
    parser: argparse.ArgumentParser, args: argparse.Namespace
) -> argparse.Namespace:
    """
    Accept a punish range given as a list in a config file.
    """
    value = args.punish_range
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            parser.error(f"punish_range needs two values, got {value}.")
        args.punish_range = (float(value[0]), float(value[1]))
    elif isinstance(value, str):
        args.punish_range = punish_range(value)
    return args


def _check_count_args(
    parser: argparse.ArgumentParser, args: argparse.Namespace
) -> argparse.Namespace:
    if args.subcommand == Subcommand.SWEEP.to_lowercase():
        if args.seeds < 1:
            parser.error("The --seeds option must be at least 1.")
        if args.workers < 1:
            parser.error("The --workers option must be at least 1.")
    if args.max_presentations is not None and args.max_presentations < 0:
        parser.error("The --max-presentations option must be non-negative.")
    return args


def _set_artifact_paths(args: argparse.Namespace) -> argparse.Namespace:
    args.artifact_dir = Path(args.artifact_dir)
    if args.subcommand == Subcommand.SWEEP.to_lowercase():
        args.artifact_dir = args.artifact_dir / DEFAULT_SWEEP_DIR
    return args


def _convert_str_to_enum_entry(args, option, enum):
    """
    Convert string option to corresponding enum entry
    """
    attr_val = getattr(args, option)
    if attr_val is not None and not isinstance(attr_val, enum):
        setattr(args, f"{option}", utils.get_enum_entry(attr_val, enum))
    return args


### Types ###


def punish_range(value: str) -> Tuple[float, float]:
    """`narrow`, `wide` or an explicit `LOW,HIGH` pair."""
    entry = utils.get_enum_entry(value, PunishRange)
    if entry is not None:
        return entry.bounds
    try:
        low, high = (float(v) for v in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"'{value}' is not narrow, wide or a LOW,HIGH pair."
        )
    return low, high


### Config file ###


def load_config_defaults(argv: List[str]) -> Dict[str, Any]:
    """Flat YAML mapping named by --config, with keys normalised to dests."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", type=Path, default=None)
    known, _ = pre.parse_known_args(argv)
    if known.config is None:
        return {}
    try:
        values = utils.load_yaml(known.config)
    except (OSError, yaml.YAMLError) as e:
        raise ConfigurationError(f"Cannot read config file '{known.config}': {e}")
    if values is None:
        return {}
    if not isinstance(values, dict):
        raise ConfigurationError(
            f"Config file '{known.config}' must hold a flat mapping of options."
        )
    defaults = {}
    for key, value in values.items():
        if isinstance(value, dict):
            raise ConfigurationError(f"Config option '{key}' must not be nested.")
        defaults[str(key).replace("-", "_")] = value
    return defaults


def _apply_config_defaults(
    subparsers: List[argparse.ArgumentParser], defaults: Dict[str, Any]
) -> None:
    """Give each subcommand the config keys it knows.

    A key only fails when no subcommand accepts it.
    """
    dests = [{action.dest for action in p._actions} for p in subparsers]
    unknown = sorted(set(defaults) - set().union(*dests))
    if unknown:
        options = ", ".join(utils.convert_option_name(k) for k in unknown)
        raise ConfigurationError(f"Unknown option(s) in config file: {options}")
    for subparser, known in zip(subparsers, dests):
        subparser.set_defaults(**{k: v for k, v in defaults.items() if k in known})


### Arguments ###


def _add_experiment_args(parser):
    experiment_group = parser.add_argument_group("Experiment")

    experiment_group.add_argument(
        "--config",
        type=Path,
        default=None,
        help="YAML file of option values. Options given on the command line "
        "override the file.",
    )

    experiment_group.add_argument(
        "--task",
        type=str,
        default=None,
        choices=utils.get_enum_names(Task),
        help="The task to train on.",
    )

    experiment_group.add_argument(
        "--algo",
        type=str,
        default=None,
        choices=utils.get_enum_names(Algorithm),
        help="The learning scheme.",
    )

    experiment_group.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help="Seed for weight initialisation, the environment and punishment draws.",
    )

    experiment_group.add_argument(
        "--max-presentations",
        type=int,
        default=None,
        help="Presentation cap. Defaults to ten times the reference count "
        "for the task and scheme, raised to the preset's minimum cap.",
    )

    experiment_group.add_argument(
        "--probe-interval",
        type=int,
        default=None,
        help="Presentations between convergence probes. Defaults to 100 on grid "
        "tasks and 4 on XOR.",
    )

    experiment_group.add_argument(
        "--env-config",
        type=Path,
        default=None,
        help="YAML environment document with goal_cell, blocked and spawn.",
    )

    experiment_group.add_argument(
        "--required-cells",
        type=int,
        nargs="+",
        default=None,
        help="Start cells that must be solved for convergence on a grid task.",
    )


def _add_network_args(parser):
    network_group = parser.add_argument_group("Network")

    network_group.add_argument(
        "--hidden-size",
        type=int,
        default=None,
        help="Hidden layer width. Defaults to 12 on grid tasks and 3 on XOR.",
    )

    network_group.add_argument(
        "--layer-sizes",
        type=int,
        nargs="+",
        default=None,
        help="Full list of layer sizes, overriding --hidden-size.",
    )

    network_group.add_argument(
        "--init-half-width",
        type=float,
        default=None,
        help=f"Initial weights are drawn uniformly from [-w, w]. Defaults to "
        f"{XOR_INIT_HALF_WIDTH} on XOR and {DEFAULT_INIT_HALF_WIDTH} on grid tasks.",
    )

    network_group.add_argument(
        "--load-weights",
        type=Path,
        default=None,
        help="Start from the weights in this file instead of a random network.",
    )


def _add_learning_args(parser):
    learning_group = parser.add_argument_group("Learning")

    learning_group.add_argument(
        "--lrate",
        type=float,
        default=DEFAULT_LRATE,
        help="The learning rate.",
    )

    learning_group.add_argument(
        "--gamma",
        type=float,
        default=DEFAULT_GAMMA,
        help="Discount applied to the reward node target.",
    )

    learning_group.add_argument(
        "--reward-threshold",
        type=float,
        default=DEFAULT_REWARD_THRESHOLD,
        help="Reward node activation above which a state is a conditioned reward.",
    )

    learning_group.add_argument(
        "--punish-range",
        type=punish_range,
        default=None,
        help="Range of desired activations after punishment: narrow "
        "([0.45, 0.55]), wide ([0, 1]) or LOW,HIGH. Defaults to wide for TAC "
        "on XOR and narrow otherwise.",
    )

    learning_group.add_argument(
        "--extinction-after",
        type=int,
        default=None,
        help="Disable primary reward after this many presentations, or after "
        "convergence when 0.",
    )

    learning_group.add_argument(
        "--extinction-presentations",
        type=int,
        default=DEFAULT_EXTINCTION_PRESENTATIONS,
        help="Presentations trained with primary reward disabled.",
    )


def _add_output_args(parser, run: bool):
    output_group = parser.add_argument_group("Output")

    output_group.add_argument(
        "--artifact-dir",
        "--out",
        type=Path,
        default=Path(DEFAULT_ARTIFACT_DIR),
        help="The directory to store all the (output) artifacts.",
    )

    output_group.add_argument(
        "--name",
        type=str,
        default=None,
        help="Prefix of the output files. Defaults to <task>_<algo>.",
    )

    output_group.add_argument(
        "--generate-plots",
        action="store_true",
        required=False,
        help="Write HTML plots to the plots directory of the artifact dir.",
    )

    if run:
        output_group.add_argument(
            "--save-weights",
            type=Path,
            default=None,
            help="Write the trained weights to this YAML file.",
        )

        output_group.add_argument(
            "--trace",
            type=str,
            default=None,
            choices=utils.get_enum_names(TraceLevel),
            help="Write a JSON-lines trace with one line per presentation or "
            "per reward event.",
        )


def _add_other_args(parser):
    other_group = parser.add_argument_group("Other")

    other_group.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        required=False,
        help="An option to enable verbose mode.",
    )


def _parse_run_args(subparsers) -> argparse.ArgumentParser:
    run = subparsers.add_parser(
        Subcommand.RUN.to_lowercase(),
        description="Subcommand to train one network to convergence or cap.",
    )
    _add_experiment_args(run)
    _add_network_args(run)
    _add_learning_args(run)
    _add_output_args(run, run=True)
    _add_other_args(run)
    run.set_defaults(func=run_handler)
    return run


def _parse_sweep_args(subparsers) -> argparse.ArgumentParser:
    sweep = subparsers.add_parser(
        Subcommand.SWEEP.to_lowercase(),
        description="Subcommand to run a configuration over consecutive seeds.",
    )
    _add_experiment_args(sweep)
    _add_network_args(sweep)
    _add_learning_args(sweep)
    _add_output_args(sweep, run=False)
    sweep_group = sweep.add_argument_group("Sweep")
    sweep_group.add_argument(
        "--seeds",
        type=int,
        default=20,
        help="Number of seeds, starting at --seed.",
    )
    sweep_group.add_argument(
        "--workers",
        type=int,
        default=1,
        help="Worker processes running seeds in parallel.",
    )
    _add_other_args(sweep)
    sweep.set_defaults(func=sweep_handler)
    return sweep


def _parse_inspect_weights_args(subparsers) -> argparse.ArgumentParser:
    inspect = subparsers.add_parser(
        Subcommand.INSPECT_WEIGHTS.to_lowercase(),
        description="Subcommand to summarise a weight file.",
    )
    inspect.add_argument("weights", type=Path, help="The weight file to inspect.")
    inspect.add_argument(
        "--task",
        type=str,
        default=None,
        choices=utils.get_enum_names(Task),
        help="Also print the greedy policy for this task.",
    )
    inspect.add_argument(
        "--env-config",
        type=Path,
        default=None,
        help="YAML environment document for the policy map.",
    )
    _add_other_args(inspect)
    inspect.set_defaults(func=inspect_weights_handler)
    return inspect


### Handlers ###


def load_env_document(path: Path) -> GridPhysics:
    try:
        document = utils.load_yaml(path)
    except (OSError, yaml.YAMLError) as e:
        raise ConfigurationError(f"Cannot read environment document '{path}': {e}")
    return physics_from_document(document)


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    if args.punish_range is None:
        low, high = default_punish_range(args.task, args.algo).bounds
    else:
        low, high = args.punish_range
    params = LearningParams(
        lrate=args.lrate,
        gamma=args.gamma,
        reward_threshold_out=args.reward_threshold,
        punish_low=low,
        punish_high=high,
    )
    physics = None
    if args.env_config is not None:
        physics = load_env_document(args.env_config)
    return ExperimentConfig(
        task=args.task,
        algorithm=args.algo,
        seed=args.seed,
        max_presentations=args.max_presentations,
        params=params,
        layer_sizes=args.layer_sizes,
        hidden_size=args.hidden_size,
        physics=physics,
        required_cells=args.required_cells,
        init_half_width=args.init_half_width,
        probe_interval=args.probe_interval,
        extinction_after=args.extinction_after,
        extinction_presentations=args.extinction_presentations,
        load_weights=args.load_weights,
        save_weights=getattr(args, "save_weights", None),
        trace=getattr(args, "trace", None),
        artifact_dir=args.artifact_dir,
        name=args.name,
        generate_plots=args.generate_plots,
    )


def run_handler(args: argparse.Namespace) -> int:
    """Handles `run` subcommand workflow."""
    cfg = config_from_args(args)
    recorder = RewardRecorder() if cfg.generate_plots else None
    with ExitStack() as stack:
        callbacks = []
        if cfg.trace is not None:
            trace_file = cfg.artifact_dir / f"{cfg.name}_trace.jsonl"
            callbacks.append(stack.enter_context(TraceWriter(trace_file, cfg.trace)))
        if recorder is not None:
            callbacks.append(recorder)
        metrics = run_experiment(cfg, callbacks)

    OutputReporter(cfg, metrics=metrics).report_output()
    if recorder is not None:
        plot_dir = cfg.artifact_dir / "plots"
        curve = learning_curve_config(cfg.name, recorder, plot_dir)
        PlotManager([curve]).generate_plots()
    return EXIT_CONVERGED if metrics.converged else EXIT_NOT_CONVERGED


def sweep_handler(args: argparse.Namespace) -> int:
    """Handles `sweep` subcommand workflow."""
    cfg = config_from_args(args)
    stats = multi_seed(cfg, args.seeds, args.workers)
    OutputReporter(cfg, stats=stats).report_output()
    if cfg.generate_plots:
        plot_dir = cfg.artifact_dir / "plots"
        PlotManager([sweep_box_config(cfg.name, stats, plot_dir)]).generate_plots()
    return EXIT_CONVERGED if stats.success_rate == 1.0 else EXIT_NOT_CONVERGED


def inspect_weights_handler(args: argparse.Namespace) -> int:
    """Handles `inspect-weights` subcommand workflow."""
    net = load_weights(args.weights)
    cfg: Optional[ExperimentConfig] = None
    if args.task is not None:
        task = utils.get_enum_entry(args.task, Task)
        physics = None
        if args.env_config is not None:
            physics = load_env_document(args.env_config)
        # A grid network with one output beyond the motors carries a reward node.
        has_reward_node = (
            task != Task.XOR and net.output_size == len(MOTOR_ACTIONS) + 1
        )
        cfg = ExperimentConfig(
            task=task,
            algorithm=Algorithm.TAR if has_reward_node else Algorithm.TAP,
            layer_sizes=net.layer_sizes,
            physics=physics,
        )
    WeightsExporter(net, cfg).export()
    return EXIT_CONVERGED


### Parser Initialization ###


def init_parsers(config_defaults: Optional[Dict[str, Any]] = None):
    parser = argparse.ArgumentParser(
        prog="threshold-rl",
        description="CLI to train threshold-assignment networks on grid worlds "
        "and XOR",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument(
        "--version",
        action="version",
        version="%(prog)s " + __version__,
        help=f"An option to print the version and exit.",
    )

    # Add subcommands
    subparsers = parser.add_subparsers(
        help="List of subparser commands.", dest="subcommand"
    )
    run = _parse_run_args(subparsers)
    sweep = _parse_sweep_args(subparsers)
    _ = _parse_inspect_weights_args(subparsers)
    subparsers.required = True

    if config_defaults:
        _apply_config_defaults([run, sweep], config_defaults)

    return parser


def refine_args(
    parser: argparse.ArgumentParser, args: argparse.Namespace
) -> argparse.Namespace:
    if args.subcommand in [
        Subcommand.RUN.to_lowercase(),
        Subcommand.SWEEP.to_lowercase(),
    ]:
        args = _check_experiment_args(parser, args)
        args = _check_punish_range_args(parser, args)
        args = _check_count_args(parser, args)
        args = _set_artifact_paths(args)
    elif args.subcommand == Subcommand.INSPECT_WEIGHTS.to_lowercase():
        pass
    else:
        raise ValueError(f"Unknown subcommand: {args.subcommand}")

    return args


### Entrypoint ###


def parse_args(argv: Optional[List[str]] = None):
    if argv is None:
        argv = sys.argv[1:]

    parser = init_parsers(load_config_defaults(argv))
    args = parser.parse_args(argv)
    args = refine_args(parser, args)

    return args
