# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Optional

import numpy as np
import threshold_rl.logging as logging
from threshold_rl.environments import (
    GridState,
    GridWorld,
    XorEnvironment,
    decode_action,
    encode_observation,
    grid_dataset,
    xor_dataset,
)
from threshold_rl.exceptions import ConfigurationError
from threshold_rl.experiment_config import Algorithm, ExperimentConfig
from threshold_rl.learning import (
    RewardSource,
    StepRecord,
    SupervisedStop,
    dataset_converged,
    motor_indices,
    tac_step,
    tap_step,
    tar_step,
    train_supervised,
)
from threshold_rl.metrics import SweepStatistics, TrialMetrics
from threshold_rl.network import (
    Network,
    init_network,
    is_mature,
    load_weights,
    save_weights,
    thresholded_fire,
)

logger = logging.getLogger(__name__)

StepCallback = Callable[[StepRecord], None]

# Keys mixed with the seed so environment and learning draws never share a stream.
ENVIRONMENT_STREAM = 1
LEARNING_STREAM = 2


@dataclass
class RolloutResult:
    start_cell: int
    path: List[int]
    actions: List[str]
    reached_goal: bool
    mature: bool

    @property
    def learnt(self) -> bool:
        return self.reached_goal and self.mature


def greedy_rollout(
    net: Network, cfg: ExperimentConfig, start_cell: int
) -> RolloutResult:
    """Follow the thresholded motor output from `start_cell` without learning.

    Gives up after twice the grid diameter. `mature` covers every motor
    output seen along the way.
    """
    physics = cfg.physics
    motors = motor_indices(net.output_size, cfg.tar_config())
    thresholds = net.output_thresholds[motors]
    cell = start_cell
    path = [cell]
    actions: List[str] = []
    mature = True
    for _ in range(2 * physics.diameter):
        outputs = net.propagate(encode_observation(GridState(cell), physics.side))[-1]
        motor_out = outputs[motors]
        mature = mature and bool(
            is_mature(motor_out, cfg.params.mature_hi, cfg.params.mature_lo).all()
        )
        action = decode_action(thresholded_fire(motor_out, thresholds))
        actions.append(action.to_lowercase())
        cell = physics.move(cell, action)
        path.append(cell)
        if cell == physics.goal_cell:
            return RolloutResult(start_cell, path, actions, True, mature)
    return RolloutResult(start_cell, path, actions, False, mature)


def probe_targets(cfg: ExperimentConfig) -> List[int]:
    """Required start cells, or the XOR pattern indices."""
    if cfg.is_grid:
        return list(cfg.required_cells)
    return list(range(len(xor_dataset())))


def probe(net: Network, cfg: ExperimentConfig) -> Dict[int, bool]:
    """Which probe targets the network currently solves."""
    if cfg.is_grid:
        return {c: greedy_rollout(net, cfg, c).learnt for c in cfg.required_cells}
    return {
        i: dataset_converged(net, [pattern], cfg.params)
        for i, pattern in enumerate(xor_dataset())
    }


def convergence_check(
    net: Network,
    cfg: ExperimentConfig,
    metrics: Optional[TrialMetrics] = None,
    presentation: int = 0,
) -> bool:
    """True when every probe target is solved with mature motor outputs.

    When `metrics` is given, newly learnt targets are stamped with
    `presentation`.
    """
    solved = probe(net, cfg)
    if metrics is not None:
        for target, ok in solved.items():
            if ok:
                metrics.mark_learnt(target, presentation)
    return all(solved.values())


def policy_map(net: Network, cfg: ExperimentConfig) -> Dict[int, str]:
    if not cfg.is_grid:
        policy = {}
        for i, (inputs, _) in enumerate(xor_dataset()):
            fired = net.propagate(inputs)[-1][0] > net.output_thresholds[0]
            policy[i] = "fire" if fired else "rest"
        return policy
    physics = cfg.physics
    motors = motor_indices(net.output_size, cfg.tar_config())
    policy = {}
    for cell in range(physics.num_cells):
        if cell == physics.goal_cell:
            continue
        outputs = net.propagate(encode_observation(GridState(cell), physics.side))[-1]
        firing = thresholded_fire(outputs[motors], net.output_thresholds[motors])
        policy[cell] = decode_action(firing).to_lowercase()
    return policy


def reward_node_values(net: Network, cfg: ExperimentConfig) -> Dict[int, float]:
    physics = cfg.physics
    index = cfg.reward_output_index
    return {
        cell: float(
            net.propagate(encode_observation(GridState(cell), physics.side))[-1][index]
        )
        for cell in sorted(physics.distances_to_goal())
        if cell != physics.goal_cell
    }


class ExperimentRunner:
    """Builds the network and world for one config and trains to convergence or cap."""

    def __init__(
        self,
        config: ExperimentConfig,
        step_callbacks: Optional[List[StepCallback]] = None,
    ) -> None:
        self.config = config
        self.step_callbacks = list(step_callbacks or [])
        self.net = self._build_network()
        self.env = self._build_environment()
        self.rng = np.random.default_rng([config.seed, LEARNING_STREAM])
        self.metrics = TrialMetrics()
        self._tar_cfg = config.tar_config()

    def _build_network(self) -> Network:
        cfg = self.config
        if cfg.load_weights is None:
            return init_network(cfg.layer_sizes, cfg.init_half_width, cfg.seed)
        net = load_weights(cfg.load_weights)
        if net.layer_sizes != list(cfg.layer_sizes):
            raise ConfigurationError(
                f"Loaded network has layers {net.layer_sizes}, the run needs "
                f"{cfg.layer_sizes}."
            )
        return net

    def _build_environment(self):
        cfg = self.config
        if cfg.is_grid:
            rng = np.random.default_rng([cfg.seed, ENVIRONMENT_STREAM])
            return GridWorld(cfg.physics, rng)
        return XorEnvironment()

    @property
    def reward_source(self) -> RewardSource:
        if self.config.is_grid:
            return RewardSource.PRIMARY_INPUT
        return RewardSource.FRAMEWORK_RULE

    def step(self, presentation: int) -> StepRecord:
        cfg = self.config
        if cfg.algorithm == Algorithm.TAC:
            return tac_step(
                self.net,
                self.env,
                self._tar_cfg,
                cfg.params,
                self.rng,
                presentation,
                self.reward_source,
            )
        if cfg.algorithm == Algorithm.TAR and self._tar_cfg is not None:
            return tar_step(
                self.net, self.env, self._tar_cfg, cfg.params, self.rng, presentation
            )
        return tap_step(
            self.net, self.env, cfg.params, self.rng, presentation, self.reward_source
        )

    def _train_one(self, presentation: int) -> None:
        record = self.step(presentation)
        if record.reward.rewarded:
            self.metrics.reward_events += 1
            if record.reward.source == RewardSource.CONDITIONED_OUTPUT:
                self.metrics.conditioned_reward_events += 1
            else:
                self.metrics.primary_reward_events += 1
        for callback in self.step_callbacks:
            callback(record)

    def _probe(self, presentation: int) -> bool:
        converged = convergence_check(self.net, self.config, self.metrics, presentation)
        if self.config.uses_reward_node:
            threshold = self.config.params.reward_threshold_out
            onsets = self.metrics.reward_node_onsets
            for cell, value in reward_node_values(self.net, self.config).items():
                if value > threshold and onsets.get(cell) is None:
                    onsets[cell] = presentation
        return converged

    def run(self) -> TrialMetrics:
        cfg = self.config
        start = time.perf_counter()
        if cfg.algorithm == Algorithm.SUPERVISED:
            self._run_supervised()
        else:
            self._run_reinforcement()
        self._finalize()
        self.metrics.wall_clock = time.perf_counter() - start
        if cfg.save_weights is not None:
            save_weights(self.net, cfg.save_weights)
        if self.metrics.converged:
            logger.info(
                f"{cfg.name} seed {cfg.seed}: converged after "
                f"{self.metrics.presentations_to_convergence} presentations"
            )
        else:
            logger.info(
                f"{cfg.name} seed {cfg.seed}: not converged after "
                f"{self.metrics.presentations} presentations"
            )
        return self.metrics

    def _run_supervised(self) -> None:
        cfg = self.config
        if cfg.is_grid:
            # Every cell that can reach the goal, so rollouts pass through known cells.
            dataset = grid_dataset(
                cfg.physics,
                sorted(cfg.physics.distances_to_goal()),
                reward_node=cfg.uses_reward_node,
                gamma=cfg.params.gamma,
            )
            stop = SupervisedStop(
                cfg.max_presentations, criterion=lambda net: convergence_check(net, cfg)
            )
        else:
            dataset = xor_dataset()
            stop = SupervisedStop(cfg.max_presentations)
        self.metrics = train_supervised(self.net, dataset, cfg.params, stop)
        self.metrics.learnt_cells = {t: None for t in probe_targets(cfg)}
        convergence_check(self.net, cfg, self.metrics, self.metrics.presentations)

    def _run_reinforcement(self) -> None:
        cfg = self.config
        m = self.metrics
        m.learnt_cells = {t: None for t in probe_targets(cfg)}
        if cfg.uses_reward_node:
            m.reward_node_onsets = {
                c: None for c in reward_node_values(self.net, cfg)
            }
        if self._probe(0):
            m.started_converged = True
            m.mark_converged(0)
        # A positive extinction point fixes the acquisition length instead.
        stop_on_convergence = not cfg.extinction_after
        limit = cfg.max_presentations
        if cfg.extinction_after:
            limit = min(limit, cfg.extinction_after)
        presentation = 0
        while presentation < limit:
            if m.converged and stop_on_convergence:
                break
            presentation += 1
            self._train_one(presentation)
            if not m.converged and presentation % cfg.probe_interval == 0:
                if self._probe(presentation):
                    m.mark_converged(presentation)
        m.presentations = presentation
        if cfg.extinction_after is not None:
            if cfg.extinction_after == 0 and not m.converged:
                logger.info(
                    f"{cfg.name} seed {cfg.seed}: never converged, skipping extinction"
                )
            else:
                m.presentations = self._run_extinction(presentation)

    def _motor_outputs(self) -> np.ndarray:
        cfg = self.config
        motors = motor_indices(self.net.output_size, self._tar_cfg)
        if cfg.is_grid:
            inputs = [
                encode_observation(GridState(c), cfg.physics.side)
                for c in cfg.required_cells
            ]
        else:
            inputs = [pattern for pattern, _ in xor_dataset()]
        return np.concatenate([self.net.propagate(x)[-1][motors] for x in inputs])

    def _run_extinction(self, presentation: int) -> int:
        """Train with primary reward disabled and report how much was unlearnt."""
        cfg = self.config
        hi, lo = cfg.params.mature_hi, cfg.params.mature_lo
        previously_mature = is_mature(self._motor_outputs(), hi, lo)
        started_at = presentation
        self.env.primary_reward_enabled = False
        for _ in range(cfg.extinction_presentations):
            presentation += 1
            self._train_one(presentation)
        self.env.primary_reward_enabled = True
        destabilised = previously_mature & ~is_mature(self._motor_outputs(), hi, lo)
        if cfg.is_grid:
            reached = [
                greedy_rollout(self.net, cfg, c).reached_goal
                for c in cfg.required_cells
            ]
        else:
            thresholds = self.net.output_thresholds
            reached = [
                np.array_equal(
                    thresholded_fire(self.net.propagate(x)[-1], thresholds),
                    thresholded_fire(d, thresholds),
                )
                for x, d in xor_dataset()
            ]
        mature_count = int(previously_mature.sum())
        self.metrics.extinction = {
            "started_at": started_at,
            "presentations": cfg.extinction_presentations,
            "greedy_success": float(np.mean(reached)) if reached else 0.0,
            "previously_mature_outputs": mature_count,
            "destabilised_fraction": (
                float(destabilised.sum()) / mature_count if mature_count else 0.0
            ),
        }
        logger.debug(f"Extinction result: {self.metrics.extinction}")
        return presentation

    def _finalize(self) -> None:
        self.metrics.policy = policy_map(self.net, self.config)
        if self.config.uses_reward_node:
            self.metrics.reward_node_values = reward_node_values(self.net, self.config)


def run_experiment(
    cfg: ExperimentConfig, step_callbacks: Optional[List[StepCallback]] = None
) -> TrialMetrics:
    return ExperimentRunner(cfg, step_callbacks).run()


def seed_configs(cfg: ExperimentConfig, n_seeds: int) -> List[ExperimentConfig]:
    if n_seeds < 1:
        raise ConfigurationError(f"A sweep needs at least one seed, got {n_seeds}.")
    return [
        replace(
            cfg,
            seed=cfg.seed + i,
            trace=None,
            save_weights=None,
            generate_plots=False,
        )
        for i in range(n_seeds)
    ]


def multi_seed(
    cfg: ExperimentConfig, n_seeds: int, workers: int = 1
) -> SweepStatistics:
    """Run seeds seed .. seed + n_seeds - 1 and aggregate them in seed order."""
    configs = seed_configs(cfg, n_seeds)
    logger.info(
        f"Sweeping {cfg.name} over {n_seeds} seeds starting at {cfg.seed} "
        f"with {workers} worker(s)"
    )
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_experiment, configs))
    else:
        results = [run_experiment(c) for c in configs]
    return SweepStatistics([(c.seed, m) for c, m in zip(configs, results)])
