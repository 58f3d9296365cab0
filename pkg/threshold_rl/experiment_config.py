# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from dataclasses import dataclass
from enum import Enum, auto
from pathlib import Path
from typing import Any, Dict, List, Optional

from threshold_rl.constants import (
    CAP_FACTOR,
    DEFAULT_ARTIFACT_DIR,
    DEFAULT_GRID_PROBE_INTERVAL,
    DEFAULT_INIT_HALF_WIDTH,
    DEFAULT_SEED,
    DEFAULT_XOR_PROBE_INTERVAL,
    FALLBACK_MAX_PRESENTATIONS,
    MIN_MAX_PRESENTATIONS,
    REFERENCE_PRESENTATIONS,
    XOR_INIT_HALF_WIDTH,
)
from threshold_rl.environments import (
    GridPhysics,
    MOTOR_ACTIONS,
    maze_physics,
    tracking_physics,
)
from threshold_rl.exceptions import ConfigurationError
from threshold_rl.learning.params import LearningParams, PunishRange, TarConfig

DEFAULT_HIDDEN_SIZE = {"tracking": 12, "maze": 12, "xor": 3}
# Start cells from which the tracking agent can reach the goal in one move.
TRACKING_EDGE_CELLS = [1, 3, 5, 7]
DEFAULT_EXTINCTION_PRESENTATIONS = 50000


class Task(Enum):
    TRACKING = auto()
    MAZE = auto()
    XOR = auto()

    def to_lowercase(self):
        return self.name.lower()


class Algorithm(Enum):
    SUPERVISED = auto()
    TAP = auto()
    TAR = auto()
    TAC = auto()

    def to_lowercase(self):
        return self.name.lower()


class TraceLevel(Enum):
    PRESENTATION = auto()
    REWARD = auto()

    def to_lowercase(self):
        return self.name.lower()


@dataclass
class ExperimentConfig:
    """One training run, with every preset value filled in.

    Fields left as None are derived from the task/algorithm preset when the
    object is built; everything is validated before any stepping happens.
    """

    task: Task
    algorithm: Algorithm
    seed: int = DEFAULT_SEED
    max_presentations: Optional[int] = None
    params: Optional[LearningParams] = None
    layer_sizes: Optional[List[int]] = None
    hidden_size: Optional[int] = None
    reward_output_index: Optional[int] = None
    physics: Optional[GridPhysics] = None
    required_cells: Optional[List[int]] = None
    init_half_width: Optional[float] = None
    probe_interval: Optional[int] = None
    extinction_after: Optional[int] = None
    extinction_presentations: int = DEFAULT_EXTINCTION_PRESENTATIONS
    load_weights: Optional[Path] = None
    save_weights: Optional[Path] = None
    trace: Optional[TraceLevel] = None
    artifact_dir: Path = Path(DEFAULT_ARTIFACT_DIR)
    name: Optional[str] = None
    generate_plots: bool = False

    def __post_init__(self) -> None:
        if self.seed < 0:
            raise ConfigurationError(f"seed must be >= 0, got {self.seed}.")
        if self.params is None:
            self.params = LearningParams.with_punish_range(
                default_punish_range(self.task, self.algorithm)
            )
        if self.init_half_width is None:
            self.init_half_width = DEFAULT_INIT_HALF_WIDTH
            if self.task == Task.XOR:
                self.init_half_width = XOR_INIT_HALF_WIDTH
        if self.is_grid and self.physics is None:
            self.physics = (
                tracking_physics() if self.task == Task.TRACKING else maze_physics()
            )
        if self.task == Task.XOR and self.physics is not None:
            raise ConfigurationError(
                "An environment document only applies to grid tasks."
            )
        if self.reward_output_index is None and self.uses_reward_node:
            self.reward_output_index = self.motor_size
        if self.layer_sizes is None:
            hidden = self.hidden_size or DEFAULT_HIDDEN_SIZE[self.task.to_lowercase()]
            self.layer_sizes = [self.input_size, hidden, self.output_size]
        if self.max_presentations is None:
            self.max_presentations = default_cap(self.task, self.algorithm)
        if self.required_cells is None:
            self.required_cells = default_required_cells(self)
        if self.probe_interval is None:
            self.probe_interval = DEFAULT_XOR_PROBE_INTERVAL
            if self.is_grid:
                self.probe_interval = DEFAULT_GRID_PROBE_INTERVAL
        if self.name is None:
            self.name = f"{self.task.to_lowercase()}_{self.algorithm.to_lowercase()}"
        self._validate()

    @property
    def is_grid(self) -> bool:
        return self.task != Task.XOR

    @property
    def uses_reward_node(self) -> bool:
        return self.is_grid and self.algorithm in (Algorithm.TAR, Algorithm.TAC)

    @property
    def input_size(self) -> int:
        return self.physics.num_cells if self.physics is not None else 2

    @property
    def motor_size(self) -> int:
        return len(MOTOR_ACTIONS) if self.is_grid else 1

    @property
    def output_size(self) -> int:
        return self.motor_size + (1 if self.uses_reward_node else 0)

    def tar_config(self) -> Optional[TarConfig]:
        if self.reward_output_index is None:
            return None
        return TarConfig.from_params(self.reward_output_index, self.params)

    def _validate(self) -> None:
        if len(self.layer_sizes) < 2:
            raise ConfigurationError(
                f"layer_sizes {self.layer_sizes} needs two layers."
            )
        if self.layer_sizes[0] != self.input_size:
            raise ConfigurationError(
                f"Task {self.task.to_lowercase()} needs {self.input_size} input "
                f"nodes, layer_sizes starts with {self.layer_sizes[0]}."
            )
        if self.layer_sizes[-1] != self.output_size:
            raise ConfigurationError(
                f"{self.task.to_lowercase()} with {self.algorithm.to_lowercase()} "
                f"needs {self.output_size} output nodes, layer_sizes ends with "
                f"{self.layer_sizes[-1]}."
            )
        if self.reward_output_index is not None:
            if not self.uses_reward_node:
                raise ConfigurationError(
                    "A reward node is only used by tar and tac on grid tasks."
                )
            self.tar_config().check_output_size(self.output_size, self.motor_size)
        if self.max_presentations < 0:
            raise ConfigurationError(
                f"max_presentations must be >= 0, got {self.max_presentations}."
            )
        if self.probe_interval < 1:
            raise ConfigurationError(
                f"probe_interval must be >= 1, got {self.probe_interval}."
            )
        if self.is_grid:
            for cell in self.required_cells:
                if cell == self.physics.goal_cell or cell not in range(
                    self.physics.num_cells
                ):
                    raise ConfigurationError(
                        f"Required start cell {cell} is not a valid non-goal cell."
                    )
            unreachable = set(self.required_cells) - set(
                self.physics.distances_to_goal()
            )
            if unreachable:
                raise ConfigurationError(
                    f"Required start cells {sorted(unreachable)} cannot reach the goal."
                )
        if self.extinction_after is not None:
            if self.algorithm == Algorithm.SUPERVISED:
                raise ConfigurationError(
                    "Extinction needs a reinforcement scheme, not supervised training."
                )
            if self.extinction_after < 0 or self.extinction_presentations < 0:
                raise ConfigurationError("Extinction counts must be >= 0.")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "task": self.task.to_lowercase(),
            "algorithm": self.algorithm.to_lowercase(),
            "seed": self.seed,
            "max_presentations": self.max_presentations,
            "layer_sizes": list(self.layer_sizes),
            "reward_output_index": self.reward_output_index,
            "lrate": self.params.lrate,
            "gamma": self.params.gamma,
            "reward_threshold_out": self.params.reward_threshold_out,
            "punish_range": [self.params.punish_low, self.params.punish_high],
            "init_half_width": self.init_half_width,
            "probe_interval": self.probe_interval,
            "required_cells": list(self.required_cells),
            "environment": self.physics.to_dict() if self.physics else None,
            "extinction_after": self.extinction_after,
            "extinction_presentations": (
                self.extinction_presentations
                if self.extinction_after is not None
                else None
            ),
            "load_weights": str(self.load_weights) if self.load_weights else None,
        }


def default_cap(task: Task, algorithm: Algorithm) -> int:
    key = (task.to_lowercase(), algorithm.to_lowercase())
    if key not in REFERENCE_PRESENTATIONS:
        return FALLBACK_MAX_PRESENTATIONS
    return max(
        CAP_FACTOR * REFERENCE_PRESENTATIONS[key], MIN_MAX_PRESENTATIONS.get(key, 0)
    )


def default_punish_range(task: Task, algorithm: Algorithm) -> PunishRange:
    """Wide for TAC on XOR, narrow everywhere else."""
    if task == Task.XOR and algorithm == Algorithm.TAC:
        return PunishRange.WIDE
    return PunishRange.NARROW


def default_required_cells(config: ExperimentConfig) -> List[int]:
    """Start cells a run must solve before it counts as converged.

    Tracking under TAP only has to solve the edge cells; corner cells need a
    two-move chain that primary reward alone cannot teach.
    """
    if not config.is_grid:
        return []
    if config.task == Task.TRACKING and config.algorithm == Algorithm.TAP:
        cells = [c for c in TRACKING_EDGE_CELLS if c in config.physics.spawn.cells]
        if cells:
            return cells
    return list(config.physics.spawn.cells)
