# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from threshold_rl.environments.base import Transition
from threshold_rl.exceptions import ShapeError

# (A, B) -> A XOR B, in presentation order.
XOR_TRUTH_TABLE = [
    ((0, 0), 0),
    ((0, 1), 1),
    ((1, 0), 1),
    ((1, 1), 0),
]


def xor_dataset() -> List[Tuple[np.ndarray, np.ndarray]]:
    return [
        (np.array(pattern, dtype=np.float64), np.array([float(truth)]))
        for pattern, truth in XOR_TRUTH_TABLE
    ]


@dataclass
class XorGuidedTask:
    """Guided XOR: inputs cycle in a fixed order whatever the agent does."""

    index: int = 0

    @property
    def pattern(self) -> Tuple[int, int]:
        return XOR_TRUTH_TABLE[self.index][0]

    @property
    def truth(self) -> int:
        return XOR_TRUTH_TABLE[self.index][1]

    def current_input(self) -> np.ndarray:
        return np.array(self.pattern, dtype=np.float64)


def xor_guided_step(
    task: XorGuidedTask, thresholded_output: bool
) -> Tuple[bool, np.ndarray]:
    rewarded = bool(thresholded_output) == bool(task.truth)
    task.index = (task.index + 1) % len(XOR_TRUTH_TABLE)
    return rewarded, task.current_input()


class XorEnvironment:
    """Adapter exposing a guided XOR task through the agent-facing protocol."""

    input_size = 2
    motor_size = 1

    def __init__(self, task: Optional[XorGuidedTask] = None) -> None:
        self.task = task if task is not None else XorGuidedTask()
        self.primary_reward_enabled = True

    def observe(self) -> np.ndarray:
        return self.task.current_input()

    def act(self, firing: np.ndarray) -> Transition:
        firing = np.asarray(firing, dtype=bool)
        if firing.shape != (1,):
            raise ShapeError(f"XOR expects a single output, got {firing.size}.")
        pattern = self.task.pattern
        rewarded, observation = xor_guided_step(self.task, bool(firing[0]))
        return Transition(
            observation=observation,
            rewarded=rewarded and self.primary_reward_enabled,
            action="fire" if firing[0] else "rest",
            info={"pattern": list(pattern)},
        )
