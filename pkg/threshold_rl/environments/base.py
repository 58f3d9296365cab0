# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Protocol

import numpy as np


@dataclass
class Transition:
    """What the world returns after the agent acted.

    `rewarded` is the primary reward, judged on the state reached before any
    respawn; `reached_observation` encodes that state and `observation` is
    what the agent will see next.
    """

    observation: np.ndarray
    rewarded: bool
    action: str
    reached_goal: bool = False
    info: Dict[str, Any] = field(default_factory=dict)
    reached_observation: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if self.reached_observation is None:
            self.reached_observation = self.observation


class Environment(Protocol):
    input_size: int
    motor_size: int

    def observe(self) -> np.ndarray:
        pass

    def act(self, firing: np.ndarray) -> Transition:
        pass
