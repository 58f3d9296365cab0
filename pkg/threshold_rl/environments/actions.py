# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from enum import Enum, auto
from typing import Tuple

import numpy as np
from threshold_rl.exceptions import ShapeError


class Action(Enum):
    UP = auto()
    DOWN = auto()
    LEFT = auto()
    RIGHT = auto()
    STAY = auto()

    def to_lowercase(self):
        return self.name.lower()

    @property
    def offset(self) -> Tuple[int, int]:
        """(row, column) displacement."""
        return _OFFSETS[self]


_OFFSETS = {
    Action.UP: (-1, 0),
    Action.DOWN: (1, 0),
    Action.LEFT: (0, -1),
    Action.RIGHT: (0, 1),
    Action.STAY: (0, 0),
}

# Motor node order on the output layer.
MOTOR_ACTIONS = [Action.UP, Action.DOWN, Action.LEFT, Action.RIGHT]


def decode_action(firing) -> Action:
    """The single firing motor node picks the move; any other pattern stays put."""
    firing = np.asarray(firing, dtype=bool)
    if firing.shape != (len(MOTOR_ACTIONS),):
        raise ShapeError(
            f"Expected {len(MOTOR_ACTIONS)} motor firing values, got {firing.size}."
        )
    fired = np.flatnonzero(firing)
    if len(fired) != 1:
        return Action.STAY
    return MOTOR_ACTIONS[int(fired[0])]


def encode_action(action: Action) -> np.ndarray:
    target = np.zeros(len(MOTOR_ACTIONS))
    if action != Action.STAY:
        target[MOTOR_ACTIONS.index(action)] = 1.0
    return target
