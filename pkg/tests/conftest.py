# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

import numpy as np
import pytest
from threshold_rl.environments import (
    MOTOR_ACTIONS,
    Action,
    Transition,
    tracking_physics,
)
from threshold_rl.network import Network


class ScriptedEnvironment:
    """Environment that cycles through fixed observations and rewards."""

    def __init__(self, observations, rewards, motor_size):
        self.input_size = len(observations[0])
        self.motor_size = motor_size
        self._observations = [np.asarray(o, dtype=np.float64) for o in observations]
        self._rewards = list(rewards)
        self._index = 0
        self.actions = []

    def observe(self):
        return self._observations[self._index % len(self._observations)].copy()

    def act(self, firing):
        self.actions.append(np.asarray(firing, dtype=bool).copy())
        rewarded = self._rewards[self._index % len(self._rewards)]
        self._index += 1
        return Transition(
            observation=self.observe(),
            rewarded=rewarded,
            action="scripted",
            reached_goal=rewarded,
        )


@pytest.fixture
def scripted_env():
    return ScriptedEnvironment


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def solved_grid_network(physics, strength: float = 6.0) -> Network:
    """Single-layer network whose motor outputs encode the shortest-path move."""
    weights = np.full((len(MOTOR_ACTIONS), physics.num_cells), -strength)
    for cell in range(physics.num_cells):
        action = physics.optimal_action(cell)
        if action != Action.STAY:
            weights[MOTOR_ACTIONS.index(action), cell] = strength
    return Network(
        [physics.num_cells, len(MOTOR_ACTIONS)],
        [weights],
        [np.zeros(len(MOTOR_ACTIONS))],
    )


@pytest.fixture
def solved_tracking_network():
    return solved_grid_network(tracking_physics())


@pytest.fixture
def solved_network():
    return solved_grid_network
