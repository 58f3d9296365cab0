# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from threshold_rl.environments.actions import (
    MOTOR_ACTIONS,
    Action,
    decode_action,
    encode_action,
)
from threshold_rl.environments.base import Environment, Transition
from threshold_rl.environments.grid import (
    GridPhysics,
    GridState,
    GridWorld,
    SpawnKind,
    SpawnRule,
    encode_observation,
    grid_dataset,
    grid_step,
    maze_physics,
    physics_from_document,
    tracking_physics,
)
from threshold_rl.environments.xor import (
    XOR_TRUTH_TABLE,
    XorEnvironment,
    XorGuidedTask,
    xor_dataset,
    xor_guided_step,
)
