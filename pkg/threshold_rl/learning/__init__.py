# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from threshold_rl.learning.backprop import (
    ErrorSignal,
    WeightChanges,
    backprop_update,
    error_signal,
    hidden_delta,
    output_delta,
    output_deltas,
    reward_node_delta,
)
from threshold_rl.learning.params import (
    LearningParams,
    PunishRange,
    TarConfig,
    motor_indices,
)
from threshold_rl.learning.records import (
    DesiredPattern,
    RewardSignal,
    RewardSource,
    StepRecord,
)
from threshold_rl.learning.supervised import (
    SupervisedStop,
    dataset_converged,
    train_supervised,
)
from threshold_rl.learning.tac import (
    TacNodeTarget,
    node_targets,
    tac_desired,
    tac_step,
    tac_update,
    tac_weight_changes,
)
from threshold_rl.learning.tap import primary_reward, tap_desired, tap_step
from threshold_rl.learning.tar import (
    conditioned_reward_check,
    tar_desired,
    tar_reward_desired,
    tar_reward_signal,
    tar_step,
)
