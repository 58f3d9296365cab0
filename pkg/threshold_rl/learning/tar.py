# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

"""Conditioned reinforcement by threshold assignment of rewards.

One output node is not a motor: it learns to predict reward. Once its
activation for a state crosses the reward threshold, reaching that state
rewards the agent just like the goal does, and the node's target for the
state before it is the discounted activation it reached.
"""

from typing import Tuple

import numpy as np
from threshold_rl.environments.base import Environment, Transition
from threshold_rl.learning.backprop import backprop_update
from threshold_rl.learning.params import LearningParams, TarConfig, motor_indices
from threshold_rl.learning.records import (
    DesiredPattern,
    RewardSignal,
    RewardSource,
    StepRecord,
)
from threshold_rl.network import ActivationSnapshot, Network, thresholded_fire


def tar_reward_desired(a_reward_t1: float, cfg: TarConfig) -> float:
    if a_reward_t1 > cfg.node_threshold:
        return cfg.gamma * a_reward_t1
    return 0.0


def conditioned_reward_check(a_reward_t1: float, cfg: TarConfig) -> bool:
    return bool(a_reward_t1 > cfg.reward_threshold_out)


def tar_reward_signal(
    transition: Transition,
    a_reward_t1: float,
    cfg: TarConfig,
    primary_source: RewardSource = RewardSource.PRIMARY_INPUT,
) -> RewardSignal:
    """Primary reward takes precedence over a simultaneous conditioned one."""
    if transition.rewarded:
        return RewardSignal(True, primary_source, 1.0)
    if conditioned_reward_check(a_reward_t1, cfg):
        return RewardSignal.conditioned(a_reward_t1)
    return RewardSignal.punished(a_reward_t1)


def tar_desired(
    output_acts_t,
    reward: RewardSignal,
    cfg: TarConfig,
    params: LearningParams,
    rng: np.random.Generator,
    thresholds,
) -> DesiredPattern:
    acts = np.asarray(output_acts_t, dtype=np.float64)
    motors = motor_indices(acts.size, cfg)
    desired = np.empty(acts.size)
    if reward.rewarded:
        desired[motors] = thresholded_fire(acts[motors], np.asarray(thresholds)[motors])
        desired[cfg.reward_output_index] = tar_reward_desired(reward.reward_value, cfg)
    else:
        desired[motors] = rng.uniform(
            params.punish_low, params.punish_high, len(motors)
        )
        desired[cfg.reward_output_index] = 0.0
    return DesiredPattern(desired)


def act_and_look_ahead(
    net: Network, env: Environment, cfg: TarConfig
) -> Tuple[np.ndarray, ActivationSnapshot, Transition, float]:
    """Steps 1-2 plus the t+1 forward pass that reads the reward node.

    The look-ahead sees the cell the move reached, before any respawn. It
    rotates the network's snapshots, so afterwards `net.activations_t` holds
    the state-t activations the update needs.
    """
    observation = env.observe()
    snapshot_t = net.forward(observation)
    motors = motor_indices(net.output_size, cfg)
    firing = thresholded_fire(
        snapshot_t.outputs[motors], net.output_thresholds[motors]
    )
    transition = env.act(firing)
    look_ahead = net.forward(transition.reached_observation)
    return observation, snapshot_t, transition, float(
        look_ahead.outputs[cfg.reward_output_index]
    )


def tar_step(
    net: Network,
    env: Environment,
    cfg: TarConfig,
    params: LearningParams,
    rng: np.random.Generator,
    presentation: int = 0,
) -> StepRecord:
    observation, snapshot_t, transition, a_reward_t1 = act_and_look_ahead(
        net, env, cfg
    )
    reward = tar_reward_signal(transition, a_reward_t1, cfg)
    desired = tar_desired(
        snapshot_t.outputs, reward, cfg, params, rng, net.output_thresholds
    )
    changes = backprop_update(
        net, net.previous_snapshot(), desired, params, cfg.reward_output_index
    )
    info = dict(transition.info)
    info["reward_node_t1"] = a_reward_t1
    return StepRecord(
        presentation=presentation,
        observation=observation,
        action=transition.action,
        next_observation=transition.observation,
        reward=reward,
        desired=desired,
        output_activations=snapshot_t.outputs,
        reached_goal=transition.reached_goal,
        info=info,
        weight_changes=changes,
    )
