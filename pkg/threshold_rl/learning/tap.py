# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

"""Primary reinforcement by threshold assignment of patterns.

The reward signal turns the network's own output into a desired pattern:
after a reward every firing output is pushed to 1 and every silent one to
0; after a punishment every output gets a fresh random target near the
threshold, which unsettles the behaviour so a new one can emerge.
"""

import numpy as np
from threshold_rl.constants import DEFAULT_NODE_THRESHOLD
from threshold_rl.environments.base import Environment, Transition
from threshold_rl.learning.backprop import backprop_update
from threshold_rl.learning.params import LearningParams
from threshold_rl.learning.records import (
    DesiredPattern,
    RewardSignal,
    RewardSource,
    StepRecord,
)
from threshold_rl.network import Network, thresholded_fire


def tap_desired(
    output_acts_t,
    reward: RewardSignal,
    params: LearningParams,
    rng: np.random.Generator,
    thresholds=DEFAULT_NODE_THRESHOLD,
) -> DesiredPattern:
    acts = np.asarray(output_acts_t, dtype=np.float64)
    if reward.rewarded:
        return DesiredPattern(thresholded_fire(acts, thresholds).astype(np.float64))
    return DesiredPattern(rng.uniform(params.punish_low, params.punish_high, acts.size))


def primary_reward(transition: Transition, source: RewardSource) -> RewardSignal:
    if not transition.rewarded:
        return RewardSignal.punished()
    return RewardSignal(True, source, 1.0)


def tap_step(
    net: Network,
    env: Environment,
    params: LearningParams,
    rng: np.random.Generator,
    presentation: int = 0,
    reward_source: RewardSource = RewardSource.PRIMARY_INPUT,
) -> StepRecord:
    observation = env.observe()
    snapshot_t = net.forward(observation)
    outputs_t = snapshot_t.outputs
    firing = thresholded_fire(outputs_t, net.output_thresholds)
    transition = env.act(firing)
    reward = primary_reward(transition, reward_source)
    desired = tap_desired(outputs_t, reward, params, rng, net.output_thresholds)
    changes = backprop_update(net, snapshot_t, desired, params)
    return StepRecord(
        presentation=presentation,
        observation=observation,
        action=transition.action,
        next_observation=transition.observation,
        reward=reward,
        desired=desired,
        output_activations=outputs_t,
        reached_goal=transition.reached_goal,
        info=transition.info,
        weight_changes=changes,
    )
