# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

"""Threshold assignment of connections.

Every non-input node gets its own desired activation from the reward and
its own firing state, and only connections whose presynaptic node fired
are changed. Nothing is propagated between layers.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from threshold_rl.environments.base import Environment
from threshold_rl.exceptions import ShapeError
from threshold_rl.learning.backprop import WeightChanges, output_delta, output_deltas
from threshold_rl.learning.params import LearningParams, TarConfig
from threshold_rl.learning.records import (
    DesiredPattern,
    RewardSignal,
    RewardSource,
    StepRecord,
)
from threshold_rl.learning.tap import primary_reward
from threshold_rl.learning.tar import (
    act_and_look_ahead,
    tar_reward_desired,
    tar_reward_signal,
)
from threshold_rl.network import ActivationSnapshot, Network, thresholded_fire


@dataclass
class TacNodeTarget:
    """Desired activations and presynaptic gates for one connection layer.

    `desired[u]` is node u's target on layer l + 1 and `gates[h]` is True
    when node h on layer l fired. A closed gate makes the effective desired
    of that connection equal to the actual activation.
    """

    desired: np.ndarray
    gates: np.ndarray

    def effective_desired(self, actual: np.ndarray) -> np.ndarray:
        """Per-connection desired values, shape (post, pre)."""
        return np.where(
            self.gates[np.newaxis, :],
            self.desired[:, np.newaxis],
            np.asarray(actual)[:, np.newaxis],
        )


def tac_desired(
    a_u_t: float,
    a_h_t: float,
    reward: RewardSignal,
    params: LearningParams,
    rng: np.random.Generator,
    theta_u: float = 0.5,
    theta_h: float = 0.5,
) -> float:
    if not a_h_t > theta_h:
        return float(a_u_t)
    if reward.rewarded:
        return 1.0 if a_u_t > theta_u else 0.0
    return float(rng.uniform(params.punish_low, params.punish_high))


def node_targets(
    net: Network,
    snapshot: ActivationSnapshot,
    reward: RewardSignal,
    params: LearningParams,
    rng: np.random.Generator,
    tar_cfg: Optional[TarConfig] = None,
) -> List[TacNodeTarget]:
    """Targets for every connection layer, one punishment draw per node.

    Draws go layer by layer from the first hidden layer to the output.
    """
    targets = []
    for l in range(net.num_layers - 1):
        post = snapshot.activations[l + 1]
        if reward.rewarded:
            desired = thresholded_fire(post, net.node_thresholds[l + 1]).astype(
                np.float64
            )
        else:
            desired = rng.uniform(params.punish_low, params.punish_high, post.size)
        gates = thresholded_fire(snapshot.activations[l], net.node_thresholds[l])
        targets.append(TacNodeTarget(desired, gates))
    if tar_cfg is not None:
        targets[-1].desired[tar_cfg.reward_output_index] = (
            tar_reward_desired(reward.reward_value, tar_cfg)
            if reward.rewarded
            else 0.0
        )
    return targets


def tac_weight_changes(
    net: Network,
    snapshot: ActivationSnapshot,
    targets: List[TacNodeTarget],
    params: LearningParams,
    reward_index: Optional[int] = None,
) -> WeightChanges:
    """Local changes for every layer, computed without touching the network.

    Bias units always fire, so bias weights take the ungated node delta.
    The reward node at `reward_index` learns with `reward_node_delta`.
    """
    net.check_snapshot(snapshot)
    if len(targets) != net.num_layers - 1:
        raise ShapeError(
            f"Expected targets for {net.num_layers - 1} layers, got {len(targets)}."
        )
    weights = []
    biases = []
    deltas = []
    for l, target in enumerate(targets):
        pre = snapshot.activations[l]
        post = snapshot.activations[l + 1]
        if target.desired.shape != post.shape or target.gates.shape != pre.shape:
            raise ShapeError(f"Targets for layer {l + 1} do not match the network.")
        if l == len(targets) - 1:
            delta = output_deltas(target.desired, post, reward_index)
        else:
            delta = output_delta(target.desired, post)
        weights.append(params.lrate * np.outer(delta, pre * target.gates))
        biases.append(params.lrate * delta)
        deltas.append(delta)
    return WeightChanges(weights, biases, deltas)


def tac_update(
    net: Network,
    snapshot_t: ActivationSnapshot,
    reward: RewardSignal,
    tar_cfg: Optional[TarConfig],
    params: LearningParams,
    rng: np.random.Generator,
) -> Tuple[WeightChanges, List[TacNodeTarget]]:
    """Compute every local change from the frozen snapshot, then apply them."""
    targets = node_targets(net, snapshot_t, reward, params, rng, tar_cfg)
    reward_index = tar_cfg.reward_output_index if tar_cfg is not None else None
    changes = tac_weight_changes(net, snapshot_t, targets, params, reward_index)
    for l in range(net.num_layers - 1):
        net.weights[l] += changes.weights[l]
        net.bias_weights[l] += changes.biases[l]
    return changes, targets


def tac_step(
    net: Network,
    env: Environment,
    tar_cfg: Optional[TarConfig],
    params: LearningParams,
    rng: np.random.Generator,
    presentation: int = 0,
    reward_source: RewardSource = RewardSource.PRIMARY_INPUT,
) -> StepRecord:
    """One TAC cycle. Without a reward node the primary reward alone is used."""
    if tar_cfg is not None:
        observation, snapshot_t, transition, a_reward_t1 = act_and_look_ahead(
            net, env, tar_cfg
        )
        reward = tar_reward_signal(transition, a_reward_t1, tar_cfg)
        info = dict(transition.info)
        info["reward_node_t1"] = a_reward_t1
    else:
        observation = env.observe()
        snapshot_t = net.forward(observation)
        transition = env.act(
            thresholded_fire(snapshot_t.outputs, net.output_thresholds)
        )
        reward = primary_reward(transition, reward_source)
        info = dict(transition.info)
    changes, targets = tac_update(net, snapshot_t, reward, tar_cfg, params, rng)
    return StepRecord(
        presentation=presentation,
        observation=observation,
        action=transition.action,
        next_observation=transition.observation,
        reward=reward,
        desired=DesiredPattern(targets[-1].desired),
        output_activations=snapshot_t.outputs,
        reached_goal=transition.reached_goal,
        info=info,
        weight_changes=changes,
        node_targets=[t.desired for t in targets],
    )
