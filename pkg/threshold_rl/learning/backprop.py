# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np
from threshold_rl.exceptions import ShapeError
from threshold_rl.learning.params import LearningParams
from threshold_rl.learning.records import DesiredPattern
from threshold_rl.network import ActivationSnapshot, Network


@dataclass
class ErrorSignal:
    """Deltas per non-input layer; `deltas[-1]` belongs to the output layer."""

    deltas: List[np.ndarray]


@dataclass
class WeightChanges:
    """The changes an update applied, aligned with `Network.weights`."""

    weights: List[np.ndarray]
    biases: List[np.ndarray]
    deltas: List[np.ndarray]

    def is_zero(self) -> bool:
        return all(not w.any() for w in self.weights) and all(
            not b.any() for b in self.biases
        )

    def max_abs(self) -> float:
        return max(
            [float(np.max(np.abs(w))) for w in self.weights]
            + [float(np.max(np.abs(b))) for b in self.biases]
        )


def output_delta(desired, actual):
    return (desired - actual) * actual * (1.0 - actual)


def reward_node_delta(desired, actual):
    """Error term of the conditioned reward node. It has no logistic slope."""
    return desired - actual


def hidden_delta(a_h, downstream_deltas, outgoing_weights) -> float:
    deltas = np.asarray(downstream_deltas, dtype=np.float64)
    weights = np.asarray(outgoing_weights, dtype=np.float64)
    if deltas.shape != weights.shape:
        raise ShapeError(
            f"{deltas.size} downstream deltas but {weights.size} outgoing weights."
        )
    return float(a_h * (1.0 - a_h) * np.dot(deltas, weights))


def output_deltas(
    desired: np.ndarray, outputs: np.ndarray, reward_index: Optional[int] = None
) -> np.ndarray:
    deltas = output_delta(desired, outputs)
    if reward_index is not None:
        deltas[reward_index] = reward_node_delta(
            desired[reward_index], outputs[reward_index]
        )
    return deltas


def error_signal(
    net: Network,
    snapshot: ActivationSnapshot,
    desired: DesiredPattern,
    reward_index: Optional[int] = None,
) -> ErrorSignal:
    """Output deltas from the desired pattern, hidden deltas propagated back."""
    deltas = [output_deltas(desired.values, snapshot.outputs, reward_index)]
    for l in range(net.num_layers - 2, 0, -1):
        a = snapshot.activations[l]
        downstream = deltas[0]
        deltas.insert(
            0,
            np.array(
                [
                    hidden_delta(a[u], downstream, net.weights[l][:, u])
                    for u in range(a.size)
                ]
            ),
        )
    return ErrorSignal(deltas)


def backprop_update(
    net: Network,
    snapshot: ActivationSnapshot,
    desired: Union[DesiredPattern, np.ndarray],
    params: LearningParams,
    reward_index: Optional[int] = None,
) -> WeightChanges:
    """Apply one online backpropagation update computed on `snapshot`.

    All deltas are taken from the pre-update weights before anything moves.
    Bias weights see a presynaptic activation of 1. `reward_index` names an
    output that learns with `reward_node_delta`.
    """
    if not isinstance(desired, DesiredPattern):
        desired = DesiredPattern(desired)
    net.check_snapshot(snapshot)
    if len(desired) != net.output_size:
        raise ShapeError(
            f"Desired pattern has {len(desired)} values, the output layer has "
            f"{net.output_size} nodes."
        )
    signal = error_signal(net, snapshot, desired, reward_index)
    weight_changes = []
    bias_changes = []
    for l, delta in enumerate(signal.deltas):
        weight_changes.append(params.lrate * np.outer(delta, snapshot.activations[l]))
        bias_changes.append(params.lrate * delta)
    for l in range(net.num_layers - 1):
        net.weights[l] += weight_changes[l]
        net.bias_weights[l] += bias_changes[l]
    return WeightChanges(weight_changes, bias_changes, signal.deltas)
