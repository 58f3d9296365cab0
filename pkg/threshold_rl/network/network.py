# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

import copy
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from threshold_rl.constants import (
    DEFAULT_INIT_HALF_WIDTH,
    DEFAULT_NODE_THRESHOLD,
    MATURE_HI,
    MATURE_LO,
)
from threshold_rl.exceptions import ConfigurationError, ShapeError


@dataclass
class ActivationSnapshot:
    """Activations of every layer for one presentation.

    `activations[0]` is the input pattern itself, so connection `l` always
    reads its presynaptic values from `activations[l]`.
    """

    activations: List[np.ndarray]
    step: int

    @property
    def inputs(self) -> np.ndarray:
        return self.activations[0]

    @property
    def outputs(self) -> np.ndarray:
        return self.activations[-1]

    def copy(self) -> "ActivationSnapshot":
        return ActivationSnapshot([a.copy() for a in self.activations], self.step)


def logistic(netinput: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-netinput))


def is_mature(
    activations, mature_hi: float = MATURE_HI, mature_lo: float = MATURE_LO
) -> np.ndarray:
    """True where an activation is above `mature_hi` or below `mature_lo`."""
    a = np.asarray(activations, dtype=np.float64)
    return (a > mature_hi) | (a < mature_lo)


def thresholded_fire(activations, thresholds) -> np.ndarray:
    a = np.asarray(activations, dtype=np.float64)
    theta = np.asarray(thresholds, dtype=np.float64)
    if theta.ndim == 0:
        theta = np.full(a.shape, float(theta))
    if a.shape != theta.shape:
        raise ShapeError(
            f"Cannot compare {a.shape[0]} activations against "
            f"{theta.shape[0]} thresholds."
        )
    return a > theta


class Network:
    """A fully connected feedforward perceptron with logistic units.

    `weights[l][u, h]` connects node `h` of layer `l` to node `u` of layer
    `l + 1`. Every non-input node has its own bias unit with activation 1.
    Two activation snapshots are kept: `activations_t1` holds the latest
    forward pass and `activations_t` the one before it.
    """

    def __init__(
        self,
        layer_sizes: Sequence[int],
        weights: Sequence[np.ndarray],
        bias_weights: Sequence[np.ndarray],
        node_thresholds: Optional[Sequence[np.ndarray]] = None,
    ) -> None:
        self.layer_sizes = _check_layer_sizes(layer_sizes)
        self.weights = [np.array(w, dtype=np.float64) for w in weights]
        self.bias_weights = [np.array(b, dtype=np.float64) for b in bias_weights]
        if node_thresholds is None:
            node_thresholds = [
                np.full(n, DEFAULT_NODE_THRESHOLD) for n in self.layer_sizes
            ]
        self.node_thresholds = [
            np.array(t, dtype=np.float64) for t in node_thresholds
        ]
        self._check_shapes()
        self.activations_t = self._zero_activations()
        self.activations_t1 = self._zero_activations()
        self._step = 0

    def _zero_activations(self) -> List[np.ndarray]:
        return [np.zeros(n) for n in self.layer_sizes]

    def _check_shapes(self) -> None:
        if len(self.weights) != self.num_layers - 1:
            raise ShapeError(
                f"Expected {self.num_layers - 1} weight matrices, "
                f"got {len(self.weights)}."
            )
        if len(self.bias_weights) != self.num_layers - 1:
            raise ShapeError(
                f"Expected {self.num_layers - 1} bias vectors, "
                f"got {len(self.bias_weights)}."
            )
        if len(self.node_thresholds) != self.num_layers:
            raise ShapeError(
                f"Expected {self.num_layers} threshold vectors, "
                f"got {len(self.node_thresholds)}."
            )
        for l in range(self.num_layers - 1):
            expected = (self.layer_sizes[l + 1], self.layer_sizes[l])
            if self.weights[l].shape != expected:
                raise ShapeError(
                    f"Weight matrix for layer {l + 1} has shape "
                    f"{self.weights[l].shape}, expected {expected}."
                )
            if self.bias_weights[l].shape != (self.layer_sizes[l + 1],):
                raise ShapeError(
                    f"Bias vector for layer {l + 1} has "
                    f"{self.bias_weights[l].size} entries, expected "
                    f"{self.layer_sizes[l + 1]}."
                )
        for l, n in enumerate(self.layer_sizes):
            if self.node_thresholds[l].shape != (n,):
                raise ShapeError(
                    f"Threshold vector for layer {l} has "
                    f"{self.node_thresholds[l].size} entries, expected {n}."
                )

    @property
    def num_layers(self) -> int:
        return len(self.layer_sizes)

    @property
    def input_size(self) -> int:
        return self.layer_sizes[0]

    @property
    def output_size(self) -> int:
        return self.layer_sizes[-1]

    @property
    def output_thresholds(self) -> np.ndarray:
        return self.node_thresholds[-1]

    @property
    def step(self) -> int:
        return self._step

    def connection_count(self) -> int:
        return sum(w.size for w in self.weights)

    def bias_count(self) -> int:
        return sum(b.size for b in self.bias_weights)

    def propagate(self, inputs) -> List[np.ndarray]:
        """Forward pass without touching the stored snapshots."""
        x = np.asarray(inputs, dtype=np.float64)
        if x.shape != (self.input_size,):
            raise ShapeError(
                f"Input has {x.size} values, the input layer has "
                f"{self.input_size} nodes."
            )
        activations = [x.copy()]
        for w, b in zip(self.weights, self.bias_weights):
            activations.append(logistic(w @ activations[-1] + b))
        return activations

    def forward(self, inputs) -> ActivationSnapshot:
        """Forward pass that rotates the snapshots: t <- t+1, t+1 <- new."""
        activations = self.propagate(inputs)
        self.activations_t = self.activations_t1
        self.activations_t1 = activations
        self._step += 1
        return ActivationSnapshot([a.copy() for a in activations], self._step)

    def current_snapshot(self) -> ActivationSnapshot:
        return ActivationSnapshot(
            [a.copy() for a in self.activations_t1], self._step
        )

    def previous_snapshot(self) -> ActivationSnapshot:
        return ActivationSnapshot(
            [a.copy() for a in self.activations_t], self._step - 1
        )

    def check_snapshot(self, snapshot: ActivationSnapshot) -> None:
        if len(snapshot.activations) != self.num_layers:
            raise ShapeError(
                f"Snapshot has {len(snapshot.activations)} layers, the network "
                f"has {self.num_layers}."
            )
        for l, (a, n) in enumerate(zip(snapshot.activations, self.layer_sizes)):
            if a.shape != (n,):
                raise ShapeError(
                    f"Snapshot layer {l} has {a.size} activations, expected {n}."
                )

    def copy(self) -> "Network":
        return copy.deepcopy(self)

    def __repr__(self) -> str:
        sizes = "-".join(str(n) for n in self.layer_sizes)
        return f"Network({sizes}, step={self._step})"


def _check_layer_sizes(layer_sizes: Sequence[int]) -> List[int]:
    sizes = list(layer_sizes)
    if len(sizes) < 2:
        raise ConfigurationError(
            f"A network needs at least an input and an output layer, got {sizes}."
        )
    for n in sizes:
        if int(n) != n or n < 1:
            raise ConfigurationError(f"Layer sizes must be positive integers: {sizes}")
    return [int(n) for n in sizes]


def init_network(
    layer_sizes: Sequence[int],
    init_half_width: float = DEFAULT_INIT_HALF_WIDTH,
    seed: int = 0,
) -> Network:
    """Build a network with weights drawn uniformly from [-w, +w].

    Draw order is layer by layer, connection matrix first and then the bias
    vector, so the same (layer_sizes, seed) always yields the same weights.
    """
    sizes = _check_layer_sizes(layer_sizes)
    if not init_half_width > 0:
        raise ConfigurationError(
            f"init_half_width must be positive, got {init_half_width}."
        )
    rng = np.random.default_rng(seed)
    weights = []
    biases = []
    for n_in, n_out in zip(sizes[:-1], sizes[1:]):
        weights.append(rng.uniform(-init_half_width, init_half_width, (n_out, n_in)))
        biases.append(rng.uniform(-init_half_width, init_half_width, n_out))
    return Network(sizes, weights, biases)


def forward(net: Network, inputs) -> ActivationSnapshot:
    return net.forward(inputs)
