# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

import numpy as np
import pytest
from threshold_rl.exceptions import ConfigurationError, ShapeError
from threshold_rl.network import (
    Network,
    init_network,
    is_mature,
    logistic,
    thresholded_fire,
)


def single_connection_net(weight: float, bias: float = 0.0) -> Network:
    return Network([1, 1], [np.array([[weight]])], [np.array([bias])])


class TestInitNetwork:
    def test_same_seed_same_weights(self):
        a = init_network([2, 3, 1], seed=7)
        b = init_network([2, 3, 1], seed=7)
        for wa, wb in zip(a.weights + a.bias_weights, b.weights + b.bias_weights):
            assert np.array_equal(wa, wb)

    def test_different_seed_different_weights(self):
        a = init_network([2, 3, 1], seed=1)
        b = init_network([2, 3, 1], seed=2)
        assert not np.array_equal(a.weights[0], b.weights[0])

    @pytest.mark.parametrize(
        "layer_sizes, connections, biases",
        [
            ([9, 12, 4], 9 * 12 + 12 * 4, 16),
            ([9, 12, 5], 9 * 12 + 12 * 5, 17),
            ([2, 3, 1], 9, 4),
        ],
    )
    def test_parameter_counts(self, layer_sizes, connections, biases):
        net = init_network(layer_sizes)
        assert net.connection_count() == connections
        assert net.bias_count() == biases
        assert net.bias_weights[-1].shape == (layer_sizes[-1],)

    def test_weights_within_half_width(self):
        net = init_network([9, 12, 5], init_half_width=0.25, seed=3)
        for w in net.weights + net.bias_weights:
            assert np.all(np.abs(w) <= 0.25)

    def test_default_thresholds(self):
        net = init_network([9, 12, 4])
        for t in net.node_thresholds:
            assert np.all(t == 0.5)

    @pytest.mark.parametrize("layer_sizes", [[], [3], [2, 0, 1], [2, -1]])
    def test_invalid_layer_sizes(self, layer_sizes):
        with pytest.raises(ConfigurationError):
            init_network(layer_sizes)

    def test_invalid_half_width(self):
        with pytest.raises(ConfigurationError):
            init_network([2, 1], init_half_width=0.0)


class TestForward:
    def test_zero_weights_give_half(self):
        net = Network(
            [3, 2, 2],
            [np.zeros((2, 3)), np.zeros((2, 2))],
            [np.zeros(2), np.zeros(2)],
        )
        snapshot = net.forward([1.0, 0.0, 1.0])
        for a in snapshot.activations[1:]:
            assert np.all(a == 0.5)

    def test_single_connection(self):
        net = single_connection_net(1.0)
        assert net.forward([1.0]).outputs[0] == pytest.approx(0.7311, abs=1e-4)

    def test_bias_contributes(self):
        net = single_connection_net(0.0, bias=1.0)
        assert net.forward([0.0]).outputs[0] == pytest.approx(logistic(1.0))

    def test_forward_is_repeatable(self):
        net = init_network([9, 12, 4], seed=5)
        x = np.eye(9)[2]
        assert np.array_equal(net.forward(x).outputs, net.forward(x).outputs)

    def test_snapshot_rotation(self):
        net = init_network([2, 3, 1], seed=0)
        first = net.forward([0.0, 1.0])
        before = [a.copy() for a in net.activations_t1]
        net.forward([1.0, 1.0])
        for a, b in zip(net.activations_t, before):
            assert np.array_equal(a, b)
        assert np.array_equal(net.previous_snapshot().outputs, first.outputs)
        assert net.step == 2

    def test_propagate_leaves_snapshots_alone(self):
        net = init_network([2, 3, 1], seed=0)
        net.forward([0.0, 1.0])
        stored = [a.copy() for a in net.activations_t1]
        net.propagate([1.0, 0.0])
        assert net.step == 1
        for a, b in zip(net.activations_t1, stored):
            assert np.array_equal(a, b)

    def test_activations_strictly_inside_unit_interval(self):
        net = init_network([9, 12, 4], init_half_width=2.0, seed=11)
        for cell in range(9):
            for a in net.propagate(np.eye(9)[cell])[1:]:
                assert np.all((a > 0.0) & (a < 1.0))

    def test_input_length_mismatch(self):
        net = init_network([2, 3, 1])
        with pytest.raises(ShapeError):
            net.forward([1.0, 0.0, 1.0])

    def test_monotone_in_incoming_weight(self):
        low = single_connection_net(0.2)
        high = single_connection_net(0.3)
        assert high.propagate([0.8])[-1][0] > low.propagate([0.8])[-1][0]

    def test_bad_weight_shape(self):
        with pytest.raises(ShapeError):
            Network([2, 1], [np.zeros((2, 1))], [np.zeros(1)])


class TestThresholds:
    @pytest.mark.parametrize(
        "activations, expected",
        [
            ([0.7, 0.3], [True, False]),
            ([0.5], [False]),
            ([0.51, 0.49, 0.9, 0.1], [True, False, True, False]),
        ],
    )
    def test_thresholded_fire(self, activations, expected):
        fired = thresholded_fire(activations, np.full(len(activations), 0.5))
        assert fired.tolist() == expected

    def test_scalar_threshold(self):
        assert thresholded_fire([0.6, 0.4], 0.5).tolist() == [True, False]

    def test_length_mismatch(self):
        with pytest.raises(ShapeError):
            thresholded_fire([0.6, 0.4], [0.5])

    @pytest.mark.parametrize(
        "activation, mature",
        [(0.95, True), (0.05, True), (0.9, False), (0.1, False), (0.5, False)],
    )
    def test_is_mature(self, activation, mature):
        assert bool(is_mature([activation])[0]) is mature
