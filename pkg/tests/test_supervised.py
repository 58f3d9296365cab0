# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

import numpy as np
import pytest
from threshold_rl.environments import xor_dataset
from threshold_rl.exceptions import ConfigurationError, ShapeError
from threshold_rl.learning import (
    LearningParams,
    SupervisedStop,
    dataset_converged,
    train_supervised,
)
from threshold_rl.network import Network, init_network


def confident_network() -> Network:
    return Network([1, 1], [np.array([[10.0]])], [np.array([0.0])])


class TestTrainSupervised:
    def test_cap_returns_unconverged(self):
        net = init_network([2, 3, 1], seed=0)
        metrics = train_supervised(
            net, xor_dataset(), LearningParams(), SupervisedStop(10)
        )
        assert not metrics.converged
        assert metrics.presentations == 10
        assert net.step == 10

    def test_already_converged_reports_zero(self):
        net = confident_network()
        dataset = [(np.array([1.0]), np.array([1.0]))]
        metrics = train_supervised(net, dataset, LearningParams(), SupervisedStop(5))
        assert metrics.converged
        assert metrics.started_converged
        assert metrics.presentations_to_convergence == 0
        assert net.step == 0

    def test_learns_single_pattern(self):
        net = Network([1, 1], [np.array([[0.0]])], [np.array([0.0])])
        dataset = [(np.array([1.0]), np.array([1.0]))]
        metrics = train_supervised(
            net, dataset, LearningParams(), SupervisedStop(10000)
        )
        assert metrics.converged
        assert not metrics.started_converged
        assert metrics.presentations == metrics.presentations_to_convergence
        assert net.propagate([1.0])[-1][0] > 0.9

    def test_custom_criterion(self):
        net = init_network([2, 3, 1], seed=0)
        calls = []

        def criterion(n):
            calls.append(n.step)
            return n.step >= 3

        metrics = train_supervised(
            net, xor_dataset(), LearningParams(), SupervisedStop(10, criterion)
        )
        assert metrics.presentations_to_convergence == 3
        assert calls == [0, 1, 2, 3]

    def test_empty_dataset(self):
        with pytest.raises(ConfigurationError):
            train_supervised(
                init_network([2, 1]), [], LearningParams(), SupervisedStop(1)
            )

    def test_pattern_shape_mismatch(self):
        dataset = [(np.array([1.0, 0.0, 1.0]), np.array([1.0]))]
        with pytest.raises(ShapeError):
            train_supervised(
                init_network([2, 1]), dataset, LearningParams(), SupervisedStop(1)
            )

    def test_negative_cap(self):
        with pytest.raises(ConfigurationError):
            SupervisedStop(-1)


class TestDatasetConverged:
    def test_immature_output_is_not_converged(self):
        net = Network([1, 1], [np.array([[1.0]])], [np.array([0.0])])
        dataset = [(np.array([1.0]), np.array([1.0]))]
        assert not dataset_converged(net, dataset, LearningParams())

    def test_wrong_side_is_not_converged(self):
        dataset = [(np.array([1.0]), np.array([0.0]))]
        assert not dataset_converged(confident_network(), dataset, LearningParams())

    def test_unchecked_nodes_skip_maturity(self):
        net = Network(
            [1, 2], [np.array([[10.0], [1.0]])], [np.array([0.0, 0.0])]
        )
        dataset = [(np.array([1.0]), np.array([1.0, 1.0]))]
        assert not dataset_converged(net, dataset, LearningParams())
        assert dataset_converged(net, dataset, LearningParams(), mature_nodes=[0])
