# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

import numpy as np
import pytest
from threshold_rl.environments.base import Transition
from threshold_rl.learning import (
    LearningParams,
    PunishRange,
    RewardSignal,
    RewardSource,
    backprop_update,
    primary_reward,
    tap_desired,
    tap_step,
)
from threshold_rl.network import init_network


class TestTapDesired:
    @pytest.mark.parametrize(
        "outputs, expected",
        [
            ([0.7, 0.3, 0.6, 0.2], [1.0, 0.0, 1.0, 0.0]),
            ([0.5], [0.0]),
            ([0.51, 0.49], [1.0, 0.0]),
        ],
    )
    def test_rewarded_targets_follow_firing(self, outputs, expected, rng):
        desired = tap_desired(outputs, RewardSignal.primary(), LearningParams(), rng)
        assert desired.values.tolist() == expected

    @pytest.mark.parametrize(
        "punish_range, low, high",
        [(PunishRange.NARROW, 0.45, 0.55), (PunishRange.WIDE, 0.0, 1.0)],
    )
    def test_punished_targets_in_range(self, punish_range, low, high, rng):
        params = LearningParams.with_punish_range(punish_range)
        for _ in range(50):
            desired = tap_desired(
                [0.9, 0.1, 0.9, 0.1], RewardSignal.punished(), params, rng
            )
            assert np.all((desired.values >= low) & (desired.values <= high))

    def test_punished_draw_is_seeded(self):
        a = tap_desired(
            [0.2] * 4,
            RewardSignal.punished(),
            LearningParams(),
            np.random.default_rng(3),
        )
        b = tap_desired(
            [0.2] * 4,
            RewardSignal.punished(),
            LearningParams(),
            np.random.default_rng(3),
        )
        assert np.array_equal(a.values, b.values)


class TestPrimaryReward:
    def test_reward_carries_source(self):
        transition = Transition(np.zeros(2), True, "fire")
        reward = primary_reward(transition, RewardSource.FRAMEWORK_RULE)
        assert reward.rewarded
        assert reward.source == RewardSource.FRAMEWORK_RULE
        assert reward.reward_value == 1.0

    def test_no_reward_is_punishment(self):
        reward = primary_reward(
            Transition(np.zeros(2), False, "rest"), RewardSource.PRIMARY_INPUT
        )
        assert not reward.rewarded
        assert reward.source is None


class TestTapStep:
    def test_rewarded_step_reinforces_firing(self, scripted_env, rng):
        net = init_network([2, 3], seed=5)
        env = scripted_env([[1.0, 1.0]], [True], motor_size=3)
        before = net.propagate([1.0, 1.0])[-1]
        record = tap_step(net, env, LearningParams(), rng, presentation=1)
        after = net.propagate([1.0, 1.0])[-1]

        fired = before > 0.5
        assert record.reward.rewarded
        assert record.desired.values.tolist() == fired.astype(float).tolist()
        assert np.array_equal(env.actions[0], fired)
        assert np.all(after[fired] > before[fired])
        assert np.all(after[~fired] < before[~fired])

    def test_update_uses_state_t_snapshot(self, scripted_env):
        net = init_network([2, 4, 2], seed=8)
        reference = net.copy()
        env = scripted_env([[1.0, 0.0], [0.0, 1.0]], [False], motor_size=2)

        record = tap_step(net, env, LearningParams(), np.random.default_rng(0))

        snapshot = reference.forward([1.0, 0.0])
        assert np.array_equal(record.output_activations, snapshot.outputs)
        backprop_update(reference, snapshot, record.desired, LearningParams())
        for a, b in zip(net.weights, reference.weights):
            assert np.array_equal(a, b)
        assert record.next_observation.tolist() == [0.0, 1.0]
        assert not record.reward.rewarded

    def test_repeated_punishment_weakens_outputs(self, scripted_env):
        net = init_network([2, 4, 3], init_half_width=1.0, seed=2)
        observations = [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
        env = scripted_env(observations, [False], motor_size=3)
        rng = np.random.default_rng(2)
        for _ in range(3000):
            tap_step(net, env, LearningParams(), rng)
        for observation in observations:
            outputs = net.propagate(observation)[-1]
            assert np.all((outputs >= 0.4) & (outputs <= 0.6))
