# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

import numpy as np
import pytest
from threshold_rl.environments import (
    XOR_TRUTH_TABLE,
    XorEnvironment,
    XorGuidedTask,
    xor_dataset,
    xor_guided_step,
)
from threshold_rl.exceptions import ShapeError


class TestXorGuidedTask:
    def test_inputs_cycle_regardless_of_output(self):
        task = XorGuidedTask()
        seen = [task.current_input().tolist()]
        for output in [True, False, True, False]:
            _, next_input = xor_guided_step(task, output)
            seen.append(next_input.tolist())
        assert seen == [[0, 0], [0, 1], [1, 0], [1, 1], [0, 0]]
        assert task.index == 0

    @pytest.mark.parametrize(
        "index, output, rewarded",
        [
            (0, False, True),
            (0, True, False),
            (1, True, True),
            (2, False, False),
            (3, False, True),
            (3, True, False),
        ],
    )
    def test_reward(self, index, output, rewarded):
        assert xor_guided_step(XorGuidedTask(index), output)[0] is rewarded

    def test_dataset(self):
        dataset = xor_dataset()
        assert [(x.tolist(), d.tolist()) for x, d in dataset] == [
            ([0.0, 0.0], [0.0]),
            ([0.0, 1.0], [1.0]),
            ([1.0, 0.0], [1.0]),
            ([1.0, 1.0], [0.0]),
        ]
        assert len(XOR_TRUTH_TABLE) == 4


class TestXorEnvironment:
    def test_act(self):
        env = XorEnvironment(XorGuidedTask(1))
        transition = env.act(np.array([True]))
        assert transition.rewarded
        assert transition.action == "fire"
        assert transition.info["pattern"] == [0, 1]
        assert transition.observation.tolist() == [1.0, 0.0]

    def test_rest(self):
        transition = XorEnvironment().act(np.array([False]))
        assert transition.rewarded
        assert transition.action == "rest"

    def test_primary_reward_disabled(self):
        env = XorEnvironment()
        env.primary_reward_enabled = False
        assert not env.act(np.array([False])).rewarded

    def test_wrong_width(self):
        with pytest.raises(ShapeError):
            XorEnvironment().act(np.array([True, False]))
