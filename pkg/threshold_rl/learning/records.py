# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from dataclasses import dataclass, field
from enum import Enum, auto
from typing import Any, Dict, List, Optional

import numpy as np


class RewardSource(Enum):
    PRIMARY_INPUT = auto()
    CONDITIONED_OUTPUT = auto()
    FRAMEWORK_RULE = auto()

    def to_lowercase(self):
        return self.name.lower()


@dataclass(frozen=True)
class RewardSignal:
    """Outcome of one presentation as seen by the update rule.

    `source` names where a reward came from; it is None for a punishment.
    Primary and framework rewards carry value 1.0, a conditioned reward
    carries the reward node activation that crossed the threshold.
    """

    rewarded: bool
    source: Optional[RewardSource] = None
    reward_value: float = 0.0

    @classmethod
    def punished(cls, reward_value: float = 0.0) -> "RewardSignal":
        return cls(False, None, reward_value)

    @classmethod
    def primary(cls) -> "RewardSignal":
        return cls(True, RewardSource.PRIMARY_INPUT, 1.0)

    @classmethod
    def framework(cls) -> "RewardSignal":
        return cls(True, RewardSource.FRAMEWORK_RULE, 1.0)

    @classmethod
    def conditioned(cls, reward_value: float) -> "RewardSignal":
        return cls(True, RewardSource.CONDITIONED_OUTPUT, float(reward_value))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rewarded": self.rewarded,
            "source": self.source.to_lowercase() if self.source else None,
            "reward_value": self.reward_value,
        }


@dataclass
class DesiredPattern:
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float64)

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, index):
        return self.values[index]


@dataclass
class StepRecord:
    """Everything one sense-act-reward-update cycle produced."""

    presentation: int
    observation: np.ndarray
    action: str
    next_observation: np.ndarray
    reward: RewardSignal
    desired: DesiredPattern
    output_activations: np.ndarray
    reached_goal: bool = False
    info: Dict[str, Any] = field(default_factory=dict)
    weight_changes: Optional[Any] = None
    node_targets: Optional[List[np.ndarray]] = None

    def to_dict(self) -> Dict[str, Any]:
        record = {
            "presentation": self.presentation,
            "observation": [float(x) for x in self.observation],
            "action": self.action,
            "next_observation": [float(x) for x in self.next_observation],
            "reward": self.reward.to_dict(),
            "desired": [float(x) for x in self.desired.values],
            "outputs": [float(x) for x in self.output_activations],
        }
        record.update(self.info)
        return record
