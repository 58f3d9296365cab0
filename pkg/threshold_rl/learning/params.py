# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from dataclasses import dataclass
from enum import Enum, auto
from typing import Optional, Tuple

from threshold_rl.constants import (
    DEFAULT_GAMMA,
    DEFAULT_LRATE,
    DEFAULT_NODE_THRESHOLD,
    DEFAULT_REWARD_THRESHOLD,
    MATURE_HI,
    MATURE_LO,
    NARROW_PUNISH_RANGE,
    WIDE_PUNISH_RANGE,
)
from threshold_rl.exceptions import ConfigurationError


class PunishRange(Enum):
    NARROW = auto()
    WIDE = auto()

    def to_lowercase(self):
        return self.name.lower()

    @property
    def bounds(self) -> Tuple[float, float]:
        if self == PunishRange.WIDE:
            return WIDE_PUNISH_RANGE
        return NARROW_PUNISH_RANGE


@dataclass
class LearningParams:
    lrate: float = DEFAULT_LRATE
    gamma: float = DEFAULT_GAMMA
    reward_threshold_out: float = DEFAULT_REWARD_THRESHOLD
    punish_low: float = NARROW_PUNISH_RANGE[0]
    punish_high: float = NARROW_PUNISH_RANGE[1]
    mature_hi: float = MATURE_HI
    mature_lo: float = MATURE_LO

    def __post_init__(self) -> None:
        if not self.lrate > 0:
            raise ConfigurationError(f"lrate must be positive, got {self.lrate}.")
        if not 0 < self.gamma <= 1:
            raise ConfigurationError(f"gamma must be in (0, 1], got {self.gamma}.")
        if not 0 < self.reward_threshold_out < 1:
            raise ConfigurationError(
                "reward_threshold_out must be in (0, 1), "
                f"got {self.reward_threshold_out}."
            )
        # [0, 1] is allowed so the wide punishment variant is representable.
        if not 0 <= self.punish_low <= self.punish_high <= 1:
            raise ConfigurationError(
                "Punishment range must satisfy 0 <= low <= high <= 1, "
                f"got [{self.punish_low}, {self.punish_high}]."
            )
        if not 0 < self.mature_lo < self.mature_hi < 1:
            raise ConfigurationError(
                f"Maturity bounds must satisfy 0 < lo < hi < 1, got "
                f"lo={self.mature_lo} hi={self.mature_hi}."
            )

    @classmethod
    def with_punish_range(
        cls, punish_range: PunishRange, **kwargs
    ) -> "LearningParams":
        low, high = punish_range.bounds
        return cls(punish_low=low, punish_high=high, **kwargs)


@dataclass
class TarConfig:
    """Where the conditioned reward node lives and how it is judged."""

    reward_output_index: int
    gamma: float = DEFAULT_GAMMA
    reward_threshold_out: float = DEFAULT_REWARD_THRESHOLD
    node_threshold: float = DEFAULT_NODE_THRESHOLD

    def __post_init__(self) -> None:
        if self.reward_output_index < 0:
            raise ConfigurationError(
                f"reward_output_index must be >= 0, got {self.reward_output_index}."
            )
        if not 0 < self.gamma < 1:
            raise ConfigurationError(
                f"gamma must be in (0, 1) for the reward node, got {self.gamma}."
            )
        if not 0 < self.reward_threshold_out < 1:
            raise ConfigurationError(
                "reward_threshold_out must be in (0, 1), "
                f"got {self.reward_threshold_out}."
            )

    @classmethod
    def from_params(
        cls, reward_output_index: int, params: LearningParams
    ) -> "TarConfig":
        return cls(
            reward_output_index=reward_output_index,
            gamma=params.gamma,
            reward_threshold_out=params.reward_threshold_out,
        )

    def check_output_size(self, output_size: int, motor_size: int) -> None:
        if self.reward_output_index >= output_size:
            raise ConfigurationError(
                f"Reward node index {self.reward_output_index} is outside an output "
                f"layer of {output_size} nodes."
            )
        if output_size - 1 != motor_size:
            raise ConfigurationError(
                f"An output layer with a reward node needs {motor_size} motor nodes "
                f"plus one reward node, got {output_size} nodes."
            )


def motor_indices(output_size: int, tar_cfg: Optional[TarConfig]) -> list:
    if tar_cfg is None:
        return list(range(output_size))
    return [i for i in range(output_size) if i != tar_cfg.reward_output_index]
