# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from dataclasses import dataclass, field
from typing import Any, Dict, Optional


@dataclass
class TrialMetrics:
    """Outcome of one training run.

    `learnt_cells` maps each required start cell to the presentation at
    which it was first found learnt (None while it is not). The run is
    converged once `presentations_to_convergence` is set, which only
    happens when every required cell is learnt.
    """

    presentations: int = 0
    presentations_to_convergence: Optional[int] = None
    learnt_cells: Dict[int, Optional[int]] = field(default_factory=dict)
    reward_events: int = 0
    primary_reward_events: int = 0
    conditioned_reward_events: int = 0
    policy: Dict[int, str] = field(default_factory=dict)
    reward_node_onsets: Dict[int, Optional[int]] = field(default_factory=dict)
    reward_node_values: Dict[int, float] = field(default_factory=dict)
    started_converged: bool = False
    extinction: Optional[Dict[str, Any]] = None
    wall_clock: float = 0.0

    @property
    def converged(self) -> bool:
        return self.presentations_to_convergence is not None

    def mark_converged(self, presentation: int) -> None:
        if self.presentations_to_convergence is None:
            self.presentations_to_convergence = presentation

    def mark_learnt(self, cell: int, presentation: int) -> None:
        if self.learnt_cells.get(cell) is None:
            self.learnt_cells[cell] = presentation

    def all_learnt(self) -> bool:
        return all(v is not None for v in self.learnt_cells.values())

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        # Keys are stringified and sorted so the document is byte-stable.
        data: Dict[str, Any] = {
            "converged": self.converged,
            "presentations": self.presentations,
            "presentations_to_convergence": self.presentations_to_convergence,
            "started_converged": self.started_converged,
            "reward_events": self.reward_events,
            "primary_reward_events": self.primary_reward_events,
            "conditioned_reward_events": self.conditioned_reward_events,
            "learnt_cells": _by_cell(self.learnt_cells),
            "policy": _by_cell(self.policy),
            "reward_node_onsets": _by_cell(self.reward_node_onsets),
            "reward_node_values": _by_cell(self.reward_node_values),
            "extinction": self.extinction,
        }
        if include_timing:
            data["wall_clock"] = self.wall_clock
        return data


def _by_cell(mapping: Dict[int, Any]) -> Dict[str, Any]:
    return {str(k): mapping[k] for k in sorted(mapping)}
