# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

"""3x3 grid worlds: target tracking and the barrier maze.

Cells are numbered row-major from the top-left corner:

    0 1 2
    3 4 5
    6 7 8
"""

from collections import deque
from dataclasses import dataclass, replace
from enum import Enum, auto
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np
import threshold_rl.logging as logging
from threshold_rl.environments.actions import (
    MOTOR_ACTIONS,
    Action,
    decode_action,
    encode_action,
)
from threshold_rl.environments.base import Transition
from threshold_rl.exceptions import ConfigurationError, HarnessError

logger = logging.getLogger(__name__)

GRID_SIDE = 3
TRACKING_GOAL = 4
MAZE_GOAL = 1
MAZE_START = 3
# With 3<->0 and 4<->1 closed the only route from 3 to 1 is 3 -> 4 -> 5 -> 2 -> 1.
MAZE_BARRIER = ((3, 0), (4, 1))


@dataclass(frozen=True)
class GridState:
    target_cell: int
    step: int = 0


class SpawnKind(Enum):
    FIXED = auto()
    UNIFORM = auto()

    def to_lowercase(self):
        return self.name.lower()


@dataclass(frozen=True)
class SpawnRule:
    kind: SpawnKind
    cells: Tuple[int, ...]

    @classmethod
    def fixed(cls, cell: int) -> "SpawnRule":
        return cls(SpawnKind.FIXED, (cell,))

    @classmethod
    def uniform(cls, cells: Iterable[int]) -> "SpawnRule":
        return cls(SpawnKind.UNIFORM, tuple(sorted(set(cells))))

    def sample(self, rng: Optional[np.random.Generator]) -> int:
        if self.kind == SpawnKind.FIXED:
            return self.cells[0]
        if rng is None:
            raise HarnessError("A uniform respawn rule needs a random generator.")
        return int(self.cells[int(rng.integers(len(self.cells)))])

    def to_dict(self) -> Dict[str, Any]:
        if self.kind == SpawnKind.FIXED:
            return {"fixed": self.cells[0]}
        return {"uniform": list(self.cells)}


@dataclass(frozen=True)
class GridPhysics:
    """Movement rules of a grid world.

    Blocked transitions are stored in both directions. Construction fails
    unless every spawn cell can reach the goal.
    """

    goal_cell: int
    spawn: SpawnRule
    blocked_transitions: FrozenSet[Tuple[int, int]] = frozenset()
    side: int = GRID_SIDE

    def __post_init__(self) -> None:
        if self.side != GRID_SIDE:
            raise ConfigurationError(
                f"Only {GRID_SIDE}x{GRID_SIDE} grids are supported."
            )
        for cell in [self.goal_cell, *self.spawn.cells]:
            self._check_cell(cell)
        if self.goal_cell in self.spawn.cells:
            raise ConfigurationError(
                f"The spawn rule may not place the target on the goal cell "
                f"{self.goal_cell}."
            )
        symmetric = set()
        for a, b in self.blocked_transitions:
            self._check_cell(a)
            self._check_cell(b)
            symmetric.add((a, b))
            symmetric.add((b, a))
        object.__setattr__(self, "blocked_transitions", frozenset(symmetric))
        distances = self.distances_to_goal()
        unreachable = [c for c in self.spawn.cells if c not in distances]
        if unreachable:
            raise ConfigurationError(
                f"Goal cell {self.goal_cell} is unreachable from spawn cells "
                f"{unreachable}."
            )

    def _check_cell(self, cell: int) -> None:
        if not 0 <= cell < self.num_cells:
            raise ConfigurationError(f"Cell {cell} is off the grid.")

    @property
    def num_cells(self) -> int:
        return self.side * self.side

    @property
    def reward_node(self) -> int:
        """The input node whose activation is the primary reward."""
        return self.goal_cell

    @property
    def diameter(self) -> int:
        return 2 * (self.side - 1)

    def move(self, cell: int, action: Action) -> int:
        row, col = divmod(cell, self.side)
        d_row, d_col = action.offset
        row, col = row + d_row, col + d_col
        if not (0 <= row < self.side and 0 <= col < self.side):
            return cell
        target = row * self.side + col
        if (cell, target) in self.blocked_transitions:
            return cell
        return target

    def neighbors(self, cell: int) -> List[int]:
        moved = [self.move(cell, action) for action in MOTOR_ACTIONS]
        return [c for c in moved if c != cell]

    def distances_to_goal(self) -> Dict[int, int]:
        # Barriers are symmetric, so a search from the goal gives distances to it.
        distances = {self.goal_cell: 0}
        queue = deque([self.goal_cell])
        while queue:
            cell = queue.popleft()
            for nxt in self.neighbors(cell):
                if nxt not in distances:
                    distances[nxt] = distances[cell] + 1
                    queue.append(nxt)
        return distances

    def optimal_action(self, cell: int) -> Action:
        """First move of a shortest path; ties broken in motor order."""
        distances = self.distances_to_goal()
        if cell == self.goal_cell or cell not in distances:
            return Action.STAY
        for action in MOTOR_ACTIONS:
            nxt = self.move(cell, action)
            if distances.get(nxt, -1) == distances[cell] - 1:
                return action
        return Action.STAY

    def to_dict(self) -> Dict[str, Any]:
        pairs = sorted({tuple(sorted(p)) for p in self.blocked_transitions})
        return {
            "goal_cell": self.goal_cell,
            "blocked": [list(p) for p in pairs],
            "spawn": self.spawn.to_dict(),
        }


def tracking_physics() -> GridPhysics:
    cells = [c for c in range(GRID_SIDE * GRID_SIDE) if c != TRACKING_GOAL]
    return GridPhysics(goal_cell=TRACKING_GOAL, spawn=SpawnRule.uniform(cells))


def maze_physics() -> GridPhysics:
    return GridPhysics(
        goal_cell=MAZE_GOAL,
        spawn=SpawnRule.fixed(MAZE_START),
        blocked_transitions=frozenset(MAZE_BARRIER),
    )


def physics_from_document(document: Any) -> GridPhysics:
    """Build physics from a mapping with goal_cell, blocked and spawn keys."""
    if not isinstance(document, dict):
        raise ConfigurationError("An environment document must be a mapping.")
    if "goal_cell" not in document:
        raise ConfigurationError("Environment document is missing 'goal_cell'.")
    if int(document.get("grid_size", GRID_SIDE)) != GRID_SIDE:
        raise ConfigurationError(f"Only grid_size {GRID_SIDE} is supported.")
    goal = int(document["goal_cell"])
    blocked = []
    for pair in document.get("blocked", []) or []:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ConfigurationError(f"Blocked transition '{pair}' is not a pair.")
        blocked.append((int(pair[0]), int(pair[1])))
    spawn_doc = document.get("spawn")
    if spawn_doc is None:
        spawn = SpawnRule.uniform(
            c for c in range(GRID_SIDE * GRID_SIDE) if c != goal
        )
    elif isinstance(spawn_doc, dict) and "fixed" in spawn_doc:
        spawn = SpawnRule.fixed(int(spawn_doc["fixed"]))
    elif isinstance(spawn_doc, dict) and "uniform" in spawn_doc:
        spawn = SpawnRule.uniform(int(c) for c in spawn_doc["uniform"])
    else:
        raise ConfigurationError(
            "spawn must be a mapping with either 'fixed' or 'uniform'."
        )
    return GridPhysics(
        goal_cell=goal, spawn=spawn, blocked_transitions=frozenset(blocked)
    )


def grid_step(
    state: GridState,
    action: Action,
    physics: GridPhysics,
    rng: Optional[np.random.Generator] = None,
    primary_reward: bool = True,
) -> Tuple[GridState, bool]:
    """Move the target one cell and respawn it if it reached the goal.

    Reward is judged on the cell reached by the move. The returned state is
    the respawned one when the goal was reached.
    """
    cell = physics.move(state.target_cell, action)
    reached_goal = cell == physics.goal_cell
    if reached_goal:
        cell = physics.spawn.sample(rng)
    return GridState(cell, state.step + 1), reached_goal and primary_reward


def encode_observation(state: GridState, side: int = GRID_SIDE) -> np.ndarray:
    observation = np.zeros(side * side)
    observation[state.target_cell] = 1.0
    return observation


class GridWorld:
    """A grid world the agent acts on through its motor firing vector."""

    motor_size = len(MOTOR_ACTIONS)

    def __init__(
        self,
        physics: GridPhysics,
        rng: np.random.Generator,
        start_cell: Optional[int] = None,
    ) -> None:
        self.physics = physics
        self.input_size = physics.num_cells
        self.primary_reward_enabled = True
        self._rng = rng
        if start_cell is None:
            start_cell = physics.spawn.sample(rng)
        self.state = GridState(start_cell)

    def observe(self) -> np.ndarray:
        return encode_observation(self.state, self.physics.side)

    def act(self, firing: np.ndarray) -> Transition:
        action = decode_action(firing)
        before = self.state.target_cell
        moved_to = self.physics.move(before, action)
        self.state, rewarded = grid_step(
            self.state,
            action,
            self.physics,
            self._rng,
            primary_reward=self.primary_reward_enabled,
        )
        reached_goal = moved_to == self.physics.goal_cell
        if reached_goal:
            logger.debug(
                f"Target reached goal from cell {before}; respawned at "
                f"{self.state.target_cell}"
            )
        return Transition(
            observation=self.observe(),
            rewarded=rewarded,
            action=action.to_lowercase(),
            reached_goal=reached_goal,
            info={"cell": before, "next_cell": self.state.target_cell},
            reached_observation=encode_observation(
                GridState(moved_to), self.physics.side
            ),
        )

    def reset(self, cell: int) -> None:
        self.physics._check_cell(cell)
        self.state = replace(self.state, target_cell=cell)


def grid_dataset(
    physics: GridPhysics,
    cells: Iterable[int],
    reward_node: bool = False,
    gamma: float = 0.95,
) -> List[Tuple[np.ndarray, np.ndarray]]:
    """Labelled (observation, target) pairs from shortest-path moves.

    With a reward node the target for a cell k steps from the goal is
    gamma ** k, the value the conditioned reward rule settles on.
    """
    distances = physics.distances_to_goal()
    dataset = []
    for cell in cells:
        if cell == physics.goal_cell or cell not in distances:
            continue
        target = encode_action(physics.optimal_action(cell))
        if reward_node:
            target = np.append(target, gamma ** distances[cell])
        dataset.append((encode_observation(GridState(cell), physics.side), target))
    return dataset
