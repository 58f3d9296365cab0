# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from typing import Optional

import numpy as np
from rich.console import Console
from rich.table import Table
from threshold_rl.experiment_config import ExperimentConfig
from threshold_rl.network import Network
from threshold_rl.runner import policy_map

_ARROWS = {"up": "^", "down": "v", "left": "<", "right": ">", "stay": "."}


class WeightsExporter:
    """
    A class to print per-layer weight statistics and, for a task, the greedy policy.
    """

    STAT_COLUMN_KEYS = ["mean", "std", "min", "max"]

    def __init__(self, net: Network, config: Optional[ExperimentConfig] = None):
        self._net = net
        self._config = config

    def export(self) -> None:
        console = Console()
        console.print(self._weights_table())
        if self._config is not None:
            console.print(self._policy_table())

    def _weights_table(self) -> Table:
        sizes = "-".join(str(n) for n in self._net.layer_sizes)
        table = Table(title=f"threshold-rl | Weights {sizes}")
        table.add_column("Layer", justify="right", style="cyan", no_wrap=True)
        for stat in self.STAT_COLUMN_KEYS:
            table.add_column(stat, justify="right", style="green")

        for l, (w, b) in enumerate(zip(self._net.weights, self._net.bias_weights)):
            table.add_row(f"{l + 1} weights", *self._stats(w))
            table.add_row(f"{l + 1} bias", *self._stats(b))
        return table

    def _stats(self, values: np.ndarray):
        return [
            f"{np.mean(values):.4f}",
            f"{np.std(values):.4f}",
            f"{np.min(values):.4f}",
            f"{np.max(values):.4f}",
        ]

    def _policy_table(self) -> Table:
        cfg = self._config
        policy = policy_map(self._net, cfg)
        table = Table(title=f"Greedy policy | {cfg.task.to_lowercase()}")
        if not cfg.is_grid:
            table.add_column("Pattern", style="cyan")
            table.add_column("Output", style="green")
            for index, action in sorted(policy.items()):
                table.add_row(str(index), action)
            return table

        side = cfg.physics.side
        for col in range(side):
            table.add_column(str(col), justify="center", style="green")
        for row in range(side):
            cells = []
            for col in range(side):
                cell = row * side + col
                if cell == cfg.physics.goal_cell:
                    cells.append("G")
                else:
                    cells.append(_ARROWS[policy[cell]])
            table.add_row(*cells)
        return table
