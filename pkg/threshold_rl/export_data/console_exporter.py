# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from rich.console import Console
from rich.table import Table
from threshold_rl.export_data.exporter_config import ExporterConfig


class ConsoleExporter:
    """
    A class to print the run summary or sweep statistics to the console.
    """

    STAT_COLUMN_KEYS = ["median", "min", "max", "avg", "std"]

    def __init__(self, config: ExporterConfig):
        self._config = config
        self._experiment = config.experiment

    def _get_title(self) -> str:
        title = "threshold-rl | "
        title += f"{self._experiment.task.to_lowercase()} / "
        title += self._experiment.algorithm.to_lowercase()
        if self._config.is_sweep:
            title += " sweep"
        return title

    def export(self) -> None:
        table = Table(title=self._get_title())
        if self._config.is_sweep:
            self._construct_sweep_table(table)
        else:
            self._construct_run_table(table)

        console = Console()
        console.print(table)

    def _construct_run_table(self, table: Table) -> None:
        metrics = self._config.metrics
        table.add_column("Statistic", justify="right", style="cyan", no_wrap=True)
        table.add_column("Value", justify="right", style="green")

        converged = metrics.presentations_to_convergence
        table.add_row("Converged", "yes" if metrics.converged else "no")
        table.add_row("Presentations", f"{metrics.presentations:,}")
        table.add_row(
            "Presentations to convergence",
            "N/A" if converged is None else f"{converged:,}",
        )
        table.add_row("Reward events", f"{metrics.reward_events:,}")
        table.add_row("Conditioned rewards", f"{metrics.conditioned_reward_events:,}")
        learnt = sum(v is not None for v in metrics.learnt_cells.values())
        table.add_row("Learnt starts", f"{learnt}/{len(metrics.learnt_cells)}")
        if metrics.policy:
            policy = ", ".join(f"{k}:{v}" for k, v in sorted(metrics.policy.items()))
            table.add_row("Policy", policy)
        if metrics.extinction is not None:
            table.add_row(
                "Greedy success after extinction",
                f"{metrics.extinction['greedy_success']:.2f}",
            )
        table.add_row("Wall clock (s)", f"{metrics.wall_clock:,.2f}")

    def _construct_sweep_table(self, table: Table) -> None:
        stats = self._config.stats.stats_dict
        table.add_column("Statistic", justify="right", style="cyan", no_wrap=True)
        for stat in self.STAT_COLUMN_KEYS:
            table.add_column(stat, justify="right", style="green")

        presentations = stats.get("presentations", {})
        row_values = ["Presentations to convergence"]
        for stat in self.STAT_COLUMN_KEYS:
            value = presentations.get(stat)
            row_values.append("N/A" if value is None else f"{value:,.2f}")
        table.add_row(*row_values)

        rate = stats["success_rate"]
        success = f"{rate['value']:.2f} ({rate['converged']}/{rate['seeds']})"
        table.add_row("Success rate", success, *[""] * (len(self.STAT_COLUMN_KEYS) - 1))
