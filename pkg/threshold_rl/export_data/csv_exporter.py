# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

import csv
import os

import threshold_rl.logging as logging
from threshold_rl.export_data.exporter_config import ExporterConfig

logger = logging.getLogger(__name__)


class CsvExporter:
    """
    A class to export per-seed sweep results or per-cell run results in a csv format.
    """

    SEED_HEADER = [
        "seed",
        "converged",
        "presentations",
        "presentations_to_convergence",
        "reward_events",
    ]

    CELL_HEADER = [
        "start",
        "learnt_at",
        "policy",
        "reward_node_value",
        "reward_node_onset",
    ]

    def __init__(self, config: ExporterConfig):
        self._config = config
        self._output_dir = config.artifact_dir
        self._name = config.experiment.name

    def export(self) -> None:
        os.makedirs(self._output_dir, exist_ok=True)
        suffix = "seeds" if self._config.is_sweep else "cells"
        filename = self._output_dir / f"{self._name}_{suffix}.csv"
        logger.info(f"Generating {filename}")

        with open(filename, mode="w", newline="") as f:
            writer = csv.writer(f)
            if self._config.is_sweep:
                self._write_seed_rows(writer)
            else:
                self._write_cell_rows(writer)

    def _write_seed_rows(self, csv_writer) -> None:
        csv_writer.writerow(self.SEED_HEADER)
        for row in self._config.stats.per_seed_rows():
            csv_writer.writerow([_blank(row[key]) for key in self.SEED_HEADER])

    def _write_cell_rows(self, csv_writer) -> None:
        metrics = self._config.metrics
        csv_writer.writerow(self.CELL_HEADER)
        starts = sorted(set(metrics.policy) | set(metrics.learnt_cells))
        for start in starts:
            value = metrics.reward_node_values.get(start)
            csv_writer.writerow(
                [
                    start,
                    _blank(metrics.learnt_cells.get(start)),
                    metrics.policy.get(start, ""),
                    "" if value is None else f"{value:.4f}",
                    _blank(metrics.reward_node_onsets.get(start)),
                ]
            )


def _blank(value) -> str:
    return "" if value is None else str(value)
