# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from pathlib import Path
from typing import Optional

from threshold_rl.experiment_config import ExperimentConfig
from threshold_rl.metrics import SweepStatistics, TrialMetrics


class ExporterConfig:
    """What the exporters write: either one run's metrics or a sweep's statistics."""

    def __init__(self):
        self._experiment: Optional[ExperimentConfig] = None
        self._metrics: Optional[TrialMetrics] = None
        self._stats: Optional[SweepStatistics] = None
        self._artifact_dir: Optional[Path] = None

    @property
    def experiment(self) -> Optional[ExperimentConfig]:
        return self._experiment

    @experiment.setter
    def experiment(self, experiment: ExperimentConfig):
        self._experiment = experiment

    @property
    def metrics(self) -> Optional[TrialMetrics]:
        return self._metrics

    @metrics.setter
    def metrics(self, metrics: TrialMetrics):
        self._metrics = metrics

    @property
    def stats(self) -> Optional[SweepStatistics]:
        return self._stats

    @stats.setter
    def stats(self, stats: SweepStatistics):
        self._stats = stats

    @property
    def artifact_dir(self) -> Optional[Path]:
        return self._artifact_dir

    @artifact_dir.setter
    def artifact_dir(self, artifact_dir_value: Path):
        self._artifact_dir = artifact_dir_value

    @property
    def is_sweep(self) -> bool:
        return self._stats is not None
