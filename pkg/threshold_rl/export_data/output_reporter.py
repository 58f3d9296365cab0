# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from pathlib import Path
from typing import Optional

from threshold_rl.experiment_config import ExperimentConfig
from threshold_rl.export_data.data_exporter_factory import DataExporterFactory
from threshold_rl.export_data.exporter_config import ExporterConfig
from threshold_rl.metrics import SweepStatistics, TrialMetrics


class OutputReporter:
    """
    A class to orchestrate output generation.
    """

    def __init__(
        self,
        experiment: ExperimentConfig,
        metrics: Optional[TrialMetrics] = None,
        stats: Optional[SweepStatistics] = None,
        artifact_dir: Optional[Path] = None,
    ):
        self.experiment = experiment
        self.metrics = metrics
        self.stats = stats
        self.artifact_dir = artifact_dir or experiment.artifact_dir

    def report_output(self) -> None:
        factory = DataExporterFactory()
        exporter_config = self._create_exporter_config()
        data_exporters = factory.create_data_exporters(exporter_config)

        for exporter in data_exporters:
            exporter.export()

    def _create_exporter_config(self) -> ExporterConfig:
        config = ExporterConfig()
        config.experiment = self.experiment
        config.metrics = self.metrics
        config.stats = self.stats
        config.artifact_dir = self.artifact_dir
        return config
