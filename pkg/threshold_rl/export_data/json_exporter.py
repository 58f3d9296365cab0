# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

import json
import os
from typing import Any, Dict

import threshold_rl.logging as logging
from threshold_rl.constants import SUMMARY_SCHEMA_VERSION
from threshold_rl.export_data.exporter_config import ExporterConfig

logger = logging.getLogger(__name__)


class JsonExporter:
    """
    A class to export the run or sweep summary in a json format.
    """

    def __init__(self, config: ExporterConfig):
        self._config = config
        self._output_dir = config.artifact_dir
        self._name = config.experiment.name

    def export(self) -> None:
        os.makedirs(self._output_dir, exist_ok=True)
        filename = self._output_dir / f"{self._name}_summary.json"
        logger.info(f"Generating {filename}")
        with open(str(filename), "w") as f:
            f.write(summary_json(self._config))


def summary_document(config: ExporterConfig) -> Dict[str, Any]:
    document: Dict[str, Any] = {
        "schema_version": SUMMARY_SCHEMA_VERSION,
        "kind": "sweep" if config.is_sweep else "run",
        "config": config.experiment.to_dict(),
    }
    if config.is_sweep:
        document["statistics"] = config.stats.stats_dict
        document["seeds"] = config.stats.per_seed_rows()
    else:
        document["metrics"] = config.metrics.to_dict()
    return document


def summary_json(config: ExporterConfig) -> str:
    return json.dumps(summary_document(config), indent=2) + "\n"
