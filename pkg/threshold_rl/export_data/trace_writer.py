# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

import json
import os
from pathlib import Path
from typing import IO, Optional

import threshold_rl.logging as logging
from threshold_rl.constants import TRACE_SCHEMA_VERSION
from threshold_rl.exceptions import HarnessError
from threshold_rl.experiment_config import TraceLevel
from threshold_rl.learning.records import StepRecord

logger = logging.getLogger(__name__)


class TraceWriter:
    """JSON-lines trace of a run, used as a step callback.

    The first line is a header with the schema version. At `reward`
    verbosity only rewarded presentations are written.
    """

    def __init__(self, filename: Path, level: TraceLevel = TraceLevel.PRESENTATION):
        self.filename = Path(filename)
        self.level = level
        self.lines_written = 0
        self._file: Optional[IO[str]] = None

    def __enter__(self) -> "TraceWriter":
        os.makedirs(self.filename.parent, exist_ok=True)
        logger.info(f"Writing trace to {self.filename}")
        self._file = open(self.filename, "w")
        self._write(
            {"schema_version": TRACE_SCHEMA_VERSION, "level": self.level.to_lowercase()}
        )
        return self

    def __exit__(self, *exc) -> None:
        if self._file is not None:
            self._file.close()
            self._file = None

    def __call__(self, record: StepRecord) -> None:
        if self.level == TraceLevel.REWARD and not record.reward.rewarded:
            return
        self._write(record.to_dict())
        self.lines_written += 1

    def _write(self, data) -> None:
        if self._file is None:
            raise HarnessError("TraceWriter must be used as a context manager.")
        self._file.write(json.dumps(data) + "\n")
