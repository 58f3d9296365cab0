# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from typing import Protocol


class DataExporterInterface(Protocol):
    def export(self):
        pass
