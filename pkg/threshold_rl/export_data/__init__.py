# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from threshold_rl.export_data.output_reporter import OutputReporter
from threshold_rl.export_data.trace_writer import TraceWriter
