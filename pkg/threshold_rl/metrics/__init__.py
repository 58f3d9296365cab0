# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from threshold_rl.metrics.statistics import SweepStatistics
from threshold_rl.metrics.trial_metrics import TrialMetrics
