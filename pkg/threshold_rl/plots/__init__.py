# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from threshold_rl.plots.plot_config import PlotConfig, PlotType, RunSeries
from threshold_rl.plots.plot_manager import PlotManager, RewardRecorder
