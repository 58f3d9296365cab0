# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

import os
from pathlib import Path
from typing import List

import pandas as pd
import threshold_rl.logging as logging
from threshold_rl.exceptions import ConfigurationError
from threshold_rl.learning.records import StepRecord
from threshold_rl.metrics import SweepStatistics
from threshold_rl.plots.box_plot import BoxPlot
from threshold_rl.plots.plot_config import PlotConfig, PlotType, RunSeries
from threshold_rl.plots.scatter_plot import ScatterPlot

logger = logging.getLogger(__name__)

DEFAULT_ROLLING_WINDOW = 1000
DEFAULT_BUCKET_SIZE = 100
# Learning curves are thinned to roughly this many points.
MAX_CURVE_POINTS = 2000


class RewardRecorder:
    """Step callback that counts rewards per bucket of presentations.

    Memory grows with the number of buckets, not presentations. A partly
    filled last bucket still shows up in the curve.
    """

    def __init__(self, bucket_size: int = DEFAULT_BUCKET_SIZE) -> None:
        if bucket_size < 1:
            raise ConfigurationError(f"bucket_size must be >= 1, got {bucket_size}.")
        self.bucket_size = bucket_size
        self.presentations: List[int] = []
        self.rewards: List[int] = []
        self.counts: List[int] = []
        self._last = 0
        self._pending_rewards = 0
        self._pending_count = 0

    def __call__(self, record: StepRecord) -> None:
        self._last = record.presentation
        self._pending_rewards += int(record.reward.rewarded)
        self._pending_count += 1
        if self._pending_count == self.bucket_size:
            self.presentations.append(self._last)
            self.rewards.append(self._pending_rewards)
            self.counts.append(self._pending_count)
            self._pending_rewards = 0
            self._pending_count = 0

    def reward_rate(self, window: int = DEFAULT_ROLLING_WINDOW) -> pd.DataFrame:
        presentations = list(self.presentations)
        rewards = list(self.rewards)
        counts = list(self.counts)
        if self._pending_count:
            presentations.append(self._last)
            rewards.append(self._pending_rewards)
            counts.append(self._pending_count)
        df = pd.DataFrame(
            {"presentation": presentations, "rewards": rewards, "count": counts}
        )
        buckets = max(1, window // self.bucket_size)
        df["reward_rate"] = (
            df["rewards"].rolling(buckets, min_periods=1).sum()
            / df["count"].rolling(buckets, min_periods=1).sum()
        )
        stride = max(1, len(df) // MAX_CURVE_POINTS)
        return df.iloc[::stride]


def learning_curve_config(
    name: str, recorder: RewardRecorder, output_dir: Path
) -> PlotConfig:
    curve = recorder.reward_rate()
    return PlotConfig(
        title=f"{name} reward rate",
        data=[
            RunSeries(
                name=name,
                x_metric=curve["presentation"].tolist(),
                y_metric=curve["reward_rate"].tolist(),
            )
        ],
        x_label="Presentation",
        y_label="Rolling reward rate",
        width=1000,
        height=450,
        type=PlotType.SCATTER,
        output=output_dir,
    )


def sweep_box_config(name: str, stats: SweepStatistics, output_dir: Path) -> PlotConfig:
    return PlotConfig(
        title=f"{name} presentations to convergence",
        data=[
            RunSeries(name=name, x_metric=[], y_metric=stats.converged_presentations)
        ],
        x_label="",
        y_label="Presentations to convergence",
        width=700,
        height=450,
        type=PlotType.BOX,
        output=output_dir,
    )


_PLOT_CLASSES = {PlotType.BOX: BoxPlot, PlotType.SCATTER: ScatterPlot}


class PlotManager:
    """
    Manage details around plots generated
    """

    def __init__(self, plot_configs: List[PlotConfig]) -> None:
        self._plot_configs = plot_configs

    def _generate_filename(self, title: str) -> str:
        filename = "_".join(title.lower().split())
        return filename

    def generate_plots(self) -> None:
        for plot_config in self._plot_configs:
            logger.info(f"Generating '{plot_config.title}' plot")
            os.makedirs(plot_config.output, exist_ok=True)
            plot_class = _PLOT_CLASSES[plot_config.type]
            plot_class(plot_config.data).create_plot(
                graph_title=plot_config.title,
                x_label=plot_config.x_label,
                y_label=plot_config.y_label,
                width=plot_config.width,
                height=plot_config.height,
                filename_root=self._generate_filename(plot_config.title),
                output_dir=plot_config.output,
            )
