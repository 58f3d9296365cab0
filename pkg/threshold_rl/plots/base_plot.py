# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from pathlib import Path
from typing import List

import pandas as pd
from plotly.graph_objects import Figure
from threshold_rl.exceptions import ThresholdRLException
from threshold_rl.plots.plot_config import RunSeries


class BasePlot:
    """
    Base class for plots
    """

    def __init__(self, data: List[RunSeries]) -> None:
        self._run_data = data

    def create_plot(
        self,
        graph_title: str,
        x_label: str,
        y_label: str,
        width: int,
        height: int,
        filename_root: str,
        output_dir: Path,
    ) -> None:
        """
        Create plot for specific graph type
        """
        raise NotImplementedError

    def _create_dataframe(self, x_label: str, y_label: str) -> pd.DataFrame:
        # Series without x values (box plots) are indexed by position.
        frames = [
            pd.DataFrame(
                {
                    x_label or "x": list(series.x_metric)
                    or list(range(len(series.y_metric))),
                    y_label or "y": list(series.y_metric),
                    "Run Name": series.name,
                }
            )
            for series in self._run_data
        ]
        return pd.concat(frames, ignore_index=True)

    def _generate_csv(self, df: pd.DataFrame, output_dir: Path, file: str) -> None:
        filepath = output_dir / f"{file}.csv"
        df.to_csv(filepath, index=False)

    def _generate_graph_file(self, fig: Figure, output_dir: Path, file: str) -> None:
        if file.endswith("html"):
            filepath = output_dir / f"{file}"
            fig.write_html(filepath)
        else:
            extension = file.split(".")[-1]
            raise ThresholdRLException(f"image file type {extension} is not supported")
