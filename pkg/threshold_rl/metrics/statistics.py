# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from collections import defaultdict
from typing import Dict, List, Optional, Tuple

import numpy as np
from threshold_rl.metrics.trial_metrics import TrialMetrics


class SweepStatistics:
    """Aggregates the outcome of a seed sweep.

    Presentations-to-convergence statistics (median, min, max, mean, std)
    are taken over converged seeds only; `success_rate` counts all of them.

    Example:

      >>> stats = SweepStatistics([(0, TrialMetrics(presentations_to_convergence=10))])
      >>> stats.median_presentations  # output: 10.0
    """

    def __init__(self, results: List[Tuple[int, TrialMetrics]]):
        self._results = sorted(results, key=lambda r: r[0])
        self._stats_dict: Dict = defaultdict(dict)
        self.num_seeds = len(self._results)
        self.num_converged = len(self.converged_presentations)
        self.success_rate = (
            self.num_converged / self.num_seeds if self.num_seeds else 0.0
        )
        self._stats_dict["success_rate"] = {
            "value": self.success_rate,
            "converged": self.num_converged,
            "seeds": self.num_seeds,
        }
        data = self.converged_presentations
        if data:
            self._calculate_median(data)
            self._calculate_minmax(data)
            self._calculate_mean(data)
            self._calculate_std(data)

    @property
    def converged_presentations(self) -> List[int]:
        return [
            m.presentations_to_convergence
            for _, m in self._results
            if m.presentations_to_convergence is not None
        ]

    def _calculate_median(self, data: List[int]) -> None:
        self.median_presentations = float(np.median(data))
        self._stats_dict["presentations"]["median"] = self.median_presentations

    def _calculate_minmax(self, data: List[int]) -> None:
        self.min_presentations = int(np.min(data))
        self.max_presentations = int(np.max(data))
        self._stats_dict["presentations"]["min"] = self.min_presentations
        self._stats_dict["presentations"]["max"] = self.max_presentations

    def _calculate_mean(self, data: List[int]) -> None:
        self.avg_presentations = float(np.mean(data))
        self._stats_dict["presentations"]["avg"] = self.avg_presentations

    def _calculate_std(self, data: List[int]) -> None:
        self.std_presentations = float(np.std(data))
        self._stats_dict["presentations"]["std"] = self.std_presentations

    def median_or_none(self) -> Optional[float]:
        return getattr(self, "median_presentations", None)

    @property
    def results(self) -> List[Tuple[int, TrialMetrics]]:
        return self._results

    @property
    def stats_dict(self) -> Dict:
        return dict(self._stats_dict)

    def per_seed_rows(self) -> List[Dict]:
        return [
            {
                "seed": seed,
                "converged": m.converged,
                "presentations": m.presentations,
                "presentations_to_convergence": m.presentations_to_convergence,
                "reward_events": m.reward_events,
            }
            for seed, m in self._results
        ]

    def __repr__(self) -> str:
        return (
            f"SweepStatistics(seeds={self.num_seeds}, "
            f"success_rate={self.success_rate}, median={self.median_or_none()})"
        )
