# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import threshold_rl.logging as logging
from threshold_rl.exceptions import ConfigurationError, ShapeError
from threshold_rl.learning.backprop import backprop_update
from threshold_rl.learning.params import LearningParams
from threshold_rl.metrics.trial_metrics import TrialMetrics
from threshold_rl.network import Network, is_mature, thresholded_fire

logger = logging.getLogger(__name__)

Dataset = Sequence[Tuple[np.ndarray, np.ndarray]]


@dataclass
class SupervisedStop:
    """When supervised training ends.

    `criterion` replaces the default convergence test; it is called with
    the network after every presentation.
    """

    max_presentations: int
    criterion: Optional[Callable[[Network], bool]] = None

    def __post_init__(self) -> None:
        if self.max_presentations < 0:
            raise ConfigurationError(
                f"max_presentations must be >= 0, got {self.max_presentations}."
            )


def _check_dataset(net: Network, dataset: Dataset) -> None:
    if not dataset:
        raise ConfigurationError("A supervised dataset needs at least one pattern.")
    for i, (inputs, desired) in enumerate(dataset):
        if np.asarray(inputs).shape != (net.input_size,):
            raise ShapeError(
                f"Pattern {i} has {np.asarray(inputs).size} inputs, expected "
                f"{net.input_size}."
            )
        if np.asarray(desired).shape != (net.output_size,):
            raise ShapeError(
                f"Pattern {i} has {np.asarray(desired).size} targets, expected "
                f"{net.output_size}."
            )


def dataset_converged(
    net: Network,
    dataset: Dataset,
    params: LearningParams,
    mature_nodes: Optional[List[int]] = None,
) -> bool:
    """Every thresholded output matches its target and the checked outputs are mature.

    Maturity is judged on `mature_nodes` (all outputs when None).
    """
    thresholds = net.output_thresholds
    for inputs, desired in dataset:
        outputs = net.propagate(inputs)[-1]
        if not np.array_equal(
            thresholded_fire(outputs, thresholds),
            thresholded_fire(desired, thresholds),
        ):
            return False
        checked = outputs if mature_nodes is None else outputs[mature_nodes]
        if not is_mature(checked, params.mature_hi, params.mature_lo).all():
            return False
    return True


def train_supervised(
    net: Network,
    dataset: Dataset,
    params: LearningParams,
    stop: SupervisedStop,
    mature_nodes: Optional[List[int]] = None,
) -> TrialMetrics:
    """Online backpropagation over `dataset`, presented in order and cycled.

    Convergence is checked before the first presentation and after each one.
    Reaching the cap returns an unconverged result.
    """
    _check_dataset(net, dataset)

    def converged() -> bool:
        if stop.criterion is not None:
            return stop.criterion(net)
        return dataset_converged(net, dataset, params, mature_nodes)

    metrics = TrialMetrics()
    if converged():
        metrics.started_converged = True
        metrics.mark_converged(0)
        return metrics
    for presentation in range(1, stop.max_presentations + 1):
        inputs, desired = dataset[(presentation - 1) % len(dataset)]
        snapshot = net.forward(inputs)
        backprop_update(net, snapshot, desired, params)
        metrics.presentations = presentation
        if converged():
            metrics.mark_converged(presentation)
            logger.debug(f"Supervised training converged after {presentation}")
            break
    return metrics
