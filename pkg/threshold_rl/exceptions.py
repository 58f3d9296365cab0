# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause


class ThresholdRLException(Exception):
    """
    A custom exception specific to threshold-rl
    """

    pass


class ConfigurationError(ThresholdRLException):
    """Invalid topology, parameters, environment document or experiment."""

    pass


class ShapeError(ThresholdRLException, ValueError):
    """A vector or matrix does not match the shape the network expects."""

    pass


class WeightFileError(ThresholdRLException):
    """A weight document could not be read. The message names the field."""

    pass


class WeightShapeError(WeightFileError, ShapeError):
    pass


class HarnessError(ThresholdRLException):
    """The step loop cannot continue with the given environment."""

    pass
