# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

"""Text weight documents.

A weight document is YAML with a format id and version header followed by
the layer sizes, per-layer thresholds and, per connection layer, the
row-major weight matrix (one row per postsynaptic node) and bias vector.
Floats are written with their shortest round-trip representation, so a
save followed by a load restores bit-identical values.
"""

from pathlib import Path
from typing import Any, Dict, List

import numpy as np
import threshold_rl.logging as logging

# Skip type checking to avoid mypy error
# Issue: https://github.com/python/mypy/issues/10632
import yaml  # type: ignore
from threshold_rl.exceptions import (
    ConfigurationError,
    ShapeError,
    WeightFileError,
    WeightShapeError,
)
from threshold_rl.network.network import Network

logger = logging.getLogger(__name__)

WEIGHT_FORMAT_ID = "threshold-rl-weights"
WEIGHT_FORMAT_VERSION = 1


def weights_to_document(net: Network) -> Dict[str, Any]:
    return {
        "format": WEIGHT_FORMAT_ID,
        "version": WEIGHT_FORMAT_VERSION,
        "layer_sizes": list(net.layer_sizes),
        "thresholds": [[float(x) for x in t] for t in net.node_thresholds],
        "layers": [
            {
                "weights": [[float(x) for x in row] for row in w],
                "bias": [float(x) for x in b],
            }
            for w, b in zip(net.weights, net.bias_weights)
        ],
    }


def save_weights(net: Network, destination: Path) -> Dict[str, Any]:
    document = weights_to_document(net)
    destination = Path(destination)
    if destination.parent != Path(""):
        destination.parent.mkdir(parents=True, exist_ok=True)
    logger.info(f"Saving {net} weights to {destination}")
    with open(str(destination), "w") as f:
        yaml.safe_dump(document, f, sort_keys=False, default_flow_style=None)
    return document


def load_weights(source: Path) -> Network:
    try:
        with open(str(source)) as f:
            document = yaml.safe_load(f)
    except OSError as e:
        raise WeightFileError(f"Cannot read weight file '{source}': {e}")
    except yaml.YAMLError as e:
        raise WeightFileError(f"Weight file '{source}' is not valid YAML: {e}")
    logger.debug(f"Loaded weight document from {source}")
    return network_from_document(document)


def network_from_document(document: Any) -> Network:
    if not isinstance(document, dict):
        raise WeightFileError("Weight document must be a mapping at the top level.")
    fmt = _require(document, "format")
    if fmt != WEIGHT_FORMAT_ID:
        raise WeightFileError(
            f"format: expected '{WEIGHT_FORMAT_ID}', found '{fmt}'."
        )
    version = _require(document, "version")
    if version != WEIGHT_FORMAT_VERSION:
        raise WeightFileError(
            f"version: expected {WEIGHT_FORMAT_VERSION}, found {version}."
        )
    sizes = _require(document, "layer_sizes")
    if not isinstance(sizes, list) or not all(isinstance(n, int) for n in sizes):
        raise WeightFileError("layer_sizes: expected a list of integers.")

    thresholds = _require(document, "thresholds")
    if not isinstance(thresholds, list) or len(thresholds) != len(sizes):
        raise WeightShapeError(
            f"thresholds: expected {len(sizes)} per-layer vectors."
        )
    threshold_vectors = [
        _vector(t, n, f"thresholds[{l}]")
        for l, (t, n) in enumerate(zip(thresholds, sizes))
    ]

    layers = _require(document, "layers")
    if not isinstance(layers, list) or len(layers) != len(sizes) - 1:
        raise WeightShapeError(
            f"layers: expected {len(sizes) - 1} connection layers."
        )
    weights: List[np.ndarray] = []
    biases: List[np.ndarray] = []
    for l, layer in enumerate(layers):
        where = f"layers[{l}]"
        if not isinstance(layer, dict):
            raise WeightFileError(f"{where}: expected a mapping.")
        n_in, n_out = sizes[l], sizes[l + 1]
        rows = layer.get("weights")
        if not isinstance(rows, list) or len(rows) != n_out:
            found = len(rows) if isinstance(rows, list) else "no"
            raise WeightShapeError(
                f"{where}.weights (layer {l + 1}): expected {n_out} rows, "
                f"found {found}."
            )
        matrix = [
            _vector(row, n_in, f"{where}.weights[{u}] (layer {l + 1})")
            for u, row in enumerate(rows)
        ]
        weights.append(np.array(matrix).reshape(n_out, n_in))
        biases.append(
            _vector(layer.get("bias"), n_out, f"{where}.bias (layer {l + 1})")
        )

    try:
        return Network(sizes, weights, biases, threshold_vectors)
    except (ConfigurationError, ShapeError) as e:
        raise WeightShapeError(f"Weight document is inconsistent: {e}")


def _require(document: Dict[str, Any], key: str) -> Any:
    if key not in document:
        raise WeightFileError(f"{key}: missing field.")
    return document[key]


def _vector(values: Any, expected: int, where: str) -> np.ndarray:
    if not isinstance(values, list):
        raise WeightFileError(f"{where}: expected a list of numbers.")
    if len(values) != expected:
        raise WeightShapeError(
            f"{where}: expected {expected} values, found {len(values)}."
        )
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise WeightFileError(f"{where}[{i}]: '{v}' is not a number.")
    return np.array(values, dtype=np.float64)
