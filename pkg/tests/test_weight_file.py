# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

import numpy as np
import pytest
import yaml
from threshold_rl.exceptions import ShapeError, WeightFileError, WeightShapeError
from threshold_rl.network import (
    init_network,
    load_weights,
    network_from_document,
    save_weights,
    weights_to_document,
)


class TestWeightFile:
    def test_round_trip_is_bit_identical(self, tmp_path):
        net = init_network([9, 12, 5], seed=42)
        path = tmp_path / "nested" / "weights.yaml"
        save_weights(net, path)
        loaded = load_weights(path)
        assert loaded.layer_sizes == net.layer_sizes
        for a, b in zip(
            net.weights + net.bias_weights + net.node_thresholds,
            loaded.weights + loaded.bias_weights + loaded.node_thresholds,
        ):
            assert np.array_equal(a, b)
        for cell in range(9):
            x = np.eye(9)[cell]
            assert np.array_equal(net.propagate(x)[-1], loaded.propagate(x)[-1])

    def test_document_header(self):
        document = weights_to_document(init_network([2, 3, 1]))
        assert document["format"] == "threshold-rl-weights"
        assert document["version"] == 1
        assert document["layer_sizes"] == [2, 3, 1]
        assert len(document["layers"]) == 2

    def test_truncated_row_names_layer(self):
        document = weights_to_document(init_network([2, 3, 1]))
        document["layers"][0]["weights"][2] = document["layers"][0]["weights"][2][:1]
        with pytest.raises(WeightShapeError) as excinfo:
            network_from_document(document)
        assert "layer 1" in str(excinfo.value)
        assert "layers[0].weights[2]" in str(excinfo.value)

    def test_shape_error_is_also_a_shape_error(self):
        document = weights_to_document(init_network([2, 3, 1]))
        document["layers"][1]["bias"] = []
        with pytest.raises(ShapeError):
            network_from_document(document)

    @pytest.mark.parametrize(
        "field, value, message",
        [
            ("format", "something-else", "format"),
            ("version", 2, "version"),
            ("layer_sizes", "2-3-1", "layer_sizes"),
        ],
    )
    def test_header_errors(self, field, value, message):
        document = weights_to_document(init_network([2, 3, 1]))
        document[field] = value
        with pytest.raises(WeightFileError) as excinfo:
            network_from_document(document)
        assert message in str(excinfo.value)

    def test_missing_field(self):
        document = weights_to_document(init_network([2, 3, 1]))
        del document["thresholds"]
        with pytest.raises(WeightFileError, match="thresholds: missing field"):
            network_from_document(document)

    def test_non_numeric_value(self):
        document = weights_to_document(init_network([2, 3, 1]))
        document["layers"][0]["bias"][1] = "heavy"
        with pytest.raises(WeightFileError, match=r"layers\[0\].bias"):
            network_from_document(document)

    def test_missing_file(self, tmp_path):
        with pytest.raises(WeightFileError):
            load_weights(tmp_path / "absent.yaml")

    def test_invalid_yaml(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("layers: [unclosed")
        with pytest.raises(WeightFileError):
            load_weights(path)

    def test_top_level_must_be_mapping(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text(yaml.safe_dump([1, 2, 3]))
        with pytest.raises(WeightFileError):
            load_weights(path)
