# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

from threshold_rl.network.network import (
    ActivationSnapshot,
    Network,
    forward,
    init_network,
    is_mature,
    logistic,
    thresholded_fire,
)
from threshold_rl.network.weight_file import (
    load_weights,
    network_from_document,
    save_weights,
    weights_to_document,
)
