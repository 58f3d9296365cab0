# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

__version__ = "0.1.0dev"
