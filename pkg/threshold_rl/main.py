# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

import os
import sys
import traceback
from argparse import Namespace
from typing import List, Optional

import threshold_rl.logging as logging
from threshold_rl import parser
from threshold_rl.constants import EXIT_CONFIGURATION_ERROR, EXIT_ERROR
from threshold_rl.exceptions import ConfigurationError, WeightFileError


def create_artifacts_dirs(args: Namespace) -> None:
    if not hasattr(args, "artifact_dir"):
        return
    os.makedirs(args.artifact_dir, exist_ok=True)
    if args.generate_plots:
        os.makedirs(args.artifact_dir / "plots", exist_ok=True)


# Separate function that can raise exceptions used for testing
# to assert correct errors and messages.
def run(argv: Optional[List[str]] = None) -> int:
    logging.init_logging()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.init_logging(verbose=True)
    create_artifacts_dirs(args)
    return args.func(args)


def main(argv: Optional[List[str]] = None) -> int:
    # Interactive use will catch exceptions and log formatted errors rather than
    # tracebacks.
    logger = logging.getLogger(__name__)
    try:
        return run(argv)
    except (ConfigurationError, WeightFileError) as e:
        logger.error(e)
        return EXIT_CONFIGURATION_ERROR
    except Exception as e:
        traceback.print_exc()
        logger.error(e)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
