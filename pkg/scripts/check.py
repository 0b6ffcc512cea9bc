#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Exact cross-checks: kernel support measures, kernel formulas, modulus sandwich
"""

import logging
import sys
from walsh_paley.cli import (
    DEFAULT_LOG_LEVEL,
    LOGGING_ARGUMENTS,
    cli_main,
    output_arguments,
    parse_commandline,
)

logger = logging.getLogger(__name__)

OPTIONAL_ARGUMENTS = (
    LOGGING_ARGUMENTS
    + output_arguments()
    + [
        ["-a", "--name", "support", "check to run: support, kernel or modulus", False],
        ["-n", "--max-n", 0, "largest index (0 for the check default)", False],
        ["-L", "--level", 0, "resolution N (0 for the check default)", False],
        ["-T", "--trials", 0, "random trials or pairs (0 for the check default)", False],
        ["-r", "--seed", 0, "random seed", False],
    ]
)
POSITIONAL_ARGUMENTS = [
    # each row is a list with 3 elements: name, type, help
]


def main(**kwargs):
    """
    main function
    """
    return cli_main("check", **kwargs)


if __name__ == "__main__":
    sys.exit(
        main(
            **parse_commandline(
                OPTIONAL_ARGUMENTS, POSITIONAL_ARGUMENTS, DEFAULT_LOG_LEVEL
            )
        )
    )
