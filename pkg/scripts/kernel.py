#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Tabulate the Dirichlet kernel D_n
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
        ["-L", "--level", 0, "resolution N (0 for |n| + 1)", False],
        ["-m", "--mode", "auto", "arithmetic: auto, exact or float", False],
    ]
)
POSITIONAL_ARGUMENTS = [
    # each row is a list with 3 elements: name, type, help
    ["n", int, "kernel index (1 <= n <= 2^level)"],
]


def main(**kwargs):
    """
    main function
    """
    return cli_main("kernel", **kwargs)


if __name__ == "__main__":
    sys.exit(
        main(
            **parse_commandline(
                OPTIONAL_ARGUMENTS, POSITIONAL_ARGUMENTS, DEFAULT_LOG_LEVEL
            )
        )
    )
