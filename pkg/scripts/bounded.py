#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Normalized partial sum ratios over random atoms or step functions
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
        ["-p", "--p", "1", "exponent in (0, 1]", False],
        ["-n", "--max-n", 1024, "largest partial sum index", False],
        ["-T", "--trials", 100, "number of random atoms or step functions", False],
        ["-r", "--seed", 0, "random seed", False],
        ["-G", "--nogrowthcheck", False, "record growth without failing on it", False],
    ]
)
POSITIONAL_ARGUMENTS = [
    # each row is a list with 3 elements: name, type, help
]


def main(**kwargs):
    """
    main function
    """
    return cli_main("bounded", **kwargs)


if __name__ == "__main__":
    sys.exit(
        main(
            **parse_commandline(
                OPTIONAL_ARGUMENTS, POSITIONAL_ARGUMENTS, DEFAULT_LOG_LEVEL
            )
        )
    )
