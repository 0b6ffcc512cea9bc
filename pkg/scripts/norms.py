#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Norms and moduli of continuity of a step function file
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
    + output_arguments("json")
    + [
        ["-i", "--in", "", "step function JSON file", True],
        ["-p", "--p", "1", "exponent, e.g. 1/2", False],
        [
            "-x",
            "--ops",
            "lp,weak,hp,linf",
            "comma-separated operations: lp, weak, hp, linf, mod:<rank>",
            False,
        ],
        ["-m", "--mode", "auto", "arithmetic: auto, exact or float", False],
    ]
)
POSITIONAL_ARGUMENTS = [
    # each row is a list with 3 elements: name, type, help
]


def main(**kwargs):
    """
    main function
    """
    return cli_main("norms", **kwargs)


if __name__ == "__main__":
    sys.exit(
        main(
            **parse_commandline(
                OPTIONAL_ARGUMENTS, POSITIONAL_ARGUMENTS, DEFAULT_LOG_LEVEL
            )
        )
    )
