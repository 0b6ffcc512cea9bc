#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Partial sum errors against the H_p modulus of continuity along a sequence
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
        ["-a", "--target", "random", "random (a random martingale) or t4b", False],
        ["-p", "--p", "", "exponent (default 1 for random, 1/2 for t4b)", False],
        ["-q", "--seq", "", "index sequence: pow2plushalf, pow2plus1, alternating or a list", False],
        ["-L", "--level", 0, "resolution N (0 for 16)", False],
        ["-d", "--decay", 0.5, "decay rate of the random martingale differences", False],
        ["-x", "--ceiling", 0.0, "largest allowed error to modulus ratio (0 for none)", False],
        ["-r", "--seed", 0, "random seed", False],
        ["-g", "--phi", "one", "weight function for constructions", False],
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
    return cli_main("converge", **kwargs)


if __name__ == "__main__":
    sys.exit(
        main(
            **parse_commandline(
                OPTIONAL_ARGUMENTS, POSITIONAL_ARGUMENTS, DEFAULT_LOG_LEVEL
            )
        )
    )
