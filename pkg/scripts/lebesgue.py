#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Sweep Lebesgue constants and check V(n)/8 <= L(n) <= V(n) exactly
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
        ["-n", "--max-n", 4096, "largest index of the exhaustive sweep (at most 4096)", False],
        ["-c", "--sample", 0, "number of seeded random indices above max-n", False],
        ["-e", "--max-exponent", 20, "sampled indices lie below 2^max-exponent", False],
        ["-r", "--seed", 0, "random seed", False],
        ["-j", "--workers", 1, "worker processes", False],
    ]
)
POSITIONAL_ARGUMENTS = [
    # each row is a list with 3 elements: name, type, help
]


def main(**kwargs):
    """
    main function
    """
    return cli_main("lebesgue", **kwargs)


if __name__ == "__main__":
    sys.exit(
        main(
            **parse_commandline(
                OPTIONAL_ARGUMENTS, POSITIONAL_ARGUMENTS, DEFAULT_LOG_LEVEL
            )
        )
    )
