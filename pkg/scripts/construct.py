#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Realize a counterexample martingale and check its Walsh coefficients
"""

import logging
import sys
from walsh_paley.cli import (
    CONSTRUCTION_ARGUMENTS,
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
    + CONSTRUCTION_ARGUMENTS
)
POSITIONAL_ARGUMENTS = [
    # each row is a list with 3 elements: name, type, help
]


def main(**kwargs):
    """
    main function
    """
    return cli_main("construct", **kwargs)


if __name__ == "__main__":
    sys.exit(
        main(
            **parse_commandline(
                OPTIONAL_ARGUMENTS, POSITIONAL_ARGUMENTS, DEFAULT_LOG_LEVEL
            )
        )
    )
