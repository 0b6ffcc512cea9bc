#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Binary expansion of a Walsh index: order, low bit, gap and variation
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
)
POSITIONAL_ARGUMENTS = [
    # each row is a list with 3 elements: name, type, help
    ["n", int, "positive Walsh index"],
]


def main(**kwargs):
    """
    main function
    """
    return cli_main("index", **kwargs)


if __name__ == "__main__":
    sys.exit(
        main(
            **parse_commandline(
                OPTIONAL_ARGUMENTS, POSITIONAL_ARGUMENTS, DEFAULT_LOG_LEVEL
            )
        )
    )
