from __future__ import annotations

import logging
import sys


def configure_logging(*, verbose: bool) -> None:
    """
    Route all diagnostics to stderr so reports written to stdout stay machine-readable.
    """

    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    # numba's compiler chatter drowns the numeric logs at DEBUG
    logging.getLogger("numba").setLevel(logging.WARNING)
