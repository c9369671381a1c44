"""Drone wireless-link security simulator and audit toolkit."""

import sys

from ._core import *  # noqa: F401,F403
from ._core import cli_main

__version__ = "0.1.0"


def main() -> None:
    """Console entry point mirroring the native CLI."""
    raise SystemExit(cli_main(sys.argv[1:]))
