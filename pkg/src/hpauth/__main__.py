"""Module entry point: ``python -m hpauth`` behaves like the hpauth command."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
