"""Allows running the command line as python -m astopo."""
import sys

from .cli import main

sys.exit(main())
