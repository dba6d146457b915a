"""Allow ``python -m eltlab`` to run the command line interface."""

from .cli import entry

entry()
