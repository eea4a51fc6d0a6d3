"""Allow `python -m abelkit` as an alias for the console script."""

from .cli import entry

entry()
