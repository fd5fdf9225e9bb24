"""Module entry point: ``python -m kuranishi``."""

from .cli import main

if __name__ == "__main__":
    raise SystemExit(main())
