"""Allow ``python -m bcalc``."""

from .cli import main

if __name__ == "__main__":
    main()
