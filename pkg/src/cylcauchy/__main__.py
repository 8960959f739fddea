"""Entry point for ``python -m cylcauchy``."""

import sys

from .cli import main

sys.exit(main())
