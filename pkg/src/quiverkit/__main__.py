import sys

from quiverkit.cli import main

sys.exit(main())
