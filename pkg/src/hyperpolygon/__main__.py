import sys

from hyperpolygon.cli import main

sys.exit(main())
