import sys

from qdag.cli import main

sys.exit(main())
