import sys

from qmds.cli import main

sys.exit(main())
