import sys

from gkwb.cli import main

sys.exit(main())
