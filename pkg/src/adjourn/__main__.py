import sys

from adjourn.cli import main

sys.exit(main())
