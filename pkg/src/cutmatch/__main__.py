import sys

from cutmatch.cli import main

sys.exit(main())
