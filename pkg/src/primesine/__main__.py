import sys

from primesine.cli import main

sys.exit(main())
