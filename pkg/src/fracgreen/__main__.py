import sys

from fracgreen.cli import main

sys.exit(main())
