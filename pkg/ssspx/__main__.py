import sys

from ssspx.cli import main

sys.exit(main())
