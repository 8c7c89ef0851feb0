# run.py - command line entrypoint
# Usage: python run.py solve graph.gr --source 1
import sys

from ssspx.cli import main

if __name__ == '__main__':
    sys.exit(main())
