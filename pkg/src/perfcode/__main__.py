import sys

from perfcode.cli import main

sys.exit(main())
