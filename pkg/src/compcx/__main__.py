import sys

from compcx.cli import main

sys.exit(main())
