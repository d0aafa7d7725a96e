import sys

from k3clifford.cli import main

sys.exit(main())
