import sys

from fundep.cli import main

sys.exit(main())
