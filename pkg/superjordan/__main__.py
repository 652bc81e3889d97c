import sys

from superjordan.cli import main

sys.exit(main())
