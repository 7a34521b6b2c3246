import sys

from suppvar.cli import main

sys.exit(main())
