import sys

from hfroots.cli import main

sys.exit(main())
