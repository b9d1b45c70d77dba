import sys

from hspsim.cli import main

sys.exit(main())
