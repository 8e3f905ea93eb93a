import sys

from sdfnoc.cli.main import main

sys.exit(main())
