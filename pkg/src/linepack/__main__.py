import sys

from linepack.cli import main

sys.exit(main())
