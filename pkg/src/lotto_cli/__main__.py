import sys

from src.lotto_cli.main import main

sys.exit(main())
