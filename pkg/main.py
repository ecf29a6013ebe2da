import os
import sys

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from src.cli.app import main

if __name__ == "__main__":
    sys.exit(main())
