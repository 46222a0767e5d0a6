# app.py
import sys

from lctspin.cli import main

if __name__ == "__main__":
    sys.exit(main())
