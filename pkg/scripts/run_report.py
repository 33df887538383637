#!/usr/bin/env python3
"""Run the full fixture report; exits 0 when nothing fails, 2 otherwise.

Extra arguments are passed through, so `scripts/run_report.py --json
--out report.json` works the same as the installed entry point.
"""

import sys

from virlog.cli import main

if __name__ == "__main__":
    sys.exit(main(["report", *sys.argv[1:]]))
