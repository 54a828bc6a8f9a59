#!/usr/bin/env python3
"""
cknsym - Symmetry and symmetry breaking for CKN and weighted log-Hardy extremals
Main entry point for the application.
"""

import sys

from cknsym.cli import run


if __name__ == '__main__':
    try:
        sys.exit(run())
    except KeyboardInterrupt:
        print("\nInterrupted", file=sys.stderr)
        sys.exit(130)
