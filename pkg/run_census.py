#!/usr/bin/env python3
"""
Wrapper script for running the census CLI from the project root.

Usage:
    python run_census.py <command> [options]
"""

import sys
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

if __name__ == "__main__":
    from scripts.run_census import main
    sys.exit(main())
