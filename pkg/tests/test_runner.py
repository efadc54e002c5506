"""
Runs every census test suite without pytest.

Set HOMOLOGY_CENSUS_FULL=1 to enable the full-scale statistical and
enumeration checks.
"""

import sys
import unittest
from pathlib import Path

tests_dir = Path(__file__).parent
project_root = tests_dir.parent
sys.path.insert(0, str(project_root))

TEST_MODULES = [
    "test_finite_field",
    "test_linalg",
    "test_exact_count",
    "test_sampler",
    "test_oracle",
    "test_reports",
    "test_cli",
    "test_utils",
]


def run_all_tests():
    """Run all test suites."""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    for module in TEST_MODULES:
        suite.addTests(loader.discover(str(tests_dir), pattern=f"{module}.py", top_level_dir=str(project_root)))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == "__main__":
    success = run_all_tests()
    sys.exit(0 if success else 1)
