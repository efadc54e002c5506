"""
Test package for the homology census.

Usage:
    # Run all tests
    pytest tests

    # Include acceptance-scale checks
    HOMOLOGY_CENSUS_FULL=1 pytest tests
"""
