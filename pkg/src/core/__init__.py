"""Core census modules: field arithmetic, linear algebra, counting, sampling and enumeration."""
