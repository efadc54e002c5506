"""Utility modules for logging, file handling, and validation."""
