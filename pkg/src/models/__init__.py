"""Data models for field elements, matrices and census reports."""
