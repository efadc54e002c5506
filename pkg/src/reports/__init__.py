"""Report generation modules for JSON and CSV output."""
