"""Census configuration files."""
