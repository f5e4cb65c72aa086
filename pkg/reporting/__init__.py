"""Text rendering of command results."""
