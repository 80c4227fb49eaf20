"""Command-line interface for chebauth."""
