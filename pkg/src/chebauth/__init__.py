"""chebauth - Biometric remote authentication with Chebyshev-polynomial key agreement."""

__version__ = "0.1.0"
