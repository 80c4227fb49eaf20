"""Logging, biometric files and evaluation helpers."""
