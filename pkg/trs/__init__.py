"""Twisted Reed-Solomon code toolkit"""

__version__ = "1.0.0"
