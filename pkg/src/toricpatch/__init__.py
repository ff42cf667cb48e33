"""Exact toric polar linear systems, plane Cremona tests, and toric Bezier patches."""

__version__ = "0.1.0"
