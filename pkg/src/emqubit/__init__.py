"""Electromagnetic qubit simulator: mode signals, gates, field topology and
pseudo-quantum nets."""

__version__ = "0.1.0"
