"""Finite loop toolkit: Cayley-table loops, envelopes, folders, and Bruck-loop structure."""

__version__ = "0.1.0"
