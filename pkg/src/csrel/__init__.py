"""Coherent-state relations: amplitudes, hidden-variable sampling, squeezing and Bell states."""

__version__ = "0.1.0"
