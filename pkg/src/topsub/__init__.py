"""Topological subsystem codes: constructions, decoders and threshold simulations."""

__version__ = "0.1.0"
