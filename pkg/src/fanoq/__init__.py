"""Decorated quivers of Fano polygons, their mutations, and polygon reconstruction."""

__version__ = "0.1.0"
