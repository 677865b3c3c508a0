"""Oriented cohomology of flag varieties: push-pull and Demazure bases, structure constants."""

__version__ = "0.1.0"
