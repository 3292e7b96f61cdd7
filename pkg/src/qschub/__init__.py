"""Small quantum cohomology at q = 1: spectra, trace formulas and conjugation of Schubert classes."""

from .spaces import HomSpace, SpaceParseError, UnsupportedSpace

__all__ = ["HomSpace", "SpaceParseError", "UnsupportedSpace"]
__version__ = "0.1.0"
