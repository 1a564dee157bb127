"""Endotype classification for real forms of Lie superalgebras."""

from .scalars import GaussianRational, G
from .algebra_model import build_algebra, BorelShuffle, Weight, Root
from .real_forms import InvolutionSpec, make_involution

__all__ = [
    "GaussianRational", "G", "build_algebra", "BorelShuffle", "Weight",
    "Root", "InvolutionSpec", "make_involution",
]
