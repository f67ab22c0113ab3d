"""diploidlab: a desk-scale laboratory for diploid genome assembly theory."""

from ._kernels import IS_COMPILED
from .genome import (
    ALPHABET,
    CircularSequence,
    DiploidGenome,
    Read,
    ReadSet,
    gaps,
    overlap,
    switch_equivalent,
    union,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHABET",
    "CircularSequence",
    "DiploidGenome",
    "IS_COMPILED",
    "Read",
    "ReadSet",
    "gaps",
    "overlap",
    "switch_equivalent",
    "union",
    "__version__",
]
