"""Cospans, level graphs, properads and their symmetric monoidal envelopes."""

from .cospan import Cospan
from .envelope import Envelope, EnvMorphism
from .finset import FinMap
from .levelgraph import LevelGraph
from .properad import Decoration, Op, Properad
from .slcc import SLCC, Report, envelope_as_slcc, extract_properad

__all__ = [
    "Cospan", "Decoration", "EnvMorphism", "Envelope", "FinMap", "LevelGraph", "Op",
    "Properad", "Report", "SLCC", "envelope_as_slcc", "extract_properad",
]
