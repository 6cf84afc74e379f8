"""Permutation-tile rewriting: paths, standardisation, factorisation, cones."""

from .analysis import Analyzer, Factorisation, HeadCone
from .core.ancestry import AncestorFunction
from .core.paths import Occurrence, RedexStep, RewritingPath, compose_paths, empty_path
from .core.system import CONFLICT, OrientationPolicy, RewritingSystem
from .core.tiles import (
    PermutationTile,
    StandardisationTrace,
    TileApplication,
    apply_tile,
    cells_equal,
    compose_trace_ancestor,
    is_reversible_trace,
    step_ancestor,
)
from .engine.engine import CanonicalStandardForm, Engine, TileSite
from .lam.system import LambdaSystem
from .trs.system import TrsSystem

__version__ = "0.1.0"

__all__ = [
    "AncestorFunction",
    "Analyzer",
    "CONFLICT",
    "CanonicalStandardForm",
    "Engine",
    "Factorisation",
    "HeadCone",
    "LambdaSystem",
    "Occurrence",
    "OrientationPolicy",
    "PermutationTile",
    "RedexStep",
    "RewritingPath",
    "RewritingSystem",
    "StandardisationTrace",
    "TileApplication",
    "TileSite",
    "TrsSystem",
    "apply_tile",
    "cells_equal",
    "compose_paths",
    "compose_trace_ancestor",
    "empty_path",
    "is_reversible_trace",
    "step_ancestor",
]
