"""Permutation tiles and the 2-dimensional paths built from them.

A tile swaps the order of two contractions: its source is a length-2 path
v.u' and its target a path u.h (length n >= 0) with the same endpoints,
plus an ancestor function [n] -> [2] saying which source step each target
step descends from.  Applying a tile inside a longer path yields a
TileApplication; a chained sequence of applications is a
StandardisationTrace, whose composite ancestor function maps the indices
of the final path back to the indices of the initial one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ancestry import AncestorFunction
from .errors import BrokenChain, EndpointMismatch, InvalidApplication
from .paths import RewritingPath


@dataclass(frozen=True)
class PermutationTile:
    source: RewritingPath
    target: RewritingPath
    ancestor: AncestorFunction
    reversible: bool

    def __post_init__(self):
        if len(self.source) != 2:
            raise ValueError("tile source must have length exactly 2")
        if self.source.source != self.target.source or self.source.target != self.target.target:
            raise ValueError("tile paths must be coinitial and cofinal")
        if self.ancestor.domain != len(self.target) or self.ancestor.codomain != 2:
            raise ValueError("ancestor must map [len(target)] -> [2]")
        if self.reversible:
            if len(self.target) != 2 or self.ancestor.table != (2, 1):
                raise ValueError("a reversible tile swaps two steps with transposed ancestry")

    def inverse(self) -> "PermutationTile":
        if not self.reversible:
            raise ValueError("only reversible tiles have an inverse")
        return PermutationTile(self.target, self.source, AncestorFunction.transposition(), True)


@dataclass(frozen=True)
class TileApplication:
    before: RewritingPath
    index: int  # 1-based position of the rewritten window
    tile: PermutationTile
    after: RewritingPath


def apply_tile(before: RewritingPath, index: int, tile: PermutationTile) -> TileApplication:
    """Rewrite the length-2 window at `index` with the tile's target path."""
    k = index
    if not 1 <= k <= len(before) - 1:
        raise InvalidApplication(f"no length-2 window at index {k}")
    if before.steps[k - 1 : k + 1] != tile.source.steps:
        raise InvalidApplication(f"window at index {k} does not match the tile source")
    after = RewritingPath(
        before.source, before.steps[: k - 1] + tile.target.steps + before.steps[k + 1 :]
    )
    return TileApplication(before, k, tile, after)


def step_ancestor(application: TileApplication) -> AncestorFunction:
    """Ancestor function [len(after)] -> [len(before)] of one application."""
    k = application.index
    n = len(application.tile.target)
    phi = application.tile.ancestor
    before_len = len(application.before)
    table = []
    for j in range(1, before_len - 2 + n + 1):
        if j < k:
            table.append(j)
        elif j < k + n:
            table.append(k - 1 + phi(j - k + 1))
        else:
            table.append(j - n + 2)
    return AncestorFunction(before_len - 2 + n, before_len, tuple(table))


@dataclass(frozen=True)
class StandardisationTrace:
    start: RewritingPath
    applications: tuple[TileApplication, ...]
    end: RewritingPath = field(init=False)
    composite_ancestor: AncestorFunction = field(init=False)

    def __post_init__(self):
        prev = self.start
        for app in self.applications:
            if app.before != prev:
                raise BrokenChain("trace applications do not chain")
            prev = app.after
        object.__setattr__(self, "end", prev)
        anc = AncestorFunction.identity(len(self.start))
        for app in self.applications:
            anc = anc.compose(step_ancestor(app))
        object.__setattr__(self, "composite_ancestor", anc)

    def then(self, other: "StandardisationTrace") -> "StandardisationTrace":
        if other.start != self.end:
            raise BrokenChain("second trace does not start at the end of the first")
        return StandardisationTrace(self.start, self.applications + other.applications)


def compose_trace_ancestor(trace: StandardisationTrace) -> AncestorFunction:
    """Composite ancestor [len(end)] -> [len(start)], right-to-left over the applications."""
    return trace.composite_ancestor


def cells_equal(t1: StandardisationTrace, t2: StandardisationTrace) -> bool:
    """Whether two traces with the same endpoints define the same cell.

    Cell identity is exactly equality of composite ancestor functions.
    """
    if t1.start != t2.start or t1.end != t2.end:
        raise EndpointMismatch("traces do not share endpoints")
    return t1.composite_ancestor == t2.composite_ancestor


def is_reversible_trace(trace: StandardisationTrace) -> bool:
    return all(app.tile.reversible for app in trace.applications)
