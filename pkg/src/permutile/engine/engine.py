"""The standardisation rewriting system over paths.

Driving idea: permutation tiles rewrite length-2 windows of a path;
reversible tiles generate finite equivalence classes, and a path is
standard when nothing in its class admits an irreversible tile. The
engine explores these classes breadth-first, normalizes to canonical
standard form, and decides permutation equivalence by comparing the
canonical forms. All searches are memoized per engine instance.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..core.errors import ClosureBudgetExceeded, EndpointMismatch, FuelExhausted, NotStandard
from ..core.paths import RewritingPath
from ..core.system import RewritingSystem
from ..core.tiles import (
    PermutationTile,
    StandardisationTrace,
    TileApplication,
    apply_tile,
)

DEFAULT_FUEL = 10_000
DEFAULT_CLOSURE_BUDGET = 4_096


@dataclass(frozen=True)
class TileSite:
    """A window of a path where a tile applies."""

    path: RewritingPath
    index: int
    tile: PermutationTile


@dataclass(frozen=True)
class CanonicalStandardForm:
    path: RewritingPath
    witness: StandardisationTrace


@dataclass(frozen=True)
class ZigzagMove:
    direction: str  # "forward" rewrites source->target, "backward" the reverse
    index: int
    tile: PermutationTile
    before: RewritingPath
    after: RewritingPath


@dataclass(frozen=True)
class ZigzagResult:
    moves: tuple[ZigzagMove, ...] | None
    exhaustive: bool

    @property
    def found(self) -> bool:
        return self.moves is not None


@dataclass(frozen=True)
class StatespaceEdge:
    source: int
    target: int
    index: int
    reversible: bool


@dataclass(frozen=True)
class Statespace:
    nodes: tuple[RewritingPath, ...]
    edges: tuple[StatespaceEdge, ...]


class _TermTiles:
    """Tile index for one source term: by source window and by target script."""

    __slots__ = ("tiles", "by_source", "by_target")

    def __init__(self, tiles):
        self.tiles = tiles
        self.by_source = {}
        self.by_target = {}
        for tile in tiles:
            self.by_source[tile.source.script()] = tile
            self.by_target.setdefault(tile.target.script(), []).append(tile)


class Engine:
    def __init__(
        self,
        system: RewritingSystem,
        fuel: int = DEFAULT_FUEL,
        closure_budget: int = DEFAULT_CLOSURE_BUDGET,
    ):
        self.system = system
        self.fuel = fuel
        self.closure_budget = closure_budget
        self._term_tiles: dict = {}
        self._closures: dict = {}
        self._standard: dict = {}
        self._canonical: dict = {}

    # --- tile sites -----------------------------------------------------

    def term_tiles(self, term) -> _TermTiles:
        cached = self._term_tiles.get(term)
        if cached is None:
            cached = self._term_tiles[term] = _TermTiles(tuple(self.system.tiles_at(term)))
        return cached

    def sites(self, path: RewritingPath) -> list[TileSite]:
        out = []
        for k in range(1, len(path)):
            step = path.steps[k - 1]
            window = (step.redex, path.steps[k].redex)
            tile = self.term_tiles(step.source).by_source.get(window)
            if tile is not None:
                out.append(TileSite(path, k, tile))
        return out

    @staticmethod
    def apply_site(site: TileSite) -> TileApplication:
        return apply_tile(site.path, site.index, site.tile)

    # --- reversible closure ----------------------------------------------

    def path_key(self, path: RewritingPath) -> tuple:
        return tuple(self.system.occurrence_sort_key(step.redex) for step in path.steps)

    def reversible_closure(self, path: RewritingPath) -> dict:
        """All reversibly-reachable paths, mapped to a witness application list."""
        cached = self._closures.get(path)
        if cached is not None:
            return cached
        closure = {path: ()}
        queue = [path]
        while queue:
            current = queue.pop(0)
            for site in self.sites(current):
                if not site.tile.reversible:
                    continue
                application = self.apply_site(site)
                if application.after not in closure:
                    if len(closure) >= self.closure_budget:
                        raise ClosureBudgetExceeded(
                            f"reversible class exceeds {self.closure_budget} paths"
                        )
                    closure[application.after] = closure[current] + (application,)
                    queue.append(application.after)
        self._closures[path] = closure
        return closure

    # --- standardness ----------------------------------------------------

    def is_standard(self, path: RewritingPath) -> bool:
        cached = self._standard.get(path)
        if cached is not None:
            return cached
        closure = self.reversible_closure(path)
        verdict = not any(
            not site.tile.reversible for member in closure for site in self.sites(member)
        )
        for member in closure:
            self._standard[member] = verdict
        return verdict

    def standardize(self, path: RewritingPath) -> CanonicalStandardForm:
        cached = self._canonical.get(path)
        if cached is not None:
            return cached
        budget = self.fuel
        applications: list[TileApplication] = []
        current = path
        while True:
            closure = self.reversible_closure(current)
            best = None
            for member, moves in closure.items():
                for site in self.sites(member):
                    if site.tile.reversible:
                        continue
                    candidate = (site.index, self.path_key(member))
                    if best is None or candidate < best[0]:
                        best = (candidate, member, site)
            if best is None:
                for member in closure:
                    self._standard[member] = True
                break
            _, member, site = best
            repositioning = closure[member]
            budget -= len(repositioning) + 1
            if budget < 0:
                raise FuelExhausted(f"standardisation exceeded {self.fuel} tile applications")
            applications.extend(repositioning)
            application = self.apply_site(site)
            applications.append(application)
            current = application.after
        closure = self.reversible_closure(current)
        canonical = min(closure, key=self.path_key)
        budget -= len(closure[canonical])
        if budget < 0:
            raise FuelExhausted(f"standardisation exceeded {self.fuel} tile applications")
        applications.extend(closure[canonical])
        result = CanonicalStandardForm(canonical, StandardisationTrace(path, tuple(applications)))
        self._canonical[path] = result
        return result

    def canonicalize(self, path: RewritingPath) -> RewritingPath:
        if not self.is_standard(path):
            raise NotStandard("canonicalize requires a standard path")
        return min(self.reversible_closure(path), key=self.path_key)

    # --- equivalence ------------------------------------------------------

    def equivalent(self, f: RewritingPath, g: RewritingPath) -> bool:
        if f.source != g.source or f.target != g.target:
            raise EndpointMismatch("paths must be coinitial and cofinal")
        return self.standardize(f).path == self.standardize(g).path

    def _moves(self, path: RewritingPath) -> list[ZigzagMove]:
        out = []
        for site in self.sites(path):
            application = self.apply_site(site)
            out.append(ZigzagMove("forward", site.index, site.tile, path, application.after))
        steps = path.steps
        for k in range(1, len(path) + 1):
            term = steps[k - 1].source
            index = self.term_tiles(term).by_target
            for script, tiles in index.items():
                n = len(script)
                if k - 1 + n > len(steps):
                    continue
                if tuple(s.redex for s in steps[k - 1 : k - 1 + n]) != script:
                    continue
                for tile in tiles:
                    after = RewritingPath(
                        path.source, steps[: k - 1] + tile.source.steps + steps[k - 1 + n :]
                    )
                    out.append(ZigzagMove("backward", k, tile, path, after))
        return out

    def zigzag_witness(
        self, f: RewritingPath, g: RewritingPath, bound: int, node_budget: int = 100_000
    ) -> ZigzagResult:
        """Independent equivalence oracle: bidirectional tile-move search.

        Absent with exhaustive=True means the whole component was explored
        and g is genuinely unreachable; exhaustive=False is inconclusive.
        """
        if f.source != g.source or f.target != g.target:
            raise EndpointMismatch("paths must be coinitial and cofinal")
        if f == g:
            return ZigzagResult((), True)
        parents: dict = {f: None}
        frontier = [f]
        depth = 0
        truncated = False
        while frontier and depth < bound:
            depth += 1
            next_frontier = []
            for current in frontier:
                for move in self._moves(current):
                    if move.after in parents:
                        continue
                    if len(parents) >= node_budget:
                        truncated = True
                        break
                    parents[move.after] = (current, move)
                    if move.after == g:
                        moves = []
                        node = g
                        while parents[node] is not None:
                            node, move = parents[node]
                            moves.append(move)
                        return ZigzagResult(tuple(reversed(moves)), True)
                    next_frontier.append(move.after)
                if truncated:
                    break
            if truncated:
                break
            frontier = next_frontier
        exhaustive = not frontier and not truncated
        return ZigzagResult(None, exhaustive)

    # --- the derivation space ----------------------------------------------

    def statespace(self, path: RewritingPath) -> Statespace:
        order: dict[RewritingPath, int] = {path: 0}
        queue = [path]
        while queue:
            current = queue.pop(0)
            neighbours = [m.after for m in self._moves(current)]
            neighbours.sort(key=lambda p: (len(p), self.path_key(p)))
            for neighbour in neighbours:
                if neighbour not in order:
                    if len(order) >= self.closure_budget:
                        raise ClosureBudgetExceeded(
                            f"derivation space exceeds {self.closure_budget} paths"
                        )
                    order[neighbour] = len(order)
                    queue.append(neighbour)
        nodes = tuple(order)
        edges = set()
        for node, idx in order.items():
            for site in self.sites(node):
                after = self.apply_site(site).after
                edges.add(StatespaceEdge(idx, order[after], site.index, site.tile.reversible))
        ordered_edges = tuple(
            sorted(edges, key=lambda e: (e.source, e.index, e.target, e.reversible))
        )
        return Statespace(nodes, ordered_edges)
