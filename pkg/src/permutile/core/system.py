"""Instance interface: what a rewriting system must provide to the engine.

An instance supplies terms, redex enumeration, contraction, and residuals;
the generic machinery here derives steps, paths, and permutation tiles
from those. Residuals may report CONFLICT (overlapping redexes, i.e. a
critical pair), in which case the pair gets no tile at all.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from enum import Enum
from typing import Any

from .ancestry import AncestorFunction
from .errors import InstanceCoherenceError, InvalidOccurrence, ParseError, SamePosition
from .paths import Occurrence, RedexStep, RewritingPath
from .tiles import PermutationTile


class _Conflict:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "CONFLICT"

    def __bool__(self):
        return False


CONFLICT = _Conflict()


class OrientationPolicy(str, Enum):
    """How coinitial redex pairs are oriented into tiles.

    SYMMETRIC: disjoint pairs get mutually inverse reversible tiles; only
    nesting pairs are irreversible, outer before inner.
    LEFTMOST: every pair is irreversible, document-order-first step first.
    """

    SYMMETRIC = "symmetric"
    LEFTMOST = "leftmost"


def is_position_prefix(p: tuple, q: tuple) -> bool:
    return len(p) <= len(q) and q[: len(p)] == p


class RewritingSystem(ABC):
    """Terms-as-vertices view of one rewriting system, plus tile generation."""

    name: str = "abstract"

    def __init__(self, policy: OrientationPolicy = OrientationPolicy.SYMMETRIC):
        self.policy = policy

    # instance obligations -------------------------------------------------

    @abstractmethod
    def parse_term(self, text: str) -> Any: ...

    @abstractmethod
    def render_term(self, term: Any) -> str: ...

    @abstractmethod
    def redexes(self, term: Any) -> tuple[Occurrence, ...]:
        """All redex occurrences of the term, in document order."""

    @abstractmethod
    def contract(self, term: Any, occ: Occurrence) -> Any: ...

    @abstractmethod
    def residuals(self, term: Any, contracted: Occurrence, other: Occurrence):
        """Occurrences of `other`'s residuals in contract(term, contracted).

        Returns a tuple in document order, or CONFLICT for overlapping
        redexes. Raises SamePosition when contracted = other.
        """

    @abstractmethod
    def is_head_value(self, term: Any) -> bool: ...

    @abstractmethod
    def head_value_label(self) -> str: ...

    @abstractmethod
    def parse_occurrence(self, token: str) -> Occurrence: ...

    @abstractmethod
    def occurrence_sort_key(self, occ: Occurrence) -> tuple:
        """Document-order key; ties broken by rule declaration order."""

    # derived machinery ----------------------------------------------------

    def step(self, term: Any, occ: Occurrence) -> RedexStep:
        return RedexStep(term, occ, self.contract(term, occ))

    def path(self, term: Any, occs) -> RewritingPath:
        steps = []
        current = term
        for occ in occs:
            step = self.step(current, occ)
            steps.append(step)
            current = step.target
        return RewritingPath(term, tuple(steps))

    def parse_script(self, text: str) -> tuple[Occurrence, ...]:
        text = text.strip()
        if text.startswith("[") and text.endswith("]"):
            text = text[1:-1]
        if not text.strip():
            return ()
        return tuple(self.parse_occurrence(tok.strip()) for tok in text.split(","))

    def path_from_script(self, term: Any, script: str) -> RewritingPath:
        return self.path(term, self.parse_script(script))

    def _orientations(self, a: Occurrence, b: Occurrence):
        """Ordered (u, v, reversible) triples the policy admits for {a, b}."""
        if a.position == b.position:
            # same position, distinct rules: a root overlap; residuals
            # report CONFLICT, so no orientation can produce a tile
            return []
        a_in_b = is_position_prefix(b.position, a.position)
        b_in_a = is_position_prefix(a.position, b.position)
        if not a_in_b and not b_in_a:
            if self.policy is OrientationPolicy.SYMMETRIC:
                return [(a, b, True), (b, a, True)]
            first, second = sorted((a, b), key=self.occurrence_sort_key)
            return [(first, second, False)]
        outer, inner = (a, b) if b_in_a else (b, a)
        return [(outer, inner, False)]

    def pair_tiles(self, term: Any, a: Occurrence, b: Occurrence) -> list[PermutationTile]:
        """All policy-oriented tiles for one coinitial redex pair.

        Empty for critical pairs; two mutually inverse tiles for a
        symmetric disjoint pair; one irreversible tile otherwise.
        """
        if a == b:
            raise SamePosition("tile requested for a single redex")
        tiles = []
        for u, v, reversible in self._orientations(a, b):
            survivors = self.residuals(term, v, u)
            if survivors is CONFLICT:
                continue
            if len(survivors) != 1:
                raise InstanceCoherenceError(
                    f"policy-earlier redex {u.render()} should survive {v.render()} exactly once"
                )
            h = self.residuals(term, u, v)
            if h is CONFLICT:
                continue
            source = self.path(term, (v, survivors[0]))
            target = self.path(term, (u, *h))
            ancestor = AncestorFunction(1 + len(h), 2, (2,) + (1,) * len(h))
            tiles.append(PermutationTile(source, target, ancestor, reversible))
        return tiles

    def tiles_at(self, term: Any) -> list[PermutationTile]:
        """Every tile whose paths start at `term`, deterministically ordered."""
        occs = self.redexes(term)
        tiles = []
        for i in range(len(occs)):
            for j in range(i + 1, len(occs)):
                tiles.extend(self.pair_tiles(term, occs[i], occs[j]))
        return tiles

    def tile_for(self, term: Any, first: Occurrence, second_in_result: Occurrence):
        """Tile with source first·second_in_result, or None.

        None means second_in_result is not the residual of a coinitial
        redex the policy orders before `first` (including critical pairs
        and created redexes).
        """
        if first not in self.redexes(term):
            raise InvalidOccurrence(f"{first.render()} is not a redex of the term")
        reduct = self.contract(term, first)
        if second_in_result not in self.redexes(reduct):
            raise InvalidOccurrence(f"{second_in_result.render()} is not a redex of the reduct")
        window = (first, second_in_result)
        for tile in self.tiles_at(term):
            if tile.source.script() == window:
                return tile
        return None

    def render_script(self, path: RewritingPath) -> list[str]:
        return [step.redex.render() for step in path.steps]

    @staticmethod
    def _position_from_token(token: str, selectors: str | None = None) -> tuple:
        if token == "ε" or token == "":
            return ()
        parts = token.split(".") if "." in token else list(token)
        if selectors is not None:
            for part in parts:
                if part not in selectors:
                    raise ParseError(f"bad position selector {part!r} in {token!r}")
        return tuple(parts)
