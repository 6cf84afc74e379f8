"""Rewriting paths: composable sequences of redex contraction steps.

Terms are opaque values supplied by an instance; a path records its source
term and the chain of steps. Equality and hashing go through the source
term and the step scripts only, since contraction is deterministic and the
intermediate terms are recomputable.
"""

from __future__ import annotations

from typing import Any, NamedTuple

from .errors import NonComposable


def render_position(position: tuple) -> str:
    if not position:
        return "ε"
    return ".".join(str(c) for c in position)


class Occurrence(NamedTuple):
    """A redex occurrence: a tree position plus the rule applied there."""

    position: tuple
    rule: str

    def render(self) -> str:
        text = render_position(self.position)
        if self.rule and self.rule != "beta":
            text += "@" + self.rule
        return text


class RedexStep(NamedTuple):
    source: Any
    redex: Occurrence
    target: Any

    def render(self) -> str:
        return self.redex.render()


class RewritingPath:
    """A finite composable sequence of redex steps starting at `source`.

    The empty path at a term is the identity morphism on that term.
    """

    __slots__ = ("source", "steps", "_hash")

    def __init__(self, source: Any, steps: tuple[RedexStep, ...] = ()):
        prev = source
        for step in steps:
            if step.source != prev:
                raise NonComposable("steps do not chain")
            prev = step.target
        self.source = source
        self.steps = steps
        self._hash: int | None = None

    @property
    def target(self) -> Any:
        return self.steps[-1].target if self.steps else self.source

    def __len__(self) -> int:
        return len(self.steps)

    def script(self) -> tuple[Occurrence, ...]:
        return tuple(step.redex for step in self.steps)

    def prefix(self, length: int) -> "RewritingPath":
        return RewritingPath(self.source, self.steps[:length])

    def suffix(self, start: int) -> "RewritingPath":
        src = self.steps[start - 1].target if start > 0 else self.source
        return RewritingPath(src, self.steps[start:])

    def step_at(self, k: int) -> RedexStep:
        """1-based step access, matching the index conventions of tiles."""
        return self.steps[k - 1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RewritingPath):
            return NotImplemented
        return self.source == other.source and self.script() == other.script()

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.source, self.script()))
        return self._hash

    def render(self) -> str:
        return "[" + ", ".join(step.render() for step in self.steps) + "]"

    def __repr__(self) -> str:
        return f"RewritingPath({self.source!r}, {self.render()})"


def empty_path(term: Any) -> RewritingPath:
    return RewritingPath(term)


def compose_paths(p: RewritingPath, q: RewritingPath) -> RewritingPath:
    if p.target != q.source:
        raise NonComposable("target of first path differs from source of second")
    return RewritingPath(p.source, p.steps + q.steps)
