"""Ancestor functions: total maps [n] -> [m] with [k] = {1, ..., k}.

A tile's ancestor function sends each step index of its target path to the
index of the source step it descends from; traces compose these maps.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class AncestorFunction:
    domain: int
    codomain: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.domain < 0 or self.codomain < 0:
            raise ValueError("sizes must be non-negative")
        if len(self.table) != self.domain:
            raise ValueError("table length must equal the domain size")
        for value in self.table:
            if not 1 <= value <= self.codomain:
                raise ValueError(f"table entry {value} outside 1..{self.codomain}")

    def __call__(self, j: int) -> int:
        if not 1 <= j <= self.domain:
            raise ValueError(f"index {j} outside 1..{self.domain}")
        return self.table[j - 1]

    def compose(self, inner: "AncestorFunction") -> "AncestorFunction":
        """self after inner: (self.compose(inner))(j) = self(inner(j))."""
        if inner.codomain != self.domain:
            raise ValueError("codomain of inner must equal domain of outer")
        return AncestorFunction(
            inner.domain, self.codomain, tuple(self(inner(j)) for j in range(1, inner.domain + 1))
        )

    def is_identity(self) -> bool:
        return self.domain == self.codomain and all(self(j) == j for j in range(1, self.domain + 1))

    @staticmethod
    def identity(n: int) -> "AncestorFunction":
        return AncestorFunction(n, n, tuple(range(1, n + 1)))

    @staticmethod
    def transposition() -> "AncestorFunction":
        return AncestorFunction(2, 2, (2, 1))
