"""External/internal factorisation and stability cones.

Externality is the definitional check, bounded: a path is external when
composing it with every standard continuation up to the configured length
stays standard. Factorisation splits the canonical standard form at the
longest external prefix; cones collect the external parts of all bounded
value-reaching paths and keep only the minimal ones, so every value path
factors through exactly one branch.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core.errors import (
    EnumerationBudgetExceeded,
    FactorisationCheckFailed,
    MultipleFactorisations,
    NoFactorisation,
)
from .core.paths import RewritingPath, compose_paths, empty_path
from .core.tiles import StandardisationTrace
from .engine.engine import Engine

DEFAULT_EXT_BOUND = 3
DEFAULT_ENUM_BUDGET = 200_000


@dataclass(frozen=True)
class Factorisation:
    external: RewritingPath
    internal: RewritingPath
    canonical: RewritingPath
    witness: StandardisationTrace


@dataclass(frozen=True)
class HeadCone:
    apex: object
    branches: tuple[RewritingPath, ...]


class Analyzer:
    def __init__(
        self,
        engine: Engine,
        ext_bound: int = DEFAULT_EXT_BOUND,
        enum_budget: int = DEFAULT_ENUM_BUDGET,
    ):
        self.engine = engine
        self.system = engine.system
        self.ext_bound = ext_bound
        self.enum_budget = enum_budget
        self._continuations: dict = {}
        self._external: dict = {}

    # --- externality -------------------------------------------------------

    def standard_continuations(self, term, depth: int) -> tuple[RewritingPath, ...]:
        """All standard paths from `term` of length <= depth.

        Standardness is closed under prefixes, so non-standard extensions
        can be dropped as soon as they appear.
        """
        cached = self._continuations.get((term, depth))
        if cached is not None:
            return cached
        out = [empty_path(term)]
        frontier = out[:]
        for _ in range(depth):
            next_frontier = []
            for path in frontier:
                for occ in self.system.redexes(path.target):
                    extended = RewritingPath(
                        term, path.steps + (self.system.step(path.target, occ),)
                    )
                    if len(out) + len(next_frontier) >= self.enum_budget:
                        raise EnumerationBudgetExceeded(
                            f"continuation enumeration exceeds {self.enum_budget} paths"
                        )
                    if self.engine.is_standard(extended):
                        next_frontier.append(extended)
            out.extend(next_frontier)
            frontier = next_frontier
        result = tuple(out)
        self._continuations[(term, depth)] = result
        return result

    def is_external(self, e: RewritingPath, bound: int | None = None) -> bool:
        bound = self.ext_bound if bound is None else bound
        cached = self._external.get((e, bound))
        if cached is not None:
            return cached
        verdict = self._external_verdict(e, bound)
        self._external[(e, bound)] = verdict
        return verdict

    def _external_verdict(self, e: RewritingPath, bound: int) -> bool:
        if not self.engine.is_standard(e):
            return False
        for f in self.standard_continuations(e.target, bound):
            if len(f) and not self.engine.is_standard(compose_paths(e, f)):
                return False
        return True

    def is_internal(self, m: RewritingPath, bound: int | None = None) -> bool:
        if not len(m):
            return True
        g = self.engine.standardize(m).path
        prefixes = {
            member.prefix(length)
            for member in self.engine.reversible_closure(g)
            for length in range(1, len(member) + 1)
        }
        return not any(self.is_external(e, bound) for e in prefixes)

    # --- factorisation -------------------------------------------------------

    def factorize(self, f: RewritingPath, bound: int | None = None) -> Factorisation:
        form = self.engine.standardize(f)
        g = form.path
        members = sorted(self.engine.reversible_closure(g), key=self.engine.path_key)
        split = None
        for length in range(len(g), 0, -1):
            seen = set()
            for member in members:
                e = member.prefix(length)
                if e in seen:
                    continue
                seen.add(e)
                if self.is_external(e, bound):
                    split = (e, member.suffix(length))
                    break
            if split is not None:
                break
        if split is None:
            split = (empty_path(f.source), g)
        external, internal = split
        if not self.is_internal(internal, bound):
            raise FactorisationCheckFailed("internal part admits an external prefix")
        if not self.engine.equivalent(f, compose_paths(external, internal)):
            raise FactorisationCheckFailed("split is not equivalent to the input path")
        return Factorisation(external, internal, g, form.witness)

    # --- stability cones -------------------------------------------------------

    def paths_between(self, source, target, bound: int) -> list[RewritingPath]:
        return [p for p in self.enumerate_paths(source, bound) if p.target == target]

    def enumerate_paths(self, term, bound: int) -> list[RewritingPath]:
        """Every path from `term` of length <= bound, in deterministic order."""
        out = [empty_path(term)]
        frontier = out[:]
        for _ in range(bound):
            next_frontier = []
            for path in frontier:
                for occ in self.system.redexes(path.target):
                    if len(out) + len(next_frontier) >= self.enum_budget:
                        raise EnumerationBudgetExceeded(
                            f"path enumeration exceeds {self.enum_budget} paths"
                        )
                    next_frontier.append(
                        RewritingPath(term, path.steps + (self.system.step(path.target, occ),))
                    )
            out.extend(next_frontier)
            frontier = next_frontier
        return out

    def value_paths(self, term, bound: int) -> list[RewritingPath]:
        return [
            p for p in self.enumerate_paths(term, bound) if self.system.is_head_value(p.target)
        ]

    def stability_cone(self, term, bound: int, ext_bound: int | None = None) -> HeadCone:
        # equivalent value paths share their factorisation, so factor one
        # representative per permutation-equivalence class
        classes: dict[RewritingPath, RewritingPath] = {}
        for path in self.value_paths(term, bound):
            classes.setdefault(self.engine.standardize(path).path, path)
        externals: dict[RewritingPath, RewritingPath] = {}
        for canonical in classes:
            e = self.factorize(canonical, ext_bound).external
            externals.setdefault(self.engine.canonicalize(e), e)
        candidates = sorted(
            externals, key=lambda e: (len(e), self.engine.path_key(e))
        )
        branches: list[RewritingPath] = []
        for candidate in candidates:
            if not any(self._factors_through(candidate, kept, bound) for kept in branches):
                branches.append(candidate)
        return HeadCone(term, tuple(branches))

    def _factors_through(self, path: RewritingPath, base: RewritingPath, bound: int) -> bool:
        return any(
            self.engine.equivalent(path, compose_paths(base, h))
            for h in self.paths_between(base.target, path.target, bound)
        )

    def factor_through_cone(
        self, f: RewritingPath, cone: HeadCone, bound: int
    ) -> tuple[int, RewritingPath]:
        """The unique (1-based branch index, canonical h) with f ~ e_i . h."""
        hits = []
        for i, branch in enumerate(cone.branches, start=1):
            completions = [
                h
                for h in self.paths_between(branch.target, f.target, bound)
                if self.engine.equivalent(f, compose_paths(branch, h))
            ]
            if not completions:
                continue
            canonical = {self.engine.standardize(h).path for h in completions}
            if len(canonical) > 1:
                raise MultipleFactorisations(
                    f"branch {i} admits non-equivalent completions"
                )
            hits.append((i, next(iter(canonical))))
        if not hits:
            raise NoFactorisation("path factors through no cone branch")
        if len(hits) > 1:
            raise MultipleFactorisations(
                f"path factors through branches {[i for i, _ in hits]}"
            )
        return hits[0]
