"""The λ-calculus packaged as a rewriting system instance."""

from __future__ import annotations

from ..core.errors import InvalidOccurrence, NotARedex, SamePosition
from ..core.paths import Occurrence
from ..core.system import OrientationPolicy, RewritingSystem
from . import terms

BETA = "beta"


class LambdaSystem(RewritingSystem):
    """β-reduction over de Bruijn terms; tiles follow the chosen policy.

    Head-values are the head normal forms, which makes the external paths
    of the analysis layer the head-rewriting paths.
    """

    name = "lambda"

    def parse_term(self, text):
        return terms.parse(text)

    def render_term(self, term):
        return terms.render(term)

    def redexes(self, term):
        return tuple(Occurrence(p, BETA) for p in terms.beta_redex_positions(term))

    def contract(self, term, occ: Occurrence):
        if occ.rule != BETA:
            raise NotARedex(f"unknown rule {occ.rule!r} for the λ-calculus")
        return terms.contract_at(term, occ.position)

    def residuals(self, term, contracted: Occurrence, other: Occurrence):
        if contracted == other:
            raise SamePosition("residuals need two distinct redexes")
        positions = terms.residual_positions(term, contracted.position, other.position)
        return tuple(Occurrence(p, BETA) for p in positions)

    def is_head_value(self, term) -> bool:
        return terms.is_head_normal(term)

    def head_value_label(self) -> str:
        return "head normal forms"

    def head_redex(self, term) -> Occurrence | None:
        position = terms.head_redex_position(term)
        return None if position is None else Occurrence(position, BETA)

    def parse_occurrence(self, token: str) -> Occurrence:
        if token.endswith("@" + BETA):
            token = token[: -len("@" + BETA)]
        return Occurrence(self._position_from_token(token, terms.SELECTORS), BETA)

    def occurrence_sort_key(self, occ: Occurrence) -> tuple:
        return (occ.position, 0)
