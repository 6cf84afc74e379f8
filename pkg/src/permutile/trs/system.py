"""First-order term rewriting packaged as a rewriting system instance.

Overlapping redexes (critical pairs) have no residuals: `residuals`
returns CONFLICT, so no tile connects the two contractions and their
paths land in genuinely distinct permutation-equivalence components.
"""

from __future__ import annotations

from ..core.errors import NotARedex, ParseError, SamePosition
from ..core.paths import Occurrence
from ..core.system import CONFLICT, OrientationPolicy, RewritingSystem, is_position_prefix
from . import terms
from .terms import TrsDefinition, is_var


class TrsSystem(RewritingSystem):
    name = "trs"

    def __init__(
        self,
        definition: TrsDefinition,
        policy: OrientationPolicy = OrientationPolicy.SYMMETRIC,
        head_values=None,
    ):
        super().__init__(policy)
        self.definition = definition
        self._rules_by_id = {rule.id: rule for rule in definition.rules}
        self._rule_index = {rule.id: i for i, rule in enumerate(definition.rules)}
        self._head_values = set(definition.head_values if head_values is None else head_values)

    @staticmethod
    def from_text(
        text: str, policy: OrientationPolicy = OrientationPolicy.SYMMETRIC, head_values=None
    ) -> "TrsSystem":
        return TrsSystem(terms.parse_system(text), policy, head_values)

    def rule(self, rule_id: str) -> terms.Rule:
        rule = self._rules_by_id.get(rule_id)
        if rule is None:
            raise NotARedex(f"unknown rule {rule_id!r}")
        return rule

    def parse_term(self, text):
        return terms.parse_ground_term(text, self.definition.signature)

    def render_term(self, term):
        return terms.render(term)

    def redexes(self, term):
        out = []
        for position in terms.all_positions(term):
            sub = terms.subterm_at(term, position)
            for rule in self.definition.rules:
                if terms.match(rule.lhs, sub) is not None:
                    out.append(Occurrence(position, rule.id))
        return tuple(out)

    def contract(self, term, occ: Occurrence):
        rule = self.rule(occ.rule)
        sub = terms.subterm_at(term, occ.position)
        binding = terms.match(rule.lhs, sub)
        if binding is None:
            raise NotARedex(f"rule {occ.rule} does not match at {occ.render()}")
        return terms.replace_at(term, occ.position, terms.instantiate(rule.rhs, binding))

    def residuals(self, term, contracted: Occurrence, other: Occurrence):
        if contracted == other:
            raise SamePosition("residuals need two distinct redexes")
        cpos, opos = contracted.position, other.position
        if not is_position_prefix(cpos, opos) and not is_position_prefix(opos, cpos):
            return (other,)
        if is_position_prefix(cpos, opos):
            # contracted is the outer redex (or the positions coincide)
            slot = self._variable_slot(self.rule(contracted.rule).lhs, opos[len(cpos) :])
            if slot is None:
                return CONFLICT
            name, rest = slot
            rule = self.rule(contracted.rule)
            positions = [
                cpos + occurrence + rest for occurrence in rule.rhs_var_positions.get(name, ())
            ]
            return tuple(Occurrence(p, other.rule) for p in sorted(positions))
        # contracted sits under the outer redex `other`
        slot = self._variable_slot(self.rule(other.rule).lhs, cpos[len(opos) :])
        if slot is None:
            return CONFLICT
        return (other,)

    @staticmethod
    def _variable_slot(lhs, relative: tuple):
        """(variable, remaining path) when `relative` enters a variable slot
        of the pattern; None when it stays inside the rigid part (overlap)."""
        node = lhs
        for i, step in enumerate(relative):
            if is_var(node):
                return (node[1], relative[i:])
            node = node[step]
        return (node[1], ()) if is_var(node) else None

    def is_head_value(self, term) -> bool:
        return term in self._head_values

    def head_value_label(self) -> str:
        return "{" + ", ".join(sorted(terms.render(v) for v in self._head_values)) + "}"

    def parse_occurrence(self, token: str) -> Occurrence:
        if "@" not in token:
            raise ParseError(f"a rewrite occurrence needs position@rule, got {token!r}")
        position_text, rule_id = token.split("@", 1)
        if rule_id not in self._rules_by_id:
            raise ParseError(f"unknown rule {rule_id!r}")
        position_text = position_text.strip()
        if position_text in ("ε", ""):
            return Occurrence((), rule_id)
        try:
            position = tuple(int(part) for part in position_text.split("."))
        except ValueError:
            raise ParseError(f"bad position {position_text!r}") from None
        if any(part < 1 for part in position):
            raise ParseError(f"bad position {position_text!r}")
        return Occurrence(position, rule_id)

    def occurrence_sort_key(self, occ: Occurrence) -> tuple:
        return (occ.position, self._rule_index.get(occ.rule, len(self._rule_index)))
