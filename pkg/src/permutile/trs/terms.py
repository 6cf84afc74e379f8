"""First-order terms, rules, and rule-file parsing.

Ground terms are tuples (symbol, child, ...); pattern variables appear
only inside rules, as ('?', name). The rule file format is line-oriented:
`lhs -> rhs` rules separated by newlines or `;`, `#` comments, and an
optional `@head t1, t2, ...` directive naming the head-values. A token is
a variable when it is a single lowercase letter that is never used as a
constant (never applied, never a rule head, never a head-value).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..core.errors import NonLeftLinear, NotARedex, ParseError, UnknownSymbol

VAR = "?"

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def is_var(t) -> bool:
    return t[0] == VAR


def pattern_vars(t) -> list:
    """Variable names in document order, with repetitions."""
    if is_var(t):
        return [t[1]]
    out = []
    for child in t[1:]:
        out.extend(pattern_vars(child))
    return out


def subterm_at(t, position: tuple):
    for index in position:
        if is_var(t) or index < 1 or index > len(t) - 1:
            raise NotARedex("position does not address a subterm")
        t = t[index]
    return t


def replace_at(t, position: tuple, new):
    if not position:
        return new
    index = position[0]
    if is_var(t) or index < 1 or index > len(t) - 1:
        raise NotARedex("position does not address a subterm")
    return t[:index] + (replace_at(t[index], position[1:], new),) + t[index + 1 :]


def all_positions(t) -> list[tuple]:
    out = []

    def walk(node, position):
        out.append(position)
        if not is_var(node):
            for i, child in enumerate(node[1:], start=1):
                walk(child, position + (i,))

    walk(t, ())
    return out


def match(pattern, term) -> dict | None:
    binding = {}

    def go(p, t):
        if is_var(p):
            if p[1] in binding and binding[p[1]] != t:
                return False
            binding[p[1]] = t
            return True
        if p[0] != t[0] or len(p) != len(t):
            return False
        return all(go(pc, tc) for pc, tc in zip(p[1:], t[1:]))

    return binding if go(pattern, term) else None


def instantiate(pattern, binding: dict):
    if is_var(pattern):
        return binding[pattern[1]]
    return pattern[:1] + tuple(instantiate(c, binding) for c in pattern[1:])


@dataclass(frozen=True)
class Rule:
    id: str
    lhs: tuple
    rhs: tuple
    rhs_var_positions: dict = field(init=False)

    def __post_init__(self):
        occurrences: dict = {}
        for position in all_positions(self.rhs):
            node = subterm_at(self.rhs, position)
            if is_var(node):
                occurrences.setdefault(node[1], []).append(position)
        object.__setattr__(self, "rhs_var_positions", occurrences)

    def render(self) -> str:
        return f"{render(self.lhs)} -> {render(self.rhs)}"


@dataclass(frozen=True)
class TrsDefinition:
    rules: tuple[Rule, ...]
    signature: dict
    head_values: tuple
    source_text: str


def render(t) -> str:
    if is_var(t):
        return t[1]
    if len(t) == 1:
        return t[0]
    return f"{t[0]}({', '.join(render(c) for c in t[1:])})"


# --- parsing ------------------------------------------------------------


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if text.startswith("->", i):
            tokens.append(("->", i))
            i += 2
            continue
        if c in "(),":
            tokens.append((c, i))
            i += 1
            continue
        m = _IDENT.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {c!r}", i)
        tokens.append((m.group(0), i))
        i = m.end()
    return tokens


class _TermParser:
    def __init__(self, text: str, variables: set):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.text = text
        self.variables = variables

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        if self.pos >= len(self.tokens):
            raise ParseError("unexpected end of input", len(self.text))
        tok, where = self.tokens[self.pos]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}", where)
        self.pos += 1
        return tok, where

    def term(self):
        name, where = self.take()
        if not _IDENT.fullmatch(name):
            raise ParseError(f"expected a symbol, found {name!r}", where)
        if self.peek() != "(":
            if name in self.variables:
                return (VAR, name)
            return (name,)
        self.take("(")
        children = [self.term()]
        while self.peek() == ",":
            self.take(",")
            children.append(self.term())
        self.take(")")
        return (name,) + tuple(children)

    def done(self):
        if self.pos != len(self.tokens):
            tok, where = self.tokens[self.pos]
            raise ParseError(f"trailing input {tok!r}", where)


def _strip_comments(text: str) -> list[str]:
    pieces = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        pieces.extend(part.strip() for part in line.split(";"))
    return [p for p in pieces if p]


def _applied_and_head_symbols(pieces: list[str]) -> set:
    """First pass: every identifier that cannot be a rule variable."""
    constants = set()
    for piece in pieces:
        body = piece[len("@head") :] if piece.startswith("@head") else piece
        tokens = _tokenize(body.replace("->", " "))
        for idx, (tok, _) in enumerate(tokens):
            if not _IDENT.fullmatch(tok):
                continue
            applied = idx + 1 < len(tokens) and tokens[idx + 1][0] == "("
            if applied or not re.fullmatch(r"[a-z]", tok):
                constants.add(tok)
        if piece.startswith("@head"):
            constants.update(
                tok for tok, _ in _tokenize(body) if _IDENT.fullmatch(tok)
            )
    return constants


def parse_system(text: str) -> TrsDefinition:
    pieces = _strip_comments(text)
    rule_texts = [p for p in pieces if not p.startswith("@head")]
    head_texts = [p[len("@head") :].strip() for p in pieces if p.startswith("@head")]

    constants = _applied_and_head_symbols(pieces)
    # rule heads are constants, even when they are single lowercase letters
    for piece in rule_texts:
        if "->" not in piece:
            raise ParseError(f"rule without '->': {piece!r}")
        lhs_text = piece.split("->", 1)[0]
        lhs_tokens = _tokenize(lhs_text)
        if lhs_tokens and _IDENT.fullmatch(lhs_tokens[0][0]):
            constants.add(lhs_tokens[0][0])

    def variables_in(piece: str) -> set:
        return {
            tok
            for tok, _ in _tokenize(piece.replace("->", " "))
            if re.fullmatch(r"[a-z]", tok) and tok not in constants
        }

    signature: dict = {}

    def record(term):
        if is_var(term):
            return
        arity = len(term) - 1
        known = signature.setdefault(term[0], arity)
        if known != arity:
            raise ParseError(f"symbol {term[0]!r} used with arities {known} and {arity}")
        for child in term[1:]:
            record(child)

    rules = []
    for piece in rule_texts:
        variables = variables_in(piece)
        lhs_text, rhs_text = piece.split("->", 1)
        lhs_parser = _TermParser(lhs_text, variables)
        lhs = lhs_parser.term()
        lhs_parser.done()
        rhs_parser = _TermParser(rhs_text, variables)
        rhs = rhs_parser.term()
        rhs_parser.done()
        if is_var(lhs):
            raise ParseError(f"rule left-hand side is a bare variable: {piece!r}")
        lhs_vars = pattern_vars(lhs)
        if len(lhs_vars) != len(set(lhs_vars)):
            raise NonLeftLinear(f"variable repeated on the left-hand side: {piece!r}")
        missing = set(pattern_vars(rhs)) - set(lhs_vars)
        if missing:
            raise ParseError(
                f"right-hand side uses variables {sorted(missing)} absent from the left: {piece!r}"
            )
        record(lhs)
        record(rhs)
        rules.append(Rule(f"r{len(rules) + 1}", lhs, rhs))

    head_values = []
    for head_text in head_texts:
        if not head_text:
            continue
        parser = _TermParser(head_text, set())
        head_values.append(parser.term())
        while parser.peek() == ",":
            parser.take(",")
            head_values.append(parser.term())
        parser.done()
    for value in head_values:
        _check_known(value, signature)

    return TrsDefinition(tuple(rules), signature, tuple(head_values), text)


def _check_known(term, signature: dict):
    if is_var(term):
        return
    if term[0] not in signature:
        raise UnknownSymbol(f"symbol {term[0]!r} does not occur in any rule")
    if signature[term[0]] != len(term) - 1:
        raise ParseError(f"symbol {term[0]!r} expects {signature[term[0]]} arguments")
    for child in term[1:]:
        _check_known(child, signature)


def parse_ground_term(text: str, signature: dict):
    parser = _TermParser(text, set())
    term = parser.term()
    parser.done()
    _check_known(term, signature)
    return term
