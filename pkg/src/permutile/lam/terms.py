"""λ-terms in de Bruijn form with positional navigation.

Terms are nested tuples: ('var', k) for a bound variable (de Bruijn index),
('free', name) for a free variable, ('lam', body), ('app', fun, arg).
During residual computation a tracked β-redex is marked by retagging its
App node as 'mapp'; marks ride through substitution and are stripped at
the end. Positions are tuples over the selectors L (App function),
R (App argument), B (Lam body).
"""

from __future__ import annotations

import re

from ..core.errors import NotARedex, ParseError, SamePosition

APP_TAGS = ("app", "mapp")

SELECTORS = "LRB"


# --- construction and navigation ---------------------------------------


def is_redex_node(t) -> bool:
    return t[0] in APP_TAGS and t[1][0] == "lam"


def child(t, selector: str):
    tag = t[0]
    if selector == "L" and tag in APP_TAGS:
        return t[1]
    if selector == "R" and tag in APP_TAGS:
        return t[2]
    if selector == "B" and tag == "lam":
        return t[1]
    raise NotARedex(f"no child {selector!r} under a {tag!r} node")


def subterm_at(t, position: tuple):
    for selector in position:
        t = child(t, selector)
    return t


def replace_at(t, position: tuple, new):
    if not position:
        return new
    selector, rest = position[0], position[1:]
    tag = t[0]
    if selector == "L" and tag in APP_TAGS:
        return (tag, replace_at(t[1], rest, new), t[2])
    if selector == "R" and tag in APP_TAGS:
        return (tag, t[1], replace_at(t[2], rest, new))
    if selector == "B" and tag == "lam":
        return ("lam", replace_at(t[1], rest, new))
    raise NotARedex(f"position does not address a subterm")


def node_count(t) -> int:
    tag = t[0]
    if tag in ("var", "free"):
        return 1
    if tag == "lam":
        return 1 + node_count(t[1])
    return 1 + node_count(t[1]) + node_count(t[2])


def free_names(t) -> set:
    tag = t[0]
    if tag == "free":
        return {t[1]}
    if tag == "var":
        return set()
    if tag == "lam":
        return free_names(t[1])
    return free_names(t[1]) | free_names(t[2])


# --- substitution -------------------------------------------------------


def shift(t, amount: int, cutoff: int = 0):
    tag = t[0]
    if tag == "var":
        return ("var", t[1] + amount) if t[1] >= cutoff else t
    if tag == "free":
        return t
    if tag == "lam":
        return ("lam", shift(t[1], amount, cutoff + 1))
    return (tag, shift(t[1], amount, cutoff), shift(t[2], amount, cutoff))


def substitute(body, argument, depth: int = 0):
    """body with de Bruijn index `depth` replaced by `argument`, adjusting indices."""
    tag = body[0]
    if tag == "var":
        k = body[1]
        if k == depth:
            return shift(argument, depth)
        return ("var", k - 1) if k > depth else body
    if tag == "free":
        return body
    if tag == "lam":
        return ("lam", substitute(body[1], argument, depth + 1))
    return (tag, substitute(body[1], argument, depth), substitute(body[2], argument, depth))


# --- redexes and contraction -------------------------------------------


def beta_redex_positions(t) -> tuple[tuple, ...]:
    """Positions of all β-redexes, in leftmost-outermost document order."""
    out = []

    def walk(node, position):
        tag = node[0]
        if tag in APP_TAGS:
            if node[1][0] == "lam":
                out.append(position)
            walk(node[1], position + ("L",))
            walk(node[2], position + ("R",))
        elif tag == "lam":
            walk(node[1], position + ("B",))

    walk(t, ())
    return tuple(out)


def contract_at(t, position: tuple):
    try:
        node = subterm_at(t, position)
    except NotARedex:
        raise NotARedex(f"no subterm at the given position") from None
    if not is_redex_node(node):
        raise NotARedex("position does not address a β-redex")
    return replace_at(t, position, substitute(node[1][1], node[2]))


def strip_marks(t):
    tag = t[0]
    if tag in ("var", "free"):
        return t
    if tag == "lam":
        return ("lam", strip_marks(t[1]))
    return ("app", strip_marks(t[1]), strip_marks(t[2]))


def residual_positions(t, contracted: tuple, other: tuple) -> tuple[tuple, ...]:
    """Positions of `other`'s residuals after contracting `contracted`.

    Computed by marking: retag `other`'s App node, contract, and read off
    the surviving marked redexes in document order.
    """
    if contracted == other:
        raise SamePosition("residuals need two distinct redexes")
    node = subterm_at(t, other)
    if not is_redex_node(node):
        raise NotARedex("tracked position is not a β-redex")
    marked = replace_at(t, other, ("mapp", node[1], node[2]))
    reduced = contract_at(marked, contracted)
    out = []

    def walk(node, position):
        tag = node[0]
        if tag in APP_TAGS:
            if tag == "mapp" and node[1][0] == "lam":
                out.append(position)
            walk(node[1], position + ("L",))
            walk(node[2], position + ("R",))
        elif tag == "lam":
            walk(node[1], position + ("B",))

    walk(reduced, ())
    return tuple(out)


# --- head reduction -----------------------------------------------------


def head_redex_position(t):
    """Position of the head redex, or None for a head normal form."""
    position = []
    while t[0] == "lam":
        position.append("B")
        t = t[1]
    while t[0] in APP_TAGS:
        if t[1][0] == "lam":
            return tuple(position)
        position.append("L")
        t = t[1]
    return None


def is_head_normal(t) -> bool:
    return head_redex_position(t) is None


# --- concrete syntax ----------------------------------------------------

_TOKEN = re.compile(r"\s*(\\|λ|\.|\(|\)|[A-Za-z_][A-Za-z0-9_']*|\S)")


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            break
        tok = m.group(1)
        if tok not in "\\.()" and tok != "λ" and not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok):
            raise ParseError(f"unexpected character {tok!r}", m.start(1))
        tokens.append((tok, m.start(1)))
        i = m.end()
    return tokens


def parse(text: str):
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of input", len(text))
        tok, where = tokens[pos]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}", where)
        pos += 1
        return tok, where

    def parse_term(binders):
        if peek() in ("\\", "λ"):
            take()
            names = []
            while peek() is not None and peek() not in ".":
                tok, where = take()
                if tok in "()\\" or tok == "λ":
                    raise ParseError("expected a variable name", where)
                names.append(tok)
            take(".")
            if not names:
                raise ParseError("abstraction binds no variable", tokens[pos - 1][1])
            body = parse_term(list(reversed(names)) + binders)
            for _ in names:
                body = ("lam", body)
            return body
        return parse_apps(binders)

    def parse_apps(binders):
        term = parse_atom(binders)
        while peek() is not None and peek() not in (")", ".", None):
            term = ("app", term, parse_atom(binders))
        return term

    def parse_atom(binders):
        tok = peek()
        if tok == "(":
            take()
            term = parse_term(binders)
            take(")")
            return term
        if tok in ("\\", "λ"):
            return parse_term(binders)
        if tok is None or tok in (")", "."):
            where = tokens[pos][1] if pos < len(tokens) else len(text)
            raise ParseError("expected a term", where)
        name, _ = take()
        if name in binders:
            return ("var", binders.index(name))
        return ("free", name)

    if not tokens:
        raise ParseError("empty input", 0)
    term = parse_term([])
    if pos != len(tokens):
        raise ParseError(f"trailing input {tokens[pos][0]!r}", tokens[pos][1])
    return term


_BINDER_BASES = ("x", "y", "z", "w", "v", "u")


def _binder_name(depth: int, avoid: set) -> str:
    base = _BINDER_BASES[depth % len(_BINDER_BASES)]
    n = depth // len(_BINDER_BASES)
    while True:
        name = base + (str(n) if n else "")
        if name not in avoid:
            return name
        n += 1


def render(t) -> str:
    avoid = free_names(t)

    def go(node, binders, depth):
        tag = node[0]
        if tag == "var":
            return binders[node[1]]
        if tag == "free":
            return node[1]
        if tag == "lam":
            name = _binder_name(depth, avoid | set(binders))
            return f"\\{name}. " + go(node[1], [name] + binders, depth + 1)
        fun, arg = node[1], node[2]
        fun_text = go(fun, binders, depth)
        if fun[0] == "lam":
            fun_text = f"({fun_text})"
        arg_text = go(arg, binders, depth)
        if arg[0] in APP_TAGS or arg[0] == "lam":
            arg_text = f"({arg_text})"
        return f"{fun_text} {arg_text}"

    return go(t, [], 0)
