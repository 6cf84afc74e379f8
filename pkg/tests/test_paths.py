import pytest

from permutile.core.errors import NonComposable, ParseError
from permutile.core.paths import (
    Occurrence,
    RewritingPath,
    compose_paths,
    empty_path,
    render_position,
)


def test_render_position():
    assert render_position(()) == "ε"
    assert render_position(("R", "B", "L")) == "R.B.L"
    assert render_position((1, 2)) == "1.2"


def test_occurrence_render_hides_default_beta_rule():
    assert Occurrence(("L",), "beta").render() == "L"
    assert Occurrence((2,), "r1").render() == "2@r1"
    assert Occurrence((), "r2").render() == "ε@r2"


def test_empty_path(lambda_system):
    term = lambda_system.parse_term("x")
    path = empty_path(term)
    assert len(path) == 0
    assert path.source == path.target == term
    assert path.render() == "[]"


def test_path_chain_validation(lambda_system):
    t1 = lambda_system.parse_term(r"(\x. x) y")
    t2 = lambda_system.parse_term(r"(\x. x) z")
    step = lambda_system.step(t1, lambda_system.redexes(t1)[0])
    bad = lambda_system.step(t2, lambda_system.redexes(t2)[0])
    with pytest.raises(NonComposable):
        RewritingPath(t1, (step, bad))


def test_compose_lengths_add(lambda_system):
    term = lambda_system.parse_term(r"((\z. z) f) ((\z. z) g)")
    p = lambda_system.path_from_script(term, "[L, R]")
    q = empty_path(p.target)
    assert len(compose_paths(p, q)) == 2
    # compose with a real continuation
    term2 = lambda_system.parse_term(r"(\x. x x) ((\z. z) f)")
    p2 = lambda_system.path_from_script(term2, "[ε, L]")
    q2 = lambda_system.path_from_script(p2.target, "[R]")
    assert len(compose_paths(p2, q2)) == 3


def test_compose_identity_at_same_term(lambda_system):
    term = lambda_system.parse_term("f")
    e = empty_path(term)
    assert compose_paths(e, e) == e


def test_compose_rejects_mismatched_endpoints(lambda_system):
    p = empty_path(lambda_system.parse_term("f"))
    q = empty_path(lambda_system.parse_term("g"))
    with pytest.raises(NonComposable):
        compose_paths(p, q)


def test_prefix_suffix_roundtrip(lambda_system):
    term = lambda_system.parse_term(r"(\x. x x) ((\z. z) f)")
    path = lambda_system.path_from_script(term, "[ε, L, R]")
    for k in range(len(path) + 1):
        assert compose_paths(path.prefix(k), path.suffix(k)) == path
    assert path.prefix(0) == empty_path(term)
    assert path.suffix(len(path)) == empty_path(path.target)


def test_path_equality_is_source_and_script(lambda_system):
    term = lambda_system.parse_term(r"((\z. z) f) ((\z. z) g)")
    p = lambda_system.path_from_script(term, "[L, R]")
    q = lambda_system.path_from_script(term, "[L, R]")
    r = lambda_system.path_from_script(term, "[R, L]")
    assert p == q and hash(p) == hash(q)
    assert p != r


def test_render_script(lambda_system):
    term = lambda_system.parse_term(r"(\x. x x) ((\z. z) f)")
    path = lambda_system.path_from_script(term, "[R, ε]")
    assert path.render() == "[R, ε]"
    assert [occ.render() for occ in path.script()] == ["R", "ε"]


def test_parse_script_brackets_optional(lambda_system):
    term = lambda_system.parse_term(r"((\z. z) f) ((\z. z) g)")
    assert lambda_system.path_from_script(term, "L, R") == lambda_system.path_from_script(
        term, "[L, R]"
    )
    assert len(lambda_system.path_from_script(term, "[]")) == 0


def test_parse_script_rejects_bad_selector(lambda_system):
    term = lambda_system.parse_term(r"(\x. x) y")
    with pytest.raises(ParseError):
        lambda_system.path_from_script(term, "[Q]")
