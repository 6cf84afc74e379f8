import pytest
from hypothesis import given, strategies as st

from permutile.core.ancestry import AncestorFunction


def test_identity():
    f = AncestorFunction.identity(3)
    assert f.domain == 3 and f.codomain == 3
    assert [f(j) for j in (1, 2, 3)] == [1, 2, 3]
    assert f.is_identity()


def test_transposition():
    t = AncestorFunction.transposition()
    assert (t(1), t(2)) == (2, 1)
    assert not t.is_identity()
    assert t.compose(t).is_identity()


def test_call_is_one_based():
    f = AncestorFunction(domain=2, codomain=2, table=(2, 1))
    with pytest.raises(Exception):
        f(0)
    with pytest.raises(Exception):
        f(3)


def test_table_entries_validated():
    with pytest.raises(Exception):
        AncestorFunction(domain=1, codomain=2, table=(3,))
    with pytest.raises(Exception):
        AncestorFunction(domain=2, codomain=2, table=(1,))


def test_compose_checks_chaining():
    outer = AncestorFunction(domain=2, codomain=3, table=(3, 1))
    inner = AncestorFunction(domain=1, codomain=3, table=(2,))
    with pytest.raises(Exception):
        outer.compose(inner)


def test_compose_is_outer_after_inner():
    # outer: [2] -> [3], inner: [1] -> [2]; composite: [1] -> [3]
    inner = AncestorFunction(domain=1, codomain=2, table=(2,))
    outer = AncestorFunction(domain=2, codomain=3, table=(3, 1))
    composite = outer.compose(inner)
    assert composite.domain == 1 and composite.codomain == 3
    assert composite(1) == outer(inner(1)) == 1


@st.composite
def ancestor_functions(draw, domain=None, codomain=None):
    m = codomain if codomain is not None else draw(st.integers(1, 5))
    n = domain if domain is not None else draw(st.integers(0, 5))
    if m == 0:
        n = 0
    table = tuple(draw(st.integers(1, m)) for _ in range(n))
    return AncestorFunction(domain=n, codomain=m, table=table)


@given(st.data())
def test_compose_associative(data):
    f = data.draw(ancestor_functions())
    g = data.draw(ancestor_functions(codomain=f.domain))
    h = data.draw(ancestor_functions(codomain=g.domain))
    left = f.compose(g).compose(h)
    right = f.compose(g.compose(h))
    assert left.table == right.table


@given(st.data())
def test_identity_is_neutral(data):
    f = data.draw(ancestor_functions())
    assert f.compose(AncestorFunction.identity(f.domain)).table == f.table
    assert AncestorFunction.identity(f.codomain).compose(f).table == f.table
