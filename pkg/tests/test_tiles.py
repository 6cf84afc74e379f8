import random

import pytest

import corpus
from permutile.core.ancestry import AncestorFunction
from permutile.core.errors import BrokenChain, EndpointMismatch, InvalidApplication
from permutile.core.tiles import (
    PermutationTile,
    StandardisationTrace,
    apply_tile,
    cells_equal,
    compose_trace_ancestor,
    is_reversible_trace,
    step_ancestor,
)

DUP = r"(\x. x x) ((\z. z) f)"
ERASE = r"(\x. g) ((\z. z) f)"
SQUARE = r"((\z. z) f) ((\z. z) g)"


def dup_tile(system):
    term = system.parse_term(DUP)
    occ = system.parse_occurrence
    return system.tile_for(term, occ("R"), occ("ε"))


def erase_tile(system):
    term = system.parse_term(ERASE)
    occ = system.parse_occurrence
    return system.tile_for(term, occ("R"), occ("ε"))


def swap_tile(system):
    term = system.parse_term(SQUARE)
    occ = system.parse_occurrence
    return system.tile_for(term, occ("L"), occ("R"))


def test_duplication_tile_shape(lambda_system):
    tile = dup_tile(lambda_system)
    assert tile is not None and not tile.reversible
    assert [o.render() for o in tile.source.script()] == ["R", "ε"]
    assert [o.render() for o in tile.target.script()] == ["ε", "L", "R"]
    assert tile.ancestor.table == (2, 1, 1)


def test_erasure_tile_shape(lambda_system):
    tile = erase_tile(lambda_system)
    assert tile is not None and not tile.reversible
    assert [o.render() for o in tile.target.script()] == ["ε"]
    assert tile.ancestor.table == (2,)


def test_swap_tile_shape(lambda_system):
    tile = swap_tile(lambda_system)
    assert tile is not None and tile.reversible
    assert tile.ancestor.table == (2, 1)
    inverse = tile.inverse()
    assert inverse.source == tile.target and inverse.target == tile.source


def test_tile_endpoints_agree(lambda_system):
    for tile in (dup_tile(lambda_system), erase_tile(lambda_system), swap_tile(lambda_system)):
        assert tile.source.source == tile.target.source
        assert tile.source.target == tile.target.target


def test_reversible_tile_requires_transposition(lambda_system):
    tile = swap_tile(lambda_system)
    with pytest.raises(Exception):
        PermutationTile(tile.source, tile.target, AncestorFunction(2, 2, (1, 2)), True)


def test_step_ancestor_erasure_whole_path(lambda_system):
    term = lambda_system.parse_term(ERASE)
    path = lambda_system.path_from_script(term, "[R, ε]")
    application = apply_tile(path, 1, erase_tile(lambda_system))
    psi = step_ancestor(application)
    assert (psi.domain, psi.codomain) == (1, 2)
    assert psi.table == (2,)


def test_step_ancestor_duplication_whole_path(lambda_system):
    term = lambda_system.parse_term(DUP)
    path = lambda_system.path_from_script(term, "[R, ε]")
    application = apply_tile(path, 1, dup_tile(lambda_system))
    psi = step_ancestor(application)
    assert psi.table == (2, 1, 1)
    assert [o.render() for o in application.after.script()] == ["ε", "L", "R"]


def test_step_ancestor_duplication_at_k2(lambda_system):
    # embed the duplication window after an unrelated first step
    term = lambda_system.parse_term(r"((\w. w) g) ((\x. x x) ((\z. z) f))")
    path = lambda_system.path_from_script(term, "[L, R.R, R]")
    reduct = path.steps[0].target
    occ = lambda_system.parse_occurrence
    tile = lambda_system.tile_for(reduct, occ("R.R"), occ("R"))
    assert tile is not None
    application = apply_tile(path, 2, tile)
    psi = step_ancestor(application)
    assert (psi.domain, psi.codomain) == (4, 3)
    assert psi.table == (1, 3, 2, 2)


def test_apply_tile_rejects_mismatched_window(lambda_system):
    term = lambda_system.parse_term(DUP)
    standard = lambda_system.path_from_script(term, "[ε, L]")
    with pytest.raises(InvalidApplication):
        apply_tile(standard, 1, dup_tile(lambda_system))


def test_empty_trace_identity(lambda_system):
    term = lambda_system.parse_term(DUP)
    path = lambda_system.path_from_script(term, "[ε, L, R]")
    trace = StandardisationTrace(path, ())
    assert trace.end == path
    assert trace.composite_ancestor.is_identity()
    assert trace.composite_ancestor.domain == 3


def test_swap_then_inverse_is_identity_cell(lambda_system):
    term = lambda_system.parse_term(SQUARE)
    path = lambda_system.path_from_script(term, "[L, R]")
    tile = swap_tile(lambda_system)
    first = apply_tile(path, 1, tile)
    second = apply_tile(first.after, 1, tile.inverse())
    trace = StandardisationTrace(path, (first, second))
    assert trace.end == path
    assert trace.composite_ancestor.is_identity()
    assert cells_equal(trace, StandardisationTrace(path, ()))


def test_single_duplication_trace_ancestor(lambda_system):
    term = lambda_system.parse_term(DUP)
    path = lambda_system.path_from_script(term, "[R, ε]")
    trace = StandardisationTrace(path, (apply_tile(path, 1, dup_tile(lambda_system)),))
    assert trace.composite_ancestor.table == (2, 1, 1)


def test_cells_equal_rejects_endpoint_mismatch(lambda_system):
    term = lambda_system.parse_term(SQUARE)
    path = lambda_system.path_from_script(term, "[L, R]")
    tile = swap_tile(lambda_system)
    moved = StandardisationTrace(path, (apply_tile(path, 1, tile),))
    with pytest.raises(EndpointMismatch):
        cells_equal(moved, StandardisationTrace(path, ()))


def test_cells_equal_distinguishes_ancestors(lambda_system):
    # same endpoints, different ancestor tables: the data model permits a
    # non-transposition table on an irreversible tile shape
    tile = swap_tile(lambda_system)
    odd = PermutationTile(tile.source, tile.target, AncestorFunction(2, 2, (1, 2)), False)
    path = tile.source
    t1 = StandardisationTrace(path, (apply_tile(path, 1, tile),))
    t2 = StandardisationTrace(path, (apply_tile(path, 1, odd),))
    assert t1.end == t2.end
    assert not cells_equal(t1, t2)


def test_broken_chain_rejected(lambda_system):
    term = lambda_system.parse_term(SQUARE)
    path = lambda_system.path_from_script(term, "[L, R]")
    tile = swap_tile(lambda_system)
    first = apply_tile(path, 1, tile)
    with pytest.raises(BrokenChain):
        StandardisationTrace(path, (first, first))


def test_is_reversible_trace(lambda_system):
    square = lambda_system.parse_term(SQUARE)
    square_path = lambda_system.path_from_script(square, "[L, R]")
    assert is_reversible_trace(StandardisationTrace(square_path, ()))
    swap = apply_tile(square_path, 1, swap_tile(lambda_system))
    assert is_reversible_trace(StandardisationTrace(square_path, (swap,)))
    dup_term = lambda_system.parse_term(DUP)
    dup_path = lambda_system.path_from_script(dup_term, "[R, ε]")
    dup = apply_tile(dup_path, 1, dup_tile(lambda_system))
    assert not is_reversible_trace(StandardisationTrace(dup_path, (dup,)))


def test_then_composes_traces(lambda_system):
    term = lambda_system.parse_term(DUP)
    path = lambda_system.path_from_script(term, "[R, ε]")
    dup = apply_tile(path, 1, dup_tile(lambda_system))
    trace1 = StandardisationTrace(path, (dup,))
    reduct = dup.after
    occ = lambda_system.parse_occurrence
    swap = lambda_system.tile_for(reduct.steps[0].target, occ("L"), occ("R"))
    assert swap is not None
    application = apply_tile(reduct, 2, swap)
    trace2 = StandardisationTrace(reduct, (application,))
    whole = trace1.then(trace2)
    assert whole.start == path and whole.end == application.after
    expected = trace1.composite_ancestor.compose(trace2.composite_ancestor)
    assert whole.composite_ancestor.table == expected.table


def test_trace_functoriality_on_random_walks(lambda_engine):
    rng = random.Random(5)
    paths = corpus.random_lambda_paths(seed=11, count=40, max_len=4, min_len=2)
    checked = 0
    for path in paths:
        applications = []
        current = path
        for _ in range(4):
            sites = lambda_engine.sites(current)
            if not sites:
                break
            site = rng.choice(sites)
            application = apply_tile(current, site.index, site.tile)
            applications.append(application)
            current = application.after
        if len(applications) < 2:
            continue
        cut = rng.randrange(1, len(applications))
        t1 = StandardisationTrace(path, tuple(applications[:cut]))
        t2 = StandardisationTrace(t1.end, tuple(applications[cut:]))
        whole = StandardisationTrace(path, tuple(applications))
        expected = t1.composite_ancestor.compose(t2.composite_ancestor)
        assert whole.composite_ancestor.table == expected.table
        assert compose_trace_ancestor(whole).table == whole.composite_ancestor.table
        checked += 1
    assert checked >= 8
