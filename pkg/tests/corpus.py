"""Seeded corpora shared by the unit and acceptance suites."""

from __future__ import annotations

import itertools
import random

from permutile.lam.system import LambdaSystem
from permutile.trs.system import TrsSystem

POR_RULES = "por(T,x) -> T ; por(x,T) -> T ; a -> T ; b -> T\n@head T"

FREE_NAMES = ("f", "g", "h")


def make_por_system(policy="symmetric"):
    return TrsSystem.from_text(POR_RULES, policy=policy)


def por_terms(max_depth):
    """All ground terms over {por/2, a, b, T} up to the given depth."""
    layers = [[("a",), ("b",), ("T",)]]
    for _ in range(max_depth):
        prev = [t for layer in layers for t in layer]
        layers.append([("por", s, t) for s in prev for t in prev])
    seen = []
    for layer in layers:
        for t in layer:
            if t not in seen:
                seen.append(t)
    return seen


def random_lambda_term(rng: random.Random, max_size=12):
    """A random term biased toward visible beta redexes."""

    def gen(budget, binders):
        if budget <= 1 or (binders and rng.random() < 0.3):
            if binders and rng.random() < 0.7:
                return ("var", rng.randrange(binders)), 1
            return ("free", rng.choice(FREE_NAMES)), 1
        roll = rng.random()
        if roll < 0.35:
            body, used = gen(budget - 1, binders + 1)
            return ("lam", body), used + 1
        left_budget = rng.randint(1, budget - 2) if budget > 3 else 1
        if roll < 0.75:
            # force a redex shape
            body, used_f = gen(max(left_budget - 1, 1), binders + 1)
            fun, used_f = ("lam", body), used_f + 1
        else:
            fun, used_f = gen(left_budget, binders)
        arg, used_a = gen(max(budget - 1 - used_f, 1), binders)
        return ("app", fun, arg), used_f + used_a + 1

    term, _ = gen(max_size, 0)
    return term


def random_lambda_terms(seed, count, max_size=12, require_redex=False):
    from permutile.lam.terms import node_count

    rng = random.Random(seed)
    system = LambdaSystem()
    out = []
    while len(out) < count:
        term = random_lambda_term(rng, max_size)
        if node_count(term) > max_size:
            continue
        if require_redex and not system.redexes(term):
            continue
        out.append(term)
    return out


def random_path(rng: random.Random, system, term, max_len):
    occs = []
    current = term
    for _ in range(max_len):
        redexes = system.redexes(current)
        if not redexes:
            break
        choice = rng.choice(redexes)
        occs.append(choice)
        current = system.contract(current, choice)
    return system.path(term, occs)


def random_lambda_paths(seed, count, max_len=6, max_size=12, min_len=1):
    from permutile.lam.terms import node_count

    rng = random.Random(seed)
    system = LambdaSystem()
    out = []
    while len(out) < count:
        term = random_lambda_term(rng, max_size)
        if node_count(term) > max_size:
            continue
        path = random_path(rng, system, term, rng.randint(min_len, max_len))
        if len(path) < min_len:
            continue
        out.append(path)
    return out


def all_paths(system, term, max_len):
    """Every rewriting path from term of length <= max_len, incl. empty."""
    out = [system.path(term, ())]
    frontier = [((), term)]
    for _ in range(max_len):
        next_frontier = []
        for occs, current in frontier:
            for occ in system.redexes(current):
                ext = occs + (occ,)
                next_frontier.append((ext, system.contract(current, occ)))
        for occs, _ in next_frontier:
            out.append(system.path(term, occs))
        frontier = next_frontier
    return out


def por_paths(max_len, max_source_depth=1):
    """All paths up to max_len from all por sources up to the given depth."""
    system = make_por_system()
    paths = []
    for term in por_terms(max_source_depth):
        paths.extend(all_paths(system, term, max_len))
    return system, paths


def cofinal_pairs(paths):
    """All unordered pairs of distinct coinitial, cofinal paths."""
    buckets = {}
    for path in paths:
        buckets.setdefault((path.source, path.target), []).append(path)
    for group in buckets.values():
        yield from itertools.combinations(group, 2)


def perturb(rng: random.Random, engine, path, moves=3):
    """A random tile-move walk away from path; stays in its equivalence
    class by construction."""
    current = path
    for _ in range(moves):
        options = engine._moves(current)
        if not options:
            break
        current = rng.choice(options).after
    return current


OMEGA_TEXT = r"(\x. x x) (\x. x x)"


def lambda_loop_pairs(system):
    """Coinitial/cofinal but inequivalent pairs built on looping terms."""
    omega = system.parse_term(OMEGA_TEXT)
    p1 = system.path_from_script(omega, "[ε]")
    p2 = system.path_from_script(omega, "[ε, ε]")
    p3 = system.path_from_script(omega, "[ε, ε, ε]")
    pairs = [(p1, p2), (p2, p3), (p1, p3)]
    ctx = system.parse_term(r"(\x. x x) (\y. y y)")
    q1 = system.path_from_script(ctx, "[ε]")
    q2 = system.path_from_script(ctx, "[ε, ε]")
    pairs.append((q1, q2))
    return pairs


def head_normalizing_terms(seed, count, max_head_steps=6, max_size=12):
    """Random terms whose head reduction reaches a hnf within the bound."""
    import oracles

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        term = random_lambda_term(rng, max_size)
        steps = oracles.head_reduction_positions(term, max_head_steps)
        if steps is None:
            continue
        out.append((term, steps))
    return out
