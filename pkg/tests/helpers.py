"""Shared construction helpers for the test suite."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from tspdom.instance import Instance01, Weighting, all_edges, edge
from tspdom.matching import Matching


def random_weighting(n: int, rng: random.Random, lo: int = -64, hi: int = 64) -> Weighting:
    """Random rational weighting with values k/64, k in [lo, hi]."""
    weights = {}
    for u in range(n):
        for v in range(u + 1, n):
            k = rng.randint(lo, hi)
            if k:
                weights[(u, v)] = Fraction(k, 64)
    return Weighting(n, weights)


def random_instance(n: int, p: float, rng: random.Random) -> Instance01:
    return Instance01.from_edges(
        n, (e for e in all_edges(n) if rng.random() < p)
    )


def greedy_min_matching(w: Weighting) -> Matching:
    """Cheap optimal matching: scan edges by ascending weight, then id."""
    n = w.n
    ranked = sorted((w.value(u, v), u, v) for u in range(n) for v in range(u + 1, n))
    used: set[int] = set()
    chosen = []
    for _, u, v in ranked:
        if u not in used and v not in used:
            used.update((u, v))
            chosen.append((u, v))
            if len(chosen) == n // 2:
                break
    return Matching(frozenset(chosen))


def arbitrary_matching(n: int, rng: random.Random) -> Matching:
    vs = list(range(n))
    rng.shuffle(vs)
    return Matching(frozenset((vs[2 * i], vs[2 * i + 1]) for i in range(n // 2)))


def random_graph(n: int, p: float, rng: random.Random) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


def complement_instance(n: int, zero_edges) -> Instance01:
    """Instance whose zero-graph is exactly the given edge set."""
    zeros = {edge(u, v) for u, v in zero_edges}
    return Instance01.from_edges(n, (e for e in all_edges(n) if e not in zeros))


def enumerate_canonical_tours(n: int):
    """Pure-python canonical tour generator (independent of the numpy path)."""
    for perm in itertools.permutations(range(1, n)):
        if perm[0] < perm[-1]:
            yield (0,) + perm
