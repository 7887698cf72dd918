"""Brute-force reference implementations for small inputs.

Everything here is exponential-time and exists to cross-check the real
algorithms in tests; nothing in this module is used by the solvers.
"""

from __future__ import annotations

import itertools
from typing import Collection, Iterable, Iterator

from .instance import Edge, Instance01, edge
from .matching import Matching


def brute_force_max_matching(n: int, edges: Iterable[tuple[int, int]]) -> Matching:
    """Exact maximum matching by branching on the lowest uncovered vertex."""
    if n > 16:
        raise ValueError(f"n={n} too large for exhaustive matching search")
    adj = [0] * n
    for u, v in edges:
        u, v = edge(u, v)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    memo: dict[int, tuple[int, frozenset[Edge]]] = {}

    def best(mask: int) -> tuple[int, frozenset[Edge]]:
        if mask == 0:
            return 0, frozenset()
        cached = memo.get(mask)
        if cached is not None:
            return cached
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        result = best(rest)
        nb = adj[v] & rest
        while nb:
            u = (nb & -nb).bit_length() - 1
            nb &= nb - 1
            size, chosen = best(rest & ~(1 << u))
            if size + 1 > result[0]:
                result = (size + 1, chosen | {(v, u)})
        memo[mask] = result
        return result

    _, chosen = best((1 << n) - 1)
    return Matching(frozenset(edge(u, v) for u, v in chosen))


def optimal_matchings(n: int) -> Iterator[frozenset[Edge]]:
    """All optimal matchings of K_n (every perfect pairing; n odd leaves one
    vertex uncovered). There are n!! / (something) of them; keep n <= 12."""
    if n > 12:
        raise ValueError(f"n={n} too large for matching enumeration")

    def rec(remaining: tuple[int, ...]) -> Iterator[frozenset[Edge]]:
        if len(remaining) < 2:
            yield frozenset()
            return
        first = remaining[0]
        for i in range(1, len(remaining)):
            rest = remaining[1:i] + remaining[i + 1 :]
            for sub in rec(rest):
                yield sub | {(first, remaining[i])}

    if n % 2 == 0:
        yield from rec(tuple(range(n)))
    else:
        for skipped in range(n):
            rest = tuple(v for v in range(n) if v != skipped)
            yield from rec(rest)


def brute_force_min_weight_optimal_matching(inst: Instance01) -> int:
    """Minimum weight over all optimal matchings, by full enumeration."""
    best = inst.n
    for m in optimal_matchings(inst.n):
        best = min(best, sum(1 for e in m if e in inst.one_edges))
    return best


def brute_force_max_double_matching(
    bip_edges: Iterable[tuple[int, int]],
    a_side: Collection[int],
    b_side: Collection[int],
) -> int:
    """Maximum edge count over all double matchings, by branching over the
    b-side (each b-vertex picks one a-neighbour with spare capacity or none)."""
    a_list = sorted(set(a_side))
    b_list = sorted(set(b_side))
    if len(a_list) + len(b_list) > 12:
        raise ValueError("sides too large for exhaustive double matching search")
    index = {a: i for i, a in enumerate(a_list)}
    nbrs: list[list[int]] = [[] for _ in b_list]
    for u, v in bip_edges:
        if u in index and v in set(b_list):
            nbrs[b_list.index(v)].append(index[u])
        elif v in index and u in set(b_list):
            nbrs[b_list.index(u)].append(index[v])
        else:
            raise ValueError(f"edge ({u}, {v}) does not cross the given sides")

    def rec(j: int, capacity: tuple[int, ...]) -> int:
        if j == len(b_list):
            return 0
        best = rec(j + 1, capacity)
        for a in nbrs[j]:
            if capacity[a] > 0:
                cap = list(capacity)
                cap[a] -= 1
                best = max(best, 1 + rec(j + 1, tuple(cap)))
        return best

    return rec(0, tuple(2 for _ in a_list))


def has_hamilton_path(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    """DFS over simple paths; fine for n <= 10."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        u, v = edge(u, v)
        adj[u].add(v)
        adj[v].add(u)
    if n == 1:
        return True

    def extend(v: int, visited: int, depth: int) -> bool:
        if depth == n:
            return True
        for u in adj[v]:
            if not visited & (1 << u):
                if extend(u, visited | (1 << u), depth + 1):
                    return True
        return False

    return any(extend(s, 1 << s, 1) for s in range(n))


def min_tour_weight(inst: Instance01) -> int:
    """Minimum Hamilton cycle weight by enumerating all (n-1)!/2 tours."""
    n = inst.n
    if n > 10:
        raise ValueError(f"n={n} too large for tour enumeration")
    ones = inst.one_edges
    best = n
    for perm in itertools.permutations(range(1, n)):
        if perm[0] > perm[-1]:
            continue
        seq = (0,) + perm
        weight = sum(
            1 for i in range(n) if edge(seq[i], seq[(i + 1) % n]) in ones
        )
        best = min(best, weight)
        if best == 0:
            break
    return best


def count_matchings_of_size(n: int, edges: Collection[tuple[int, int]], s: int) -> int:
    """Number of s-edge matchings; used to certify extremal constructions."""
    es = sorted(edge(u, v) for u, v in edges)

    def rec(i: int, used: int, left: int) -> int:
        if left == 0:
            return 1
        if i == len(es):
            return 0
        total = rec(i + 1, used, left)
        u, v = es[i]
        if not used & (1 << u) and not used & (1 << v):
            total += rec(i + 1, used | (1 << u) | (1 << v), left - 1)
        return total

    return rec(0, 0, s)


def max_matching_size_all_graphs_n6() -> dict[int, int]:
    """Maximum matching size for every graph on 6 labelled vertices.

    Graphs are encoded as 15-bit masks over the lexicographic edge order of
    K_6. Computed by intersecting each graph with the precomputed list of all
    matchings of K_6, which is independent of the augmenting-path code.
    """
    pairs = [(u, v) for u in range(6) for v in range(u + 1, 6)]
    matchings: list[tuple[int, int]] = []  # (edge mask, size)
    for size in range(0, 4):
        for combo in itertools.combinations(range(15), size):
            used = 0
            ok = True
            for idx in combo:
                u, v = pairs[idx]
                if used & (1 << u) or used & (1 << v):
                    ok = False
                    break
                used |= (1 << u) | (1 << v)
            if ok:
                matchings.append((sum(1 << i for i in combo), size))
    matchings.sort(key=lambda t: -t[1])
    result: dict[int, int] = {}
    for g in range(1 << 15):
        for mask, size in matchings:
            if (g & mask) == mask:
                result[g] = size
                break
    return result
