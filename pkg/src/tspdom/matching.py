"""Matchings: maximum matching on general graphs (Edmonds' blossom
algorithm), minimum-weight optimal matchings of {0,1}-instances, maximum
double matchings on bipartite graphs, and edge-count guarantees.

An *optimal matching* of K_n is any set of floor(n/2) pairwise disjoint
edges. A *double matching* from A to B allows degree up to 2 on the A side
and up to 1 on the B side.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Collection, Iterable, Sequence

from .errors import PreconditionError
from .instance import Edge, Instance01, edge


@dataclass(frozen=True)
class Matching:
    """A set of pairwise vertex-disjoint edges."""

    edges: frozenset[Edge]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(edge(u, v) for u, v in self.edges))
        seen: set[int] = set()
        for u, v in self.edges:
            if u in seen or v in seen:
                raise ValueError("edges are not vertex-disjoint")
            seen.update((u, v))

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def is_optimal(self, n: int) -> bool:
        return len(self.edges) == n // 2

    def partner(self, v: int) -> int | None:
        for a, b in self.edges:
            if a == v:
                return b
            if b == v:
                return a
        return None


@dataclass(frozen=True)
class DoubleMatching:
    """A bipartite subgraph with degree <= 2 on a_side and <= 1 on b_side.

    Edges are stored as (a, b) pairs with a in a_side.
    """

    a_side: frozenset[int]
    b_side: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "a_side", frozenset(self.a_side))
        object.__setattr__(self, "b_side", frozenset(self.b_side))
        object.__setattr__(self, "edges", frozenset(self.edges))
        if self.a_side & self.b_side:
            raise ValueError("sides are not disjoint")
        deg_a: dict[int, int] = {}
        deg_b: dict[int, int] = {}
        for a, b in self.edges:
            if a not in self.a_side or b not in self.b_side:
                raise ValueError(f"edge ({a}, {b}) crosses outside the sides")
            deg_a[a] = deg_a.get(a, 0) + 1
            deg_b[b] = deg_b.get(b, 0) + 1
        if any(d > 2 for d in deg_a.values()):
            raise ValueError("a_side degree above 2")
        if any(d > 1 for d in deg_b.values()):
            raise ValueError("b_side degree above 1")

    def __len__(self) -> int:
        return len(self.edges)

    def degree_a(self, a: int) -> int:
        return sum(1 for x, _ in self.edges if x == a)

    def partners(self, a: int) -> tuple[int, ...]:
        return tuple(sorted(b for x, b in self.edges if x == a))


def _adjacency(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        e = edge(u, v)
        if e[1] >= n:
            raise ValueError(f"edge {e} out of range for n={n}")
        adj[e[0]].add(e[1])
        adj[e[1]].add(e[0])
    return [sorted(s) for s in adj]


def max_matching(n: int, edges: Iterable[tuple[int, int]]) -> Matching:
    """Maximum-cardinality matching of a simple graph via blossom shrinking.

    Deterministic: vertices are scanned in ascending order and adjacency
    lists are sorted, so the result is reproducible. O(n^3).
    """
    adj = _adjacency(n, edges)
    match: list[int] = [-1] * n
    parent: list[int] = [-1] * n
    base: list[int] = list(range(n))

    def lowest_common_ancestor(a: int, b: int) -> int:
        seen = [False] * n
        x = a
        while True:
            x = base[x]
            seen[x] = True
            if match[x] == -1:
                break
            x = parent[match[x]]
        y = b
        while True:
            y = base[y]
            if seen[y]:
                return y
            y = parent[match[y]]

    def mark_blossom(v: int, anchor: int, child: int, flag: list[bool]) -> None:
        while base[v] != anchor:
            flag[base[v]] = True
            flag[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_augmenting_path(root: int) -> int:
        for i in range(n):
            parent[i] = -1
            base[i] = i
        used = [False] * n
        used[root] = True
        queue = [root]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    # odd cycle found: contract the blossom
                    anchor = lowest_common_ancestor(v, to)
                    in_blossom = [False] * n
                    mark_blossom(v, anchor, to, in_blossom)
                    mark_blossom(to, anchor, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = anchor
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to
                    used[match[to]] = True
                    queue.append(match[to])
        return -1

    def augment(finish: int) -> None:
        v = finish
        while v != -1:
            pv = parent[v]
            nxt = match[pv]
            match[v] = pv
            match[pv] = v
            v = nxt

    for v in range(n):
        if match[v] == -1:
            end = find_augmenting_path(v)
            if end != -1:
                augment(end)

    return Matching(frozenset(edge(v, match[v]) for v in range(n) if match[v] > v))


def zero_graph_matching_number(inst: Instance01) -> int:
    """Size of a maximum matching of the zero-graph, cached on the instance."""
    cached = getattr(inst, "_zero_nu", None)
    if cached is None:
        cached = len(max_matching(inst.n, inst.zero_edges()))
        object.__setattr__(inst, "_zero_nu", cached)
    return cached


def min_weight_optimal_matching_01(inst: Instance01) -> Matching:
    """Minimum-weight optimal matching (floor(n/2) edges) of a {0,1}-instance.

    A maximum matching of the zero-graph is extended by pairing the leftover
    vertices in ascending id order; the leftovers form an independent set of
    the zero-graph, so the weight equals floor(n/2) - nu(zero-graph).
    """
    zero = max_matching(inst.n, inst.zero_edges())
    object.__setattr__(inst, "_zero_nu", len(zero))
    covered = zero.vertices
    rest = sorted(set(range(inst.n)) - covered)
    extra = [edge(rest[i], rest[i + 1]) for i in range(0, len(rest) - 1, 2)]
    return Matching(zero.edges | frozenset(extra))


def matching_weight_01(inst: Instance01, m: Matching) -> int:
    return sum(1 for e in m.edges if e in inst.one_edges)


def _kuhn_max_bipartite(left: int, adj: Sequence[Sequence[int]], right: int) -> list[int]:
    """Maximum bipartite matching; returns for each right vertex its partner
    (-1 when unmatched). Left vertices are processed in ascending order."""
    match_right = [-1] * right

    def try_augment(u: int, visited: list[bool]) -> bool:
        for v in adj[u]:
            if visited[v]:
                continue
            visited[v] = True
            if match_right[v] == -1 or try_augment(match_right[v], visited):
                match_right[v] = u
                return True
        return False

    limit = sys.getrecursionlimit()
    needed = left + right + 100
    if needed > limit:
        sys.setrecursionlimit(needed)
    try:
        for u in range(left):
            try_augment(u, [False] * right)
    finally:
        if needed > limit:
            sys.setrecursionlimit(limit)
    return match_right


def max_double_matching(
    bip_edges: Iterable[tuple[int, int]],
    a_side: Collection[int],
    b_side: Collection[int],
) -> DoubleMatching:
    """Maximum-size double matching from a_side to b_side.

    Each a-vertex is duplicated (copy with the same neighbourhood), a maximum
    bipartite matching of the duplicated graph is computed, and the copies
    are identified again.
    """
    a_list = sorted(set(a_side))
    b_list = sorted(set(b_side))
    if set(a_list) & set(b_list):
        raise ValueError("sides are not disjoint")
    a_index = {v: i for i, v in enumerate(a_list)}
    b_index = {v: i for i, v in enumerate(b_list)}
    neighbours: list[set[int]] = [set() for _ in a_list]
    for u, v in bip_edges:
        if u in a_index and v in b_index:
            neighbours[a_index[u]].add(b_index[v])
        elif v in a_index and u in b_index:
            neighbours[a_index[v]].add(b_index[u])
        else:
            raise ValueError(f"edge ({u}, {v}) does not cross the given sides")
    # two consecutive rows per a-vertex: the vertex and its duplicate
    dup_adj: list[list[int]] = []
    for nb in neighbours:
        row = sorted(nb)
        dup_adj.append(row)
        dup_adj.append(row)
    match_right = _kuhn_max_bipartite(len(dup_adj), dup_adj, len(b_list))
    chosen = frozenset(
        (a_list[match_right[j] // 2], b_list[j])
        for j in range(len(b_list))
        if match_right[j] != -1
    )
    return DoubleMatching(frozenset(a_list), frozenset(b_list), chosen)


def erdos_gallai_threshold(n: int, s: int) -> int:
    """Minimum edge count of an n-vertex graph that forces an s-edge matching."""
    if not 1 <= s <= n // 2:
        raise ValueError(f"s={s} outside 1..floor({n}/2)")
    return max(math.comb(2 * s - 1, 2), math.comb(n, 2) - math.comb(n - s + 1, 2)) + 1


def guaranteed_matching_size(n: int, d: float) -> int:
    """Matching size every {0,1}-instance of density d is guaranteed to have
    in its zero-graph: floor(min(sqrt(1-d) n / 2, (1 - sqrt(d)) n)).

    Requires 1/n <= d <= 1 - 4/n. A one-part-in-10^9 nudge is applied before
    flooring so exact boundary cases (such as d = 0.81, n = 100, where the
    minimum is the real number 10) do not lose a unit to float dust.
    """
    if not 1 / n <= d <= 1 - 4 / n:
        raise PreconditionError("density-range", f"d={d} outside [1/{n}, 1 - 4/{n}]")
    value = min(0.5 * math.sqrt(1 - d) * n, (1 - math.sqrt(d)) * n)
    return math.floor(value + 1e-9)


def min_matching_weight_bound(n: int, d: float) -> float:
    """Upper bound f(n, d) on the minimum weight of an optimal matching.

    Two-branch form with crossover at d = 9/25:
    d n/2 - d n/8 + 1 below, d n/2 - (1-d)^2 n/8 + 1 above.
    """
    if not 1 / n <= d <= 1 - 4 / n:
        raise PreconditionError("density-range", f"d={d} outside [1/{n}, 1 - 4/{n}]")
    if d <= 9 / 25:
        return 0.5 * d * n - d * n / 8 + 1
    return 0.5 * d * n - (1 - d) ** 2 * n / 8 + 1
