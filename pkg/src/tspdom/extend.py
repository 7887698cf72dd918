"""Extension of an optimal matching to a Hamilton cycle by the method of
conditional expectations.

All bookkeeping is exact rational arithmetic: the conditional expectation of
the tour weight is non-increasing along the join steps, and the final value
equals the realized tour weight. Floating point would break both checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import InternalCheckError
from .instance import (
    Edge,
    HamiltonCycle,
    Instance01,
    Weighting,
    edge,
    tour_weight,
)
from .matching import Matching, min_weight_optimal_matching_01

_ZERO = Fraction(0)


@dataclass(frozen=True)
class PathSystem:
    """A spanning union of vertex-disjoint nontrivial paths of K_n, n even.

    The number of paths equals (number of degree-1 vertices) / 2.
    """

    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(edge(u, v) for u, v in self.edges))
        if self.n % 2 != 0 or self.n < 4:
            raise ValueError(f"path systems need even n >= 4, got n={self.n}")
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            if not 0 <= u < v < self.n:
                raise ValueError(f"edge ({u}, {v}) out of range")
            adj[u].append(v)
            adj[v].append(u)
        for v in range(self.n):
            if len(adj[v]) not in (1, 2):
                raise ValueError(f"vertex {v} has degree {len(adj[v])}, not 1 or 2")
        # walk each component from an endpoint; anything left over is a cycle
        seen = [False] * self.n
        ends: dict[int, int] = {}
        for start in range(self.n):
            if seen[start] or len(adj[start]) != 1:
                continue
            prev, cur = -1, start
            while True:
                seen[cur] = True
                nxts = [x for x in adj[cur] if x != prev]
                if not nxts:
                    break
                prev, cur = cur, nxts[0]
            ends[start] = cur
            ends[cur] = start
        if not all(seen):
            raise ValueError("edge set contains a cycle")
        object.__setattr__(self, "_other_end", ends)

    @classmethod
    def from_matching(cls, n: int, m: Matching) -> "PathSystem":
        ps = cls(n, m.edges)
        if ps.path_count != n // 2:
            raise ValueError("matching does not span all vertices")
        return ps

    @property
    def other_end(self) -> dict[int, int]:
        """Maps each path endpoint to the opposite endpoint of its path."""
        return self._other_end  # type: ignore[attr-defined]

    @cached_property
    def endpoints(self) -> tuple[int, ...]:
        return tuple(sorted(self.other_end))

    @property
    def path_count(self) -> int:
        return len(self.other_end) // 2

    def join(self, e: tuple[int, int]) -> "PathSystem":
        x, y = edge(*e)
        if x not in self.other_end or y not in self.other_end:
            raise ValueError(f"({x}, {y}) does not join two path endpoints")
        if self.other_end[x] == y:
            raise ValueError(f"({x}, {y}) would close a path into a cycle")
        return PathSystem(self.n, self.edges | {(x, y)})

    def spanning_path_order(self) -> list[int]:
        """Vertex order of the unique path; requires path_count == 1."""
        if self.path_count != 1:
            raise ValueError("not a single spanning path")
        adj: dict[int, list[int]] = {v: [] for v in range(self.n)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        start = min(self.endpoints)
        order = [start]
        prev = -1
        while len(order) < self.n:
            nxt = [x for x in adj[order[-1]] if x != prev][0]
            prev = order[-1]
            order.append(nxt)
        return order


def join_graph(ps: PathSystem) -> frozenset[Edge]:
    """All pairs of endpoints belonging to two distinct paths."""
    if ps.path_count < 2:
        raise ValueError("join graph is undefined for a single spanning path")
    other = ps.other_end
    eps = ps.endpoints
    out = set()
    for i, x in enumerate(eps):
        for y in eps[i + 1 :]:
            if other[x] != y:
                out.add((x, y))
    return frozenset(out)


def expected_tour_weight(w: Weighting, ps: PathSystem) -> Fraction:
    """Exact expected weight of a uniformly random Hamilton cycle containing
    all edges of the path system."""
    base = sum((w.value(u, v) for u, v in ps.edges), _ZERO)
    i = ps.path_count
    if i == 1:
        a, b = ps.endpoints
        return base + w.value(a, b)
    joins = sum((w.value(u, v) for u, v in join_graph(ps)), _ZERO)
    return base + joins / (2 * (i - 1))


def expected_extension_weight(w: Weighting, ps: PathSystem, e: tuple[int, int]) -> Fraction:
    """Exact expected tour weight after committing to join edge e.

    For i > 2 paths this is w(G + e) plus the join-edge average of the
    remaining system, whose join graph is regular of degree 2(i - 2); for
    i = 2 it is the realized weight of the unique closing cycle.
    """
    x, y = edge(*e)
    if (x, y) not in join_graph(ps):
        raise ValueError(f"({x}, {y}) is not a join edge of the path system")
    return expected_tour_weight(w, ps.join((x, y)))


def _best_join(w: Weighting, ps: PathSystem) -> tuple[Edge, Fraction]:
    """Argmin of the conditional expectation over all join edges.

    Maintains endpoint sums so each candidate is O(1): with S the sum of
    w over the current join graph and T(v) the sum of w(v, z) over foreign
    endpoints z, committing to e = xy removes T(x) + T(y) - w(xy) and the
    pair formed by the two opposite ends.
    """
    i = ps.path_count
    if i < 2:
        raise ValueError("nothing to join: single spanning path")
    other = ps.other_end
    eps = ps.endpoints
    w_base = sum((w.value(u, v) for u, v in ps.edges), _ZERO)

    t: dict[int, Fraction] = {}
    for x in eps:
        ox = other[x]
        acc = _ZERO
        for z in eps:
            if z != x and z != ox:
                acc += w.value(x, z)
        t[x] = acc
    s_join = sum(t.values(), _ZERO) / 2

    best_edge: Edge | None = None
    best_val: Fraction | None = None
    for ia, x in enumerate(eps):
        ox = other[x]
        for y in eps[ia + 1 :]:
            if y == ox:
                continue
            wxy = w.value(x, y)
            if i == 2:
                val = w_base + wxy + w.value(ox, other[y])
            else:
                rest = s_join - t[x] - t[y] + wxy - w.value(ox, other[y])
                val = w_base + wxy + rest / (2 * (i - 2))
            if best_val is None or val < best_val:
                best_edge, best_val = (x, y), val
    assert best_edge is not None and best_val is not None
    return best_edge, best_val


def pick_best_join(w: Weighting, ps: PathSystem) -> Edge:
    """Join edge minimizing the conditional expectation; lexicographically
    smallest edge on ties. The value is guaranteed not to exceed the current
    expectation, since the minimum is at most the join-graph average."""
    return _best_join(w, ps)[0]


def _extend_even(w: Weighting, m: Matching) -> tuple[HamiltonCycle, Fraction]:
    n = w.n
    ps = PathSystem.from_matching(n, m)
    current = expected_tour_weight(w, ps)
    while ps.path_count > 1:
        e, value = _best_join(w, ps)
        if value > current:
            raise InternalCheckError(
                f"conditional expectation increased: {current} -> {value}"
            )
        ps = ps.join(e)
        current = value
    order = ps.spanning_path_order()
    cycle = HamiltonCycle.from_sequence(order)
    realized = tour_weight(w, cycle)
    if realized != current:
        raise InternalCheckError(
            f"closing value {current} differs from realized weight {realized}"
        )
    return cycle, realized


def extend_matching_to_hamilton(w: Weighting, m: Matching) -> HamiltonCycle:
    """Extend an optimal matching to a Hamilton cycle whose weight is at most

        (1 - 1/(n-2)) w(M) + w(K_n)/(n-2) + rho(n),

    with rho(n) = 1 for odd n and 0 for even n; the bound is re-verified in
    exact arithmetic before returning. Odd n is handled by twinning the
    unmatched vertex with a zero-weight dummy, running the even case on
    n + 1 vertices, and contracting the dummy edge.
    """
    n = w.n
    if not m.is_optimal(n):
        raise ValueError(f"matching has {len(m)} edges, an optimal one needs {n // 2}")
    if any(v >= n for v in m.vertices):
        raise ValueError("matching mentions vertices outside the weighting")

    if n % 2 == 0:
        cycle, realized = _extend_even(w, m)
    else:
        unmatched = (set(range(n)) - m.vertices).pop()
        twin = n
        weights = dict(w.weights)
        for x in range(n):
            if x != unmatched:
                value = w.value(unmatched, x)
                if value != 0:
                    weights[edge(twin, x)] = value
        w_even = Weighting(n + 1, weights)
        m_even = Matching(m.edges | {(unmatched, twin)})
        big_cycle, _ = _extend_even(w_even, m_even)
        order = [v for v in big_cycle.order if v != twin]
        cycle = HamiltonCycle.from_sequence(order)
        realized = tour_weight(w, cycle)

    rho = 1 if n % 2 else 0
    bound = (
        (1 - Fraction(1, n - 2)) * sum((w.value(u, v) for u, v in m.edges), _ZERO)
        + Fraction(1, n - 2) * w.total
        + rho
    )
    if realized > bound:
        raise InternalCheckError(f"tour weight {realized} exceeds bound {bound}")
    missing = m.edges - cycle.edge_set()
    if missing:
        raise InternalCheckError(f"matching edges {missing} missing from the tour")
    return cycle


def algorithm_a(inst: Instance01) -> HamiltonCycle:
    """Minimum-weight optimal matching followed by derandomized extension.

    The output weight never exceeds d*n for even n (d*n + 1 + d for odd n),
    the mean tour weight; checked exactly on every call.
    """
    m = min_weight_optimal_matching_01(inst)
    cycle = extend_matching_to_hamilton(inst.to_weighting(), m)
    weight = inst.cycle_weight(cycle)
    ceiling = inst.density * inst.n
    if inst.n % 2:
        ceiling += 1 + inst.density
    if weight > ceiling:
        raise InternalCheckError(
            f"tour weight {weight} above the mean ceiling {ceiling}"
        )
    return cycle
