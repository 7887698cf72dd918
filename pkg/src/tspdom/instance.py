"""Instances on the complete graph: rational weightings, {0,1}-instances,
Hamilton cycles, random and structured generators, and edge-list file I/O.

Vertices are 0-indexed in memory and 1-indexed in files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import FormatError

Edge = tuple[int, int]

#: Default search cap for the blow-up size picked by :func:`gen_hardness_reduction`.
REDUCTION_SIZE_CAP = 10**6


def edge(u: int, v: int) -> Edge:
    """Return the unordered pair (u, v) in canonical (min, max) order."""
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def all_edges(n: int) -> Iterator[Edge]:
    """All C(n, 2) vertex pairs of the complete graph on 0..n-1."""
    for u in range(n):
        for v in range(u + 1, n):
            yield (u, v)


def _check_vertex_count(n: int) -> None:
    if n < 3:
        raise ValueError(f"need at least 3 vertices, got n={n}")


@dataclass(frozen=True)
class Weighting:
    """A symmetric edge weighting of K_n with exact rational values in [-1, 1].

    ``weights`` maps canonical (min, max) pairs to nonzero Fractions; absent
    pairs weigh 0. Instances are immutable and safe to share across threads.
    """

    n: int
    weights: Mapping[Edge, Fraction]

    def __post_init__(self):
        _check_vertex_count(self.n)
        norm: dict[Edge, Fraction] = {}
        for (u, v), value in self.weights.items():
            e = edge(u, v)
            if not (0 <= e[0] and e[1] < self.n):
                raise ValueError(f"edge {e} out of range for n={self.n}")
            w = Fraction(value)
            if not -1 <= w <= 1:
                raise ValueError(f"weight {w} of edge {e} outside [-1, 1]")
            if e in norm:
                raise ValueError(f"edge {e} given twice")
            if w != 0:
                norm[e] = w
        object.__setattr__(self, "weights", norm)

    def value(self, u: int, v: int) -> Fraction:
        return self.weights.get(edge(u, v), Fraction(0))

    @cached_property
    def total(self) -> Fraction:
        """Sum of all edge weights, w(K_n)."""
        return sum(self.weights.values(), Fraction(0))

    @cached_property
    def total_abs(self) -> Fraction:
        """Sum of all absolute edge weights."""
        return sum((abs(w) for w in self.weights.values()), Fraction(0))


@dataclass(frozen=True)
class Instance01:
    """A {0,1}-weighted instance: the set of weight-1 edges of K_n.

    The complement of ``one_edges`` within K_n is called the zero-graph.
    """

    n: int
    one_edges: frozenset[Edge]

    def __post_init__(self):
        _check_vertex_count(self.n)
        object.__setattr__(self, "one_edges", frozenset(self.one_edges))
        for u, v in self.one_edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u}, {v}) for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Instance01":
        return cls(n, frozenset(edge(u, v) for u, v in edges))

    @cached_property
    def density(self) -> Fraction:
        return Fraction(len(self.one_edges), math.comb(self.n, 2))

    @cached_property
    def one_adjacency(self) -> tuple[frozenset[int], ...]:
        """Neighbourhoods in the weight-1 graph."""
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.one_edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    def zero_degree(self, v: int) -> int:
        return self.n - 1 - len(self.one_adjacency[v])

    def zero_neighbours(self, v: int) -> set[int]:
        return set(range(self.n)) - {v} - set(self.one_adjacency[v])

    def zero_edges(self) -> Iterator[Edge]:
        """Edges of the zero-graph (complement of one_edges within K_n)."""
        for e in all_edges(self.n):
            if e not in self.one_edges:
                yield e

    def weight(self, u: int, v: int) -> int:
        return 1 if edge(u, v) in self.one_edges else 0

    def cycle_weight(self, cycle: "HamiltonCycle") -> int:
        if len(cycle.order) != self.n:
            raise ValueError("cycle does not span the instance vertex set")
        return sum(1 for e in cycle.edges() if e in self.one_edges)

    def to_weighting(self) -> Weighting:
        return Weighting(self.n, {e: Fraction(1) for e in self.one_edges})


@dataclass(frozen=True)
class HamiltonCycle:
    """A Hamilton cycle of K_n in canonical form.

    The order starts at vertex 0 and the second element is smaller than the
    last, which fixes rotation and reflection; there are (n-1)!/2 canonical
    orders on n vertices.
    """

    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(self.order)
        object.__setattr__(self, "order", order)
        n = len(order)
        _check_vertex_count(n)
        if sorted(order) != list(range(n)):
            raise ValueError("order is not a permutation of 0..n-1")
        if order[0] != 0 or order[1] > order[-1]:
            raise ValueError("order is not in canonical form; use from_sequence")

    @classmethod
    def from_sequence(cls, seq: Iterable[int]) -> "HamiltonCycle":
        """Canonicalize an arbitrary cyclic vertex order."""
        raw = list(seq)
        if 0 not in raw:
            raise ValueError("sequence must contain vertex 0")
        i = raw.index(0)
        rot = raw[i:] + raw[:i]
        if rot[1] > rot[-1]:
            rot = [0] + rot[:0:-1]
        return cls(tuple(rot))

    @property
    def n(self) -> int:
        return len(self.order)

    def edges(self) -> Iterator[Edge]:
        o = self.order
        for i in range(len(o)):
            yield edge(o[i], o[(i + 1) % len(o)])

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())


def density(inst: Instance01) -> Fraction:
    """Fraction of K_n edges carrying weight 1, as an exact rational."""
    return inst.density


def tour_weight(w: Weighting, cycle: HamiltonCycle) -> Fraction:
    """Exact weight of a Hamilton cycle under a rational weighting."""
    if cycle.n != w.n:
        raise ValueError(f"cycle on {cycle.n} vertices, weighting on {w.n}")
    return sum((w.value(u, v) for u, v in cycle.edges()), Fraction(0))


# ---------------------------------------------------------------------------
# generators


def gen_bernoulli(n: int, p: float, seed: int) -> Instance01:
    """Each edge independently gets weight 1 with probability p.

    Fully deterministic given (seed, n, p): edges are decided in row-major
    order (0,1), (0,2), ..., (n-2, n-1) from a counter-based Philox stream.
    """
    _check_vertex_count(n)
    if not 0 <= p <= 1:
        raise ValueError(f"probability p={p} outside [0, 1]")
    rng = np.random.Generator(np.random.Philox(key=seed))
    ones: set[Edge] = set()
    for u in range(n - 1):
        draws = rng.random(n - 1 - u)
        for j in np.nonzero(draws < p)[0]:
            ones.add((u, u + 1 + int(j)))
    return Instance01(n, frozenset(ones))


def gen_planted_clique(n: int, r: int) -> Instance01:
    """Weight 1 exactly on the pairs inside the vertex block {n-r, ..., n-1}."""
    _check_vertex_count(n)
    if not 2 <= r <= n:
        raise ValueError(f"clique size r={r} outside [2, {n}]")
    block = range(n - r, n)
    ones = frozenset((u, v) for u in block for v in block if u < v)
    return Instance01(n, ones)


def reduction_size(n: int, eps: float, cap: int = REDUCTION_SIZE_CAP) -> int:
    """Smallest n' > n with floor(n'^eps / ln n') >= n.

    Logarithms are natural. Raises ValueError when no n' <= cap qualifies.
    """
    if not 0 < eps <= 0.5:
        raise ValueError(f"eps={eps} outside (0, 1/2]")
    for np_ in range(n + 1, cap + 1):
        if math.floor(np_**eps / math.log(np_)) >= n:
            return np_
    raise ValueError(f"no n' <= {cap} satisfies floor(n'^{eps}/ln n') >= {n}")


def gen_hardness_reduction(
    n: int,
    graph_edges: Iterable[tuple[int, int]],
    eps: float,
    *,
    n_prime: int | None = None,
    cap: int = REDUCTION_SIZE_CAP,
) -> tuple[Instance01, tuple[int, ...]]:
    """Embed a Hamilton-path question about a graph into a {0,1}-instance.

    The returned instance lives on n' vertices. Inside the embedded block
    S = {0, ..., n-1} the weight-1 edges are the complement of the input
    graph, the bipartite S-to-rest edges all have weight 1, and the rest
    induces weight 0. The minimum tour weight is 2 exactly when the input
    graph has a Hamilton path.

    n' defaults to the smallest value > n with floor(n'^eps / ln n') >= n;
    pass ``n_prime`` to build the same structure at a chosen size (> n).
    Returns (instance, embedded vertex block).
    """
    if n < 2:
        raise ValueError(f"graph needs at least 2 vertices, got {n}")
    g = frozenset(edge(u, v) for u, v in graph_edges)
    for u, v in g:
        if not 0 <= u < v < n:
            raise ValueError(f"graph edge ({u}, {v}) out of range for n={n}")
    if n_prime is None:
        n_prime = reduction_size(n, eps, cap)
    elif n_prime <= n:
        raise ValueError(f"n_prime={n_prime} must exceed n={n}")
    ones: set[Edge] = set()
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in g:
                ones.add((u, v))
        for v in range(n, n_prime):
            ones.add((u, v))
    return Instance01(n_prime, frozenset(ones)), tuple(range(n))


# ---------------------------------------------------------------------------
# file formats
#
# instance file:   p tsp01 <n> <m>    then m lines   e <u> <v>
# weighting file:  p tspw <n> <m>     then m lines   e <u> <v> <num> <den>
# tour file:       t <n>              then n lines   <vertex id>
#
# All ids are 1-indexed; absent pairs weigh 0.


def _header(text: str, kind: str) -> tuple[int, int, list[str]]:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise FormatError("empty input")
    parts = lines[0].split()
    if len(parts) != 4 or parts[0] != "p" or parts[1] != kind:
        raise FormatError(f"malformed header {lines[0]!r}, expected 'p {kind} <n> <m>'")
    try:
        n, m = int(parts[2]), int(parts[3])
    except ValueError:
        raise FormatError(f"malformed header {lines[0]!r}: non-integer counts") from None
    if n < 3 or m < 0:
        raise FormatError(f"bad counts in header: n={n}, m={m}")
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"header promises {m} edge lines, found {len(body)}")
    return n, m, body


def _parse_endpoints(parts: list[str], n: int, line: str) -> Edge:
    try:
        u, v = int(parts[1]), int(parts[2])
    except ValueError:
        raise FormatError(f"malformed edge line {line!r}") from None
    if u == v:
        raise FormatError(f"self-loop in line {line!r}")
    if not (1 <= u <= n and 1 <= v <= n):
        raise FormatError(f"vertex id out of range 1..{n} in line {line!r}")
    return edge(u - 1, v - 1)


def parse_instance(text: str) -> Instance01:
    """Parse a ``p tsp01`` edge-list file."""
    n, _, body = _header(text, "tsp01")
    ones: set[Edge] = set()
    for line in body:
        parts = line.split()
        if len(parts) != 3 or parts[0] != "e":
            raise FormatError(f"malformed edge line {line!r}, expected 'e <u> <v>'")
        e = _parse_endpoints(parts, n, line)
        if e in ones:
            raise FormatError(f"duplicate edge in line {line!r}")
        ones.add(e)
    return Instance01(n, frozenset(ones))


def serialize_instance(inst: Instance01) -> str:
    lines = [f"p tsp01 {inst.n} {len(inst.one_edges)}"]
    for u, v in sorted(inst.one_edges):
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def parse_weighting(text: str) -> Weighting:
    """Parse a ``p tspw`` rational edge-list file."""
    n, _, body = _header(text, "tspw")
    weights: dict[Edge, Fraction] = {}
    for line in body:
        parts = line.split()
        if len(parts) != 5 or parts[0] != "e":
            raise FormatError(
                f"malformed edge line {line!r}, expected 'e <u> <v> <num> <den>'"
            )
        e = _parse_endpoints(parts, n, line)
        if e in weights:
            raise FormatError(f"duplicate edge in line {line!r}")
        try:
            num, den = int(parts[3]), int(parts[4])
        except ValueError:
            raise FormatError(f"malformed edge line {line!r}") from None
        if den == 0:
            raise FormatError(f"zero denominator in line {line!r}")
        weights[e] = Fraction(num, den)
    try:
        return Weighting(n, weights)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_weighting(w: Weighting) -> str:
    lines = [f"p tspw {w.n} {len(w.weights)}"]
    for (u, v), value in sorted(w.weights.items()):
        lines.append(f"e {u + 1} {v + 1} {value.numerator} {value.denominator}")
    return "\n".join(lines) + "\n"


def parse_tour(text: str) -> HamiltonCycle:
    """Parse a ``t <n>`` tour file (n vertex ids, one per line, 1-indexed)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty input")
    parts = lines[0].split()
    if len(parts) != 2 or parts[0] != "t":
        raise FormatError(f"malformed header {lines[0]!r}, expected 't <n>'")
    try:
        n = int(parts[1])
    except ValueError:
        raise FormatError(f"malformed header {lines[0]!r}") from None
    if len(lines) - 1 != n:
        raise FormatError(f"header promises {n} vertices, found {len(lines) - 1}")
    try:
        ids = [int(ln) for ln in lines[1:]]
    except ValueError:
        raise FormatError("non-integer vertex id in tour body") from None
    if any(not 1 <= v <= n for v in ids):
        raise FormatError(f"vertex id out of range 1..{n} in tour body")
    try:
        return HamiltonCycle.from_sequence([v - 1 for v in ids])
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_tour(cycle: HamiltonCycle) -> str:
    lines = [f"t {cycle.n}"] + [str(v + 1) for v in cycle.order]
    return "\n".join(lines) + "\n"
