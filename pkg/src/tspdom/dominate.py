"""Solver driver, certified domination-ratio calculator, and empirical
domination estimation by exact enumeration (small n) or Monte Carlo.

The domination fraction of a tour is the proportion of all (n-1)!/2
Hamilton cycles whose weight is at least the tour's weight.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Collection

import numpy as np

from .classify import (
    DEFAULT_EPS,
    KIND_DENSE,
    KIND_REGULAR,
    KIND_SPARSE,
    KIND_UNCLASSIFIED,
    Classification,
    classify,
    m_eps,
)
from .dense import algorithm_b
from .errors import PreconditionError
from .extend import algorithm_a
from .instance import HamiltonCycle, Instance01
from .sparse import algorithm_c

FREEDMAN_R = 6.0

SOURCE_FREEDMAN_REGULAR = "freedman-regular"
SOURCE_DENSE = "dense"
SOURCE_SPARSE = "sparse"
SOURCE_NONE = "none"

#: Monte Carlo samples are partitioned into blocks, each with its own
#: counter-based stream, so results do not depend on the worker count. The
#: block size is a function of n alone (bounded scratch memory per block).
MC_BLOCK = 50_000


def _mc_block_size(n: int) -> int:
    return max(1000, min(MC_BLOCK, 4_000_000 // n))

_WILSON_Z = 1.959963984540054


@dataclass(frozen=True)
class GuaranteeParams:
    """Inputs fed to the martingale tail bound for one side."""

    side: str
    t: float
    sigma_sq: float
    r: float = FREEDMAN_R


@dataclass(frozen=True)
class CertifiedBound:
    """A certified domination-ratio lower bound with its provenance."""

    ratio: float | None  # clamped to [0, 1]
    raw: float | None  # may be <= 0 at small n
    source: str
    vacuous: bool
    params: tuple[GuaranteeParams, ...] = ()


@dataclass(frozen=True)
class Empirical:
    estimate: float
    halfwidth: float
    method: str  # "exact" or "mc"
    samples: int | None = None
    seed: int | None = None


@dataclass(frozen=True)
class DominationReport:
    tour: HamiltonCycle
    tour_weight: int
    classification: Classification
    certified_ratio: float | None
    certified_source: str
    certified_vacuous: bool
    composite_ratio: float | None
    empirical: Empirical | None = None

    def to_json_dict(self) -> dict:
        d = self.classification.d
        return {
            "schema": 1,
            "n": self.tour.n,
            "d_num": d.numerator,
            "d_den": d.denominator,
            "kind": self.classification.kind,
            "tour": list(self.tour.order),
            "tour_weight": self.tour_weight,
            "certified_ratio": self.certified_ratio,
            "certified_source": self.certified_source,
            "certified_vacuous": self.certified_vacuous,
            "composite_ratio": self.composite_ratio,
            "empirical_estimate": None if self.empirical is None else self.empirical.estimate,
            "empirical_halfwidth": None if self.empirical is None else self.empirical.halfwidth,
            "samples": None if self.empirical is None else self.empirical.samples,
            "seed": None if self.empirical is None else self.empirical.seed,
        }

    def with_empirical(self, empirical: Empirical) -> "DominationReport":
        return replace(self, empirical=empirical)


def freedman_tail(t: float, sigma_sq: float, r: float = FREEDMAN_R) -> float:
    """Martingale tail bound min(1, 2 exp(-(t^2/2) / (sigma^2 + r t / 3)))."""
    if t < 0 or sigma_sq <= 0 or r <= 0:
        raise ValueError(f"bad arguments t={t}, sigma_sq={sigma_sq}, r={r}")
    return min(1.0, 2.0 * math.exp(-(t * t / 2.0) / (sigma_sq + r * t / 3.0)))


def composite_ratio(n: int) -> float:
    """The headline guarantee 1 - 6 n^(-1/28), independent of the class."""
    return 1.0 - 6.0 * n ** (-1.0 / 28.0)


def certified_guarantee(
    inst: Instance01, classification: Classification, tour_weight: int
) -> CertifiedBound:
    """Certified lower bound on the domination ratio for a dispatched tour.

    Regular instances get the better of the blanket 1 - 2 n^(-eps) and the
    martingale tail with the realized deviation t = d n - w(tour); the tail
    uses the larger (weaker) of the two variance sides. Dense and sparse
    instances get 1 - 6 n^(-2 eps). Values at or below zero are clamped and
    flagged vacuous rather than hidden.
    """
    if classification.d != inst.density:
        raise ValueError("classification does not match the instance")
    n = inst.n
    eps = classification.eps
    kind = classification.kind

    if kind == KIND_UNCLASSIFIED:
        return CertifiedBound(None, None, SOURCE_NONE, False)

    if kind == KIND_REGULAR:
        d = float(inst.density)
        t = float(inst.density * n - tour_weight)
        params = (
            GuaranteeParams("density", t, 60.0 * (math.sqrt(d) * n + 1)),
            GuaranteeParams("complement", t, 60.0 * (math.sqrt(1 - d) * n + 1)),
        )
        raw = 1.0 - 2.0 * n ** (-eps)
        if t > 0:
            tail = max(freedman_tail(p.t, p.sigma_sq, p.r) for p in params)
            raw = max(raw, 1.0 - tail)
        return CertifiedBound(
            ratio=min(1.0, max(0.0, raw)),
            raw=raw,
            source=SOURCE_FREEDMAN_REGULAR,
            vacuous=raw <= 0,
            params=params,
        )

    source = SOURCE_DENSE if kind == KIND_DENSE else SOURCE_SPARSE
    raw = 1.0 - 6.0 * n ** (-2.0 * eps)
    return CertifiedBound(
        ratio=min(1.0, max(0.0, raw)), raw=raw, source=source, vacuous=raw <= 0
    )


def _fallback_tour(inst: Instance01, eps: float) -> HamiltonCycle:
    """Minimum-weight tour among algorithm A and, where their runtime
    preconditions hold, the best-effort cover and separator constructions."""
    candidates = [algorithm_a(inst)]
    if inst.one_edges:
        r = m_eps(inst.n, float(1 - inst.density), eps)
        try:
            candidates.append(algorithm_b(inst, r, eps, strict=False))
        except PreconditionError:
            pass
    try:
        candidates.append(algorithm_c(inst, eps, require_sparse=False))
    except PreconditionError:
        pass
    return min(candidates, key=lambda cyc: (inst.cycle_weight(cyc),))


def solve(inst: Instance01, eps: float = DEFAULT_EPS) -> DominationReport:
    """Classify, dispatch to the matching construction, and certify.

    Unclassified instances (and classified ones whose construction rejects
    its runtime preconditions, which happens at small n) fall back to the
    cheapest tour across all applicable constructions, with no certificate.
    """
    classification = classify(inst, eps)
    kind = classification.kind
    tour: HamiltonCycle | None = None
    certified = False

    if kind == KIND_REGULAR:
        tour = algorithm_a(inst)
        certified = True
    elif kind == KIND_DENSE:
        try:
            tour = algorithm_b(inst, classification.r or 1.0, eps, strict=True)
            certified = True
        except PreconditionError:
            tour = None
    elif kind == KIND_SPARSE:
        try:
            tour = algorithm_c(inst, eps)
            certified = True
        except PreconditionError:
            tour = None

    if tour is None:
        tour = _fallback_tour(inst, eps)

    weight = inst.cycle_weight(tour)
    if certified:
        bound = certified_guarantee(inst, classification, weight)
    else:
        bound = CertifiedBound(None, None, SOURCE_NONE, False)
    comp = composite_ratio(inst.n) if kind != KIND_UNCLASSIFIED else None
    return DominationReport(
        tour=tour,
        tour_weight=weight,
        classification=classification,
        certified_ratio=bound.ratio,
        certified_source=bound.source,
        certified_vacuous=bound.vacuous,
        composite_ratio=None if comp is None else max(0.0, comp),
    )


# ---------------------------------------------------------------------------
# exhaustive enumeration

_PERM_CACHE: dict[int, np.ndarray] = {}

ENUMERATION_LIMIT = 12


def _permutations_array(k: int) -> np.ndarray:
    """All k! permutations of 0..k-1 as an int8 array, built by repeated
    insertion; deterministic order, cached per k."""
    cached = _PERM_CACHE.get(k)
    if cached is not None:
        return cached
    arr = np.zeros((1, 1), dtype=np.int8)
    for size in range(2, k + 1):
        rows = arr.shape[0]
        blocks = []
        for j in range(size):
            block = np.empty((rows, size), dtype=np.int8)
            block[:, :j] = arr[:, :j]
            block[:, j] = size - 1
            block[:, j + 1 :] = arr[:, j:]
            blocks.append(block)
        arr = np.vstack(blocks)
    _PERM_CACHE[k] = arr
    return arr


def canonical_cycles(n: int) -> np.ndarray:
    """The (n-1)!/2 canonical tours of K_n: rows hold the vertex order after
    the fixed start 0, with first entry smaller than last (kills reflection)."""
    if not 3 <= n <= ENUMERATION_LIMIT:
        raise ValueError(f"n={n} outside 3..{ENUMERATION_LIMIT} for enumeration")
    perms = _permutations_array(n - 1) + np.int8(1)
    return perms[perms[:, 0] < perms[:, -1]]


def _adjacency_matrix(inst: Instance01) -> np.ndarray:
    a = np.zeros((inst.n, inst.n), dtype=np.int8)
    for u, v in inst.one_edges:
        a[u, v] = 1
        a[v, u] = 1
    return a


def cycle_weights(inst: Instance01, tails: np.ndarray) -> np.ndarray:
    """Tour weights for each row of a tails array (order after vertex 0)."""
    a = _adjacency_matrix(inst)
    out = np.empty(len(tails), dtype=np.int32)
    chunk = 1 << 19
    for lo in range(0, len(tails), chunk):
        part = tails[lo : lo + chunk]
        w = a[part[:, :-1], part[:, 1:]].sum(axis=1, dtype=np.int32)
        w += a[0, part[:, 0]].astype(np.int32)
        w += a[0, part[:, -1]].astype(np.int32)
        out[lo : lo + len(part)] = w
    return out


def domination_exact(inst: Instance01, tour: HamiltonCycle) -> Fraction:
    """Exact domination fraction |{H : w(H) >= w(tour)}| / ((n-1)!/2)."""
    n = inst.n
    if n > ENUMERATION_LIMIT:
        raise ValueError(f"n={n} too large for exact enumeration")
    if tour.n != n:
        raise ValueError("tour does not span the instance")
    target = inst.cycle_weight(tour)
    tails = canonical_cycles(n)
    weights = cycle_weights(inst, tails)
    return Fraction(int((weights >= target).sum()), len(tails))


# ---------------------------------------------------------------------------
# Monte Carlo estimation

def wilson_interval(successes: int, samples: int) -> tuple[float, float, float, float]:
    """95% Wilson score interval; returns (low, high, center, halfwidth)."""
    if samples <= 0:
        raise ValueError("need a positive sample count")
    z = _WILSON_Z
    phat = successes / samples
    denom = 1.0 + z * z / samples
    center = (phat + z * z / (2 * samples)) / denom
    half = (
        z
        * math.sqrt(phat * (1 - phat) / samples + z * z / (4 * samples * samples))
        / denom
    )
    return max(0.0, center - half), min(1.0, center + half), center, half


def _mc_block_count(
    a: np.ndarray, n: int, target: int, seed: int, block_index: int, block_size: int
) -> int:
    rng = np.random.Generator(np.random.Philox(key=seed ^ block_index))
    u = rng.random((block_size, n - 1))
    tails = np.argsort(u, axis=1).astype(np.int16) + 1
    w = a[tails[:, :-1], tails[:, 1:]].sum(axis=1, dtype=np.int32)
    w += a[0, tails[:, 0]].astype(np.int32)
    w += a[0, tails[:, -1]].astype(np.int32)
    return int((w >= target).sum())


def domination_mc(
    inst: Instance01,
    tour: HamiltonCycle,
    samples: int,
    seed: int,
    workers: int = 1,
) -> tuple[float, float]:
    """Monte Carlo domination estimate with a 95% Wilson halfwidth.

    Samples are split into fixed-size blocks; block b draws from the
    counter-based stream keyed seed xor b and counts are merged in block
    order, so the result depends only on (inst, tour, samples, seed) and is
    byte-stable across worker counts. Workers only parallelize blocks.
    """
    if samples < 100:
        raise ValueError(f"need at least 100 samples, got {samples}")
    if workers < 1:
        raise ValueError(f"workers={workers} must be positive")
    n = inst.n
    if tour.n != n:
        raise ValueError("tour does not span the instance")
    target = inst.cycle_weight(tour)
    a = _adjacency_matrix(inst)
    block = _mc_block_size(n)
    sizes = [block] * (samples // block)
    if samples % block:
        sizes.append(samples % block)

    def run(b: int) -> int:
        return _mc_block_count(a, n, target, seed, b, sizes[b])

    if workers == 1 or len(sizes) == 1:
        counts = [run(b) for b in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(run, range(len(sizes))))
    hits = sum(counts)
    _, _, _, half = wilson_interval(hits, samples)
    return hits / samples, half


# ---------------------------------------------------------------------------
# the avoided-separator event

def event_e_check(cycle: HamiltonCycle, s_set: Collection[int]) -> bool:
    """True when the cycle uses no edge inside s_set and every outside
    vertex has at most one cycle-neighbour in s_set."""
    s = frozenset(s_set)
    order = cycle.order
    n = len(order)
    for i, v in enumerate(order):
        prev_in = order[i - 1] in s
        next_in = order[(i + 1) % n] in s
        if v in s and next_in:
            return False
        if v not in s and prev_in and next_in:
            return False
    return True


def event_e_probability_exact(n: int, s_set: Collection[int]) -> Fraction:
    """Exact probability that a uniform tour satisfies the event above."""
    if n > ENUMERATION_LIMIT:
        raise ValueError(f"n={n} too large for exact enumeration")
    s = frozenset(s_set)
    if any(not 0 <= v < n for v in s):
        raise ValueError("s_set outside the vertex range")
    tails = canonical_cycles(n)
    mask = np.zeros(n, dtype=bool)
    mask[list(s)] = True
    full = np.concatenate(
        [np.zeros((len(tails), 1), dtype=np.int8), tails], axis=1
    )
    in_s = mask[full]
    nxt = np.roll(in_s, -1, axis=1)
    prv = np.roll(in_s, 1, axis=1)
    e1_bad = (in_s & nxt).any(axis=1)
    e2_bad = (prv & ~in_s & nxt).any(axis=1)
    good = int((~e1_bad & ~e2_bad).sum())
    return Fraction(good, len(tails))
