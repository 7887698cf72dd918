"""Classify a {0,1}-instance as regular, dense, sparse, or unclassified.

The classes are mutually exclusive by construction (checked in this order);
at moderate n many instances fall into none of the three, which is a
first-class outcome here rather than an error, since the trichotomy is only
guaranteed asymptotically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .instance import Instance01
from .matching import matching_weight_01, min_weight_optimal_matching_01

DEFAULT_EPS = 1.0 / 28.0

KIND_REGULAR = "regular"
KIND_DENSE = "dense"
KIND_SPARSE = "sparse"
KIND_UNCLASSIFIED = "unclassified"

#: Relative tolerance for threshold comparisons. Ties resolve away from
#: regular/dense, toward the weaker claim.
REL_TOL = 1e-9


@dataclass(frozen=True)
class Classification:
    """Outcome of the dispatch decision for one instance."""

    kind: str
    eps: float
    d: Fraction
    min_matching_weight: int
    r: float | None = None
    witness: str | None = None


def m_eps(n: float, d: float, eps: float) -> float:
    """Matching-weight margin 40(e + sqrt(e)) ln n + 40 sqrt(e) d^(1/4) sqrt(n ln n).

    Accepts real n > 1 so the formula can be checked at closed-form points.
    """
    if n <= 1 or not 0 <= d <= 1 or eps <= 0:
        raise ValueError(f"bad arguments n={n}, d={d}, eps={eps}")
    ln = math.log(n)
    return 40 * (eps + math.sqrt(eps)) * ln + 40 * math.sqrt(eps) * d**0.25 * math.sqrt(
        n * ln
    )


def corollary_thresholds(n: float, eps: float) -> tuple[float, float]:
    """Density window endpoints (f, g): every instance with
    f <= d <= 1 - g is regular. Informational; the classifier tests the
    regular condition directly because the 10^4 constants make this window
    empty until astronomically large n."""
    if n <= 1:
        raise ValueError(f"n={n} too small")
    ln = math.log(n)
    f = 1e4 * (1 + 2 * eps) * n ** (-2.0 / 3.0) * ln
    g = 1e4 * (1 + eps) * n ** (-2.0 / 7.0) * ln
    return f, g


def sparse_density_threshold(n: int, eps: float) -> float:
    return 0.25 * n ** (-0.5 - eps)


def _margin(a: float, b: float) -> float:
    return REL_TOL * max(1.0, abs(a), abs(b))


def _claim_leq(a: float, b: float) -> bool:
    """a <= b with a conservative margin; near-ties are rejected."""
    return a <= b - _margin(a, b)


def dense_conditions(
    n: int, d: Fraction, r: float, eps: float, min_matching_weight: int
) -> tuple[bool, str]:
    """Evaluate the three dense-instance conditions; returns (ok, detail).

    Takes scalars so the decision can be checked at any n without
    materializing an instance.
    """
    dbar = 1 - d
    if dbar > Fraction(1, 12):
        return False, f"1 - d = {float(dbar):.6g} exceeds 1/12"
    half_mean = float(d * n / 2)
    if not _claim_leq(half_mean - r, float(min_matching_weight)):
        return False, (
            f"some optimal matching weighs {min_matching_weight} < d n/2 - r "
            f"= {half_mean - r:.6g}"
        )
    lhs = 6 * float(dbar) ** 2 * (n + 1) + 46 * r + 3 * float(dbar)
    rhs = n ** (0.5 - eps)
    if not _claim_leq(lhs, rhs):
        return False, f"6(1-d)^2(n+1) + 46r + 3(1-d) = {lhs:.6g} > n^(1/2-eps) = {rhs:.6g}"
    return True, ""


def classify(inst: Instance01, eps: float = DEFAULT_EPS) -> Classification:
    """Decide which of the three matching algorithms applies.

    Regular: a minimum-weight optimal matching sits below the average by the
    margin m_eps on the density side or its complement. Sparse: d is at most
    (1/4) n^(-1/2-eps). Dense: density near 1, all optimal matchings close
    to average, and the low-degree set small. Otherwise unclassified.
    """
    if eps <= 0:
        raise ValueError(f"eps={eps} must be positive")
    n = inst.n
    d = inst.density
    mw = matching_weight_01(inst, min_weight_optimal_matching_01(inst))
    half_mean = float(d * n / 2)

    for side, d_side in (("density", float(d)), ("complement", float(1 - d))):
        if _claim_leq(float(mw), half_mean - m_eps(n, d_side, eps)):
            return Classification(
                kind=KIND_REGULAR,
                eps=eps,
                d=d,
                min_matching_weight=mw,
                witness=side,
            )

    if d <= sparse_density_threshold(n, eps):
        return Classification(
            kind=KIND_SPARSE, eps=eps, d=d, min_matching_weight=mw
        )

    r = m_eps(n, float(1 - d), eps)
    ok, _ = dense_conditions(n, d, r, eps, mw)
    if ok:
        return Classification(
            kind=KIND_DENSE, eps=eps, d=d, min_matching_weight=mw, r=r
        )

    return Classification(
        kind=KIND_UNCLASSIFIED, eps=eps, d=d, min_matching_weight=mw
    )
