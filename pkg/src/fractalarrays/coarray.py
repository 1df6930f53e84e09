"""Difference coarrays, weight functions, and central-ULA summaries.

The coarray is computed by direct O(N^2) pairwise differencing; arrays in
this library have at most a few hundred sensors, so exact enumeration is
both fast and free of numerical concerns.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


def _positions(array):
    return tuple(getattr(array, "positions", array))


@dataclass(frozen=True)
class Coarray:
    """Symmetric integer lag set with ordered-pair weights.

    weights(k) counts ordered sensor pairs at separation k, so the weight
    function is even, weights(0) equals the sensor count, and the weights
    sum to the squared sensor count.
    """

    lags: tuple
    weights: dict
    source_cardinality: int

    def lag_set(self):
        return frozenset(self.lags)

    def weight(self, k):
        return self.weights.get(k, 0)

    def to_dict(self):
        summary = summarize(self)
        return {
            "lags": list(self.lags),
            "weights": {str(k): v for k, v in sorted(self.weights.items())},
            "ula_segment": list(summary.ula_segment),
            "holes": list(summary.holes),
            "hole_free": summary.hole_free,
        }


@dataclass(frozen=True)
class CoarraySummary:
    """Central ULA segment, aperture, and holes of a difference coarray."""

    ula_segment: tuple
    hole_free: bool
    aperture: int
    max_sources: int
    holes: tuple


def difference_coarray(array):
    """All pairwise position differences with ordered-pair multiplicities."""
    pos = _positions(array)
    counts = Counter(a - b for a in pos for b in pos)
    return Coarray(lags=tuple(sorted(counts)),
                   weights=dict(counts),
                   source_cardinality=len(pos))


def lag_set(array):
    """The coarray lag set alone (cheaper comparisons, no weights)."""
    pos = _positions(array)
    return frozenset(a - b for a in pos for b in pos)


def summarize(c):
    """Central contiguous segment [-u, u], holes, and source capacity.

    max_sources is u: a hole-free central segment of 2u+1 lags supports up
    to u sources through the coarray MUSIC pipeline.
    """
    lags = c.lag_set()
    aperture = max(lags)
    u = 0
    while u + 1 in lags:
        u += 1
    holes = tuple(k for k in range(1, aperture + 1) if k not in lags)
    return CoarraySummary(ula_segment=(-u, u),
                          hole_free=not holes,
                          aperture=aperture,
                          max_sources=u,
                          holes=holes)


def coarrays_equal(a, b):
    """True when the two arrays generate identical lag sets (weights ignored)."""
    return lag_set(a) == lag_set(b)
