"""Sensor-failure robustness: essential sensors and k-fragility.

A sensor (or sensor subset) is essential when deleting it changes the
difference-coarray lag set.  Fragility F_k is the fraction of size-k
subsets that are essential; 0 is most robust, 1 least robust.  Everything
here is exhaustive and exact: fragilities are rationals, never sampled
estimates.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .geometry import InvalidParameterError, SensorArray
from .coarray import lag_set

# C(|S|, k) above this is refused rather than silently taking hours.
ENUMERATION_LIMIT = 10_000_000


@dataclass(frozen=True)
class EssentialnessReport:
    array: SensorArray
    essential: tuple
    inessential: tuple


@dataclass(frozen=True)
class FragilityReport:
    """Exact k-essential subset count over C(|S|, k)."""

    k: int
    essential_subset_count: int
    total_subsets: int
    fragility: Fraction

    def rounded(self, digits=4):
        return round(float(self.fragility), digits)


def essential_sensors(s):
    """Partition sensors by whether their removal alters the lag set."""
    if len(s) < 2:
        raise InvalidParameterError(
            "essentialness needs at least two sensors")
    full = lag_set(s)
    essential = []
    inessential = []
    for x in s.positions:
        rest = [p for p in s.positions if p != x]
        (essential if lag_set(rest) != full else inessential).append(x)
    return EssentialnessReport(array=s,
                               essential=tuple(essential),
                               inessential=tuple(inessential))


def k_fragility(s, k):
    """Exhaustively count size-k subsets whose removal changes the coarray."""
    if not 1 <= k < len(s):
        raise InvalidParameterError(
            "need 1 <= k < sensor count, got k=%d for %d sensors"
            % (k, len(s)))
    total = comb(len(s), k)
    if total > ENUMERATION_LIMIT:
        raise InvalidParameterError(
            "C(%d, %d) = %d subsets exceeds the enumeration limit of %d"
            % (len(s), k, total, ENUMERATION_LIMIT))
    full = lag_set(s)
    count = 0
    for removed in itertools.combinations(s.positions, k):
        drop = set(removed)
        kept = [p for p in s.positions if p not in drop]
        if lag_set(kept) != full:
            count += 1
    return FragilityReport(k=k, essential_subset_count=count,
                           total_subsets=total,
                           fragility=Fraction(count, total))


def fragility_profile(s, k_max):
    """FragilityReports for k = 1 .. k_max."""
    if not 1 <= k_max < len(s):
        raise InvalidParameterError(
            "need 1 <= k_max < sensor count, got k_max=%d for %d sensors"
            % (k_max, len(s)))
    return [k_fragility(s, k) for k in range(1, k_max + 1)]


def robustness_report(s, k_max):
    """JSON-ready combined essentialness and fragility report."""
    ess = essential_sensors(s)
    profile = fragility_profile(s, k_max)
    return {
        "label": s.label,
        "essential": list(ess.essential),
        "inessential": list(ess.inessential),
        "fragility": [
            {"k": r.k, "count": r.essential_subset_count,
             "total": r.total_subsets, "value": r.rounded()}
            for r in profile
        ],
    }


def write_fragility_csv(path, entries):
    """CSV of (label, k, F_k) rows for fragility-versus-k plots.

    ``entries`` is an iterable of (label, fragility profile) pairs.
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label", "k", "F_k"])
        for label, profile in entries:
            for report in profile:
                writer.writerow([label, report.k, "%.4f" % report.fragility])
