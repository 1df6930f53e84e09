"""Sparse and fractal linear array geometries on the half-wavelength grid.

All sensor positions are exact non-negative integers in units of the base
inter-element spacing d1 = lambda/2.  The cross-sum of a sparse subarray
with a scaled Cantor subarray produces the sparse fractal arrays analysed
by the rest of the library.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from math import comb, gcd


class InvalidParameterError(ValueError):
    """A generator was called with parameters outside its domain."""


class UnsupportedParameterError(ValueError):
    """The requested parameters are valid but not covered by a closed form."""


@dataclass(frozen=True)
class SensorArray:
    """An immutable, named set of integer sensor positions.

    Positions are strictly increasing non-negative integers in units of d1.
    ``kind`` is a free-form family tag (ULA, Nested, Coprime, ANA1, ANA2,
    SuperNested, Cantor, SFA, or custom).
    """

    positions: tuple
    kind: str = "custom"
    label: str = ""

    def __post_init__(self):
        pos = tuple(int(p) for p in self.positions)
        if len(pos) == 0:
            raise InvalidParameterError("sensor array must be non-empty")
        if any(p < 0 for p in pos):
            raise InvalidParameterError("sensor positions must be non-negative")
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise InvalidParameterError(
                "sensor positions must be strictly increasing")
        object.__setattr__(self, "positions", pos)

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    @property
    def size(self):
        return len(self.positions)

    @property
    def aperture(self):
        """Distance between the first and last sensor."""
        return self.positions[-1] - self.positions[0]

    def remove(self, sensors):
        """Return a copy with the given sensor positions deleted."""
        drop = set(sensors)
        missing = drop - set(self.positions)
        if missing:
            raise InvalidParameterError(
                "cannot remove absent sensors: %s" % sorted(missing))
        kept = tuple(p for p in self.positions if p not in drop)
        return SensorArray(kept, kind=self.kind,
                           label=self.label + " minus %s" % sorted(drop))

    def to_dict(self):
        return {"label": self.label, "kind": self.kind,
                "positions": list(self.positions)}

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(d["positions"]), kind=d.get("kind", "custom"),
                   label=d.get("label", ""))


def gen_ula(n):
    """Uniform linear array with sensors at 0 .. n-1."""
    if n < 1:
        raise InvalidParameterError("ULA needs at least one sensor")
    return SensorArray(tuple(range(n)), kind="ULA", label="ULA(%d)" % n)


def _nested_split(n):
    if n % 2 == 0:
        return n // 2, n // 2
    return (n - 1) // 2, (n + 1) // 2


def gen_nested(n):
    """Two-level nested array: dense ULA {1..N1} plus sparse {m(N1+1)}.

    N1 = N2 = n/2 for even n, N1 = (n-1)/2 and N2 = (n+1)/2 for odd n.
    """
    if n < 2:
        raise InvalidParameterError("nested array needs n >= 2")
    n1, n2 = _nested_split(n)
    pos = set(range(1, n1 + 1)) | {m * (n1 + 1) for m in range(1, n2 + 1)}
    return SensorArray(tuple(sorted(pos)), kind="Nested",
                       label="Nested(%d)" % n)


def gen_coprime(m, n):
    """Prototype coprime array {m*i : i < n} U {n*j : j < 2m}, 2m+n-1 sensors."""
    if m < 1 or n < 1 or m >= n or gcd(m, n) != 1:
        raise InvalidParameterError(
            "coprime array needs coprime integers with 0 < m < n")
    pos = {m * i for i in range(n)} | {n * j for j in range(2 * m)}
    return SensorArray(tuple(sorted(pos)), kind="Coprime",
                       label="Coprime(%d,%d)" % (m, n))


def gen_ana1(n):
    """Augmented nested array, Gen-I arrangement.

    The dense ULA of the parent nested array is split into left and right
    pieces placed on both sides of the sparse subarray: floor(N1/2) sensors
    stay at 1..floor(N1/2) and ceil(N1/2) sensors move beyond the last
    sparse element.
    """
    return _gen_ana(n, right_heavy=True, kind="ANA1")


def gen_ana2(n):
    """Augmented nested array, Gen-II arrangement (heavier left piece)."""
    return _gen_ana(n, right_heavy=False, kind="ANA2")


def _gen_ana(n, right_heavy, kind):
    if n < 6:
        raise InvalidParameterError("augmented nested array needs n >= 6")
    n1, n2 = _nested_split(n)
    small, big = n1 // 2, n1 - n1 // 2
    left, right = (small, big) if right_heavy else (big, small)
    top = n2 * (n1 + 1)
    pos = (set(range(1, left + 1))
           | {m * (n1 + 1) for m in range(1, n2 + 1)}
           | {top + l for l in range(1, right + 1)})
    return SensorArray(tuple(sorted(pos)), kind=kind,
                       label="%s(%d)" % (kind, n))


def gen_super_nested(n1, n2):
    """Two-level super-nested array with the nested(n1+n2) coarray.

    The dense segment and the first sparse element of the parent nested
    array are rearranged to cut down unit-spacing sensor pairs while the
    difference coarray is preserved.  Odd n1 has a closed form: odd
    positions 1,3,.. at the left, even positions below 2(n1+1) at the
    right of the first gap, and one sensor at n2(n1+1)-1.  Even n1 falls
    back to a deterministic exhaustive search over coarray-preserving
    rearrangements (smallest unit-pair count, lexicographic tie-break),
    guarded against combinatorial blow-up.
    """
    if n1 < 2 or n2 < 2:
        raise InvalidParameterError("super-nested array needs n1, n2 >= 2")
    sparse = {l * (n1 + 1) for l in range(2, n2 + 1)}
    top = n2 * (n1 + 1)
    if n1 % 2 == 1:
        left = {1 + 2 * l for l in range((n1 + 1) // 2)}
        right = {2 * (n1 + 1) - (2 + 2 * l) for l in range(n1 // 2)}
        pos = left | right | sparse | {top - 1}
    else:
        pos = _super_nested_search(n1, n2, sparse, top)
    arr = SensorArray(tuple(sorted(pos)), kind="SuperNested",
                      label="SuperNested(%d,%d)" % (n1, n2))
    if len(arr) != n1 + n2:
        raise UnsupportedParameterError(
            "super-nested closed form collapsed for (%d, %d)" % (n1, n2))
    return arr


_SEARCH_LIMIT = 2_000_000


def _lag_set(positions):
    return frozenset(a - b for a in positions for b in positions)


def _unit_pairs(positions, k):
    return sum(1 for a, b in itertools.combinations(sorted(positions), 2)
               if b - a == k)


def _super_nested_search(n1, n2, sparse, top):
    parent = gen_nested(n1 + n2)
    target = _lag_set(parent.positions)
    pool = [p for p in range(1, top + 1) if p not in sparse]
    if comb(len(pool), n1 + 1) > _SEARCH_LIMIT:
        raise UnsupportedParameterError(
            "no closed form for even n1=%d and the fallback search on "
            "(%d choose %d) rearrangements exceeds the cost guard"
            % (n1, len(pool), n1 + 1))
    best = None
    for extra in itertools.combinations(pool, n1 + 1):
        pos = sparse | set(extra)
        if _lag_set(pos) != target:
            continue
        key = (_unit_pairs(pos, 1), _unit_pairs(pos, 2), tuple(sorted(pos)))
        if best is None or key < best:
            best = key
    if best is None:
        raise UnsupportedParameterError(
            "no coarray-preserving super-nested rearrangement for "
            "(%d, %d)" % (n1, n2))
    return set(best[2])


def gen_cantor(r):
    """Cantor fractal array at scale r: C1 = {0,1}, C_{r+1} = C_r U (C_r + 3^r)."""
    if r < 1:
        raise InvalidParameterError("Cantor array needs scale r >= 1")
    pos = [0, 1]
    step = 3
    for _ in range(r - 1):
        pos = pos + [p + step for p in pos]
        step *= 3
    return SensorArray(tuple(pos), kind="Cantor", label="Cantor(%d)" % r)


def cross_sum(a, b):
    """All pairwise sums of two arrays, as a deduplicated sorted set.

    Collisions (pairs landing on the same position) are silently merged;
    their count is recorded in the label so a shrunken SFA is visible at
    a glance.
    """
    sums = sorted({x + y for x in a.positions for y in b.positions})
    collisions = len(a) * len(b) - len(sums)
    label = "%s (+) %s" % (a.label or a.kind, b.label or b.kind)
    if collisions:
        label += " [%d collisions]" % collisions
    return SensorArray(tuple(sums), kind="custom", label=label)


_SFA_FAMILIES = {
    "ula": lambda params: gen_ula(params["n"]),
    "nested": lambda params: gen_nested(params["n"]),
    "coprime": lambda params: gen_coprime(params["m"], params["n"]),
    "ana1": lambda params: gen_ana1(params["n"]),
    "ana2": lambda params: gen_ana2(params["n"]),
    "super_nested": lambda params: gen_super_nested(params["n1"],
                                                    params["n2"]),
}


def make_sfa(kind, params, fractal_scale=1):
    """Sparse fractal array: subarray 1 cross-summed with a scaled Cantor set.

    Subarray 2 is gen_cantor(fractal_scale) expanded by d2 = 2M + 1 where
    M is the sensor count of subarray 1, so the two lattices interleave
    without wasting aperture.
    """
    if kind not in _SFA_FAMILIES:
        raise InvalidParameterError(
            "unknown subarray family %r (choose from %s)"
            % (kind, sorted(_SFA_FAMILIES)))
    if fractal_scale < 1:
        raise InvalidParameterError("fractal scale must be >= 1")
    sub1 = _SFA_FAMILIES[kind](params)
    d2 = 2 * len(sub1) + 1
    cantor = gen_cantor(fractal_scale)
    sub2 = SensorArray(tuple(p * d2 for p in cantor.positions),
                       kind="Cantor",
                       label="Cantor(%d) x %d" % (fractal_scale, d2))
    sfa = cross_sum(sub1, sub2)
    label = "SFA[%s, r=%d]" % (sub1.label, fractal_scale)
    collisions = len(sub1) * len(sub2) - len(sfa)
    if collisions:
        label += " [%d collisions]" % collisions
    return replace(sfa, kind="SFA", label=label)
