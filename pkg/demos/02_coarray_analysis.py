"""Difference coarrays of the five case-study arrays.

Prints the central ULA segment, holes, and source capacity for each, and
draws the CFA coarray as a text strip so its holes at +/-21 are visible.
"""

from fractalarrays import difference_coarray, make_sfa, summarize

cases = [
    ("NFA", make_sfa("nested", {"n": 6}, 1)),
    ("CFA", make_sfa("coprime", {"m": 2, "n": 3}, 1)),
    ("AUGGENIFA", make_sfa("ana1", {"n": 6}, 1)),
    ("AUGGENIIFA", make_sfa("ana2", {"n": 6}, 1)),
    ("SNFA", make_sfa("super_nested", {"n1": 3, "n2": 3}, 1)),
]

print(f"{'array':11s} {'sensors':>7s} {'segment':>12s} "
      f"{'max sources':>11s}  holes")
for name, arr in cases:
    s = summarize(difference_coarray(arr))
    print(f"{name:11s} {len(arr):7d} {str(s.ula_segment):>12s} "
          f"{s.max_sources:11d}  {list(s.holes) or '-'}")

print()
print("CFA coarray, non-negative side ('x' = lag present, '.' = hole):")
cfa = cases[1][1]
lags = difference_coarray(cfa).lag_set()
aperture = max(lags)
strip = "".join("x" if k in lags else "." for k in range(aperture + 1))
print(" lag 0 -> %d: %s" % (aperture, strip))
print()
print("The missing lag breaks the contiguous segment at +/-21, so coarray")
print("MUSIC on the CFA is limited to the central interval [-20, 20].")
