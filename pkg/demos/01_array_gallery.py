"""Build every array family and print its sensors next to the published lists.

The five 12-sensor sparse fractal arrays come from cross-summing a sparse
subarray with a Cantor subarray expanded by d2 = 2M + 1.
"""

from fractalarrays import (gen_cantor, gen_coprime, gen_nested,
                           gen_super_nested, gen_ula, make_sfa)

print("Base families")
print("-------------")
for arr in (gen_ula(6), gen_nested(6), gen_coprime(2, 3),
            gen_super_nested(3, 3), gen_cantor(3)):
    print(f"{arr.label:22s} {list(arr.positions)}")

print()
print("Sparse fractal arrays (fractal scale r = 1)")
print("-------------------------------------------")
cases = [
    ("NFA", make_sfa("nested", {"n": 6}, 1)),
    ("CFA", make_sfa("coprime", {"m": 2, "n": 3}, 1)),
    ("AUGGENIFA", make_sfa("ana1", {"n": 6}, 1)),
    ("AUGGENIIFA", make_sfa("ana2", {"n": 6}, 1)),
    ("SNFA", make_sfa("super_nested", {"n1": 3, "n2": 3}, 1)),
]
for name, arr in cases:
    print(f"{name:11s} ({len(arr):2d} sensors) {list(arr.positions)}")

print()
print("Scaling up the fractal part doubles the Cantor subarray each step:")
for r in (1, 2, 3):
    arr = make_sfa("nested", {"n": 6}, r)
    print(f"  r={r}: {len(arr)} sensors, aperture {arr.aperture}")
