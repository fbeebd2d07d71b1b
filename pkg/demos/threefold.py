"""Walkthrough: the cone over a square, rays (1,0,0), (0,1,0), (1,0,1), (0,1,1).

Run with ``python3 demos/threefold.py``.
"""

# %%
import itertools

from toricd2 import FracVector, FrobeniusLevel, d2_contains, from_rays, gorenstein_shift, is_diagonally_split

threefold = from_rays([(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)])
level = FrobeniusLevel(3)
print("Gorenstein shift:", gorenstein_shift(threefold))
print("diagonally F-split at p = 3:", is_diagonally_split(threefold, level))

# %% Degrees in [-1, 0]^3 inside the open anticanonical polytope
rows = []
for N in itertools.product(range(-2, 1), repeat=3):
    if not all(sum(a * r for a, r in zip(N, ray)) > -3 for ray in threefold.rays):
        continue
    d = FracVector(N, 3)
    rows.append((sum(N), d, d2_contains(threefold, level, d).verdict))

for s, d, verdict in sorted(rows, key=lambda r: (r[0], r[1])):
    print(f"  sum = {s:+d}/3  d = {str(d):<20} {verdict}")

above = [r for r in rows if r[0] > -3]
print(f"{sum(v == 'Member' for _, _, v in above)} of {len(above)} degrees with coordinate sum > -1 are members")
