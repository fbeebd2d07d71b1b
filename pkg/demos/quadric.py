"""Walkthrough: the quadric cone with rays (1, 0) and (-1, 2).

Run with ``python3 demos/quadric.py``.
"""

# %% The datum and its anticanonical polytope
from toricd2 import (
    FrobeniusLevel, FracVector, anticanonical, d2_contains, find_generators,
    dual_leq, from_rays, gorenstein_shift, is_diagonally_split,
)

quadric = from_rays([(1, 0), (-1, 2)])
print("rays:", quadric.rays)
print("dual cone rays:", quadric.dual_rays)
print("Gorenstein shift:", gorenstein_shift(quadric))
print("anticanonical faces:", anticanonical(quadric).faces)

# %% Which characteristics split diagonally?
for p in (2, 3, 5, 7):
    print(f"p = {p}: diagonally F-split = {is_diagonally_split(quadric, p)}")

# %% Membership of a few degrees at p = 5
level = FrobeniusLevel(5)
for num in [(0, 0), (0, -1), (-1, -1), (-2, -2), (2, 1)]:
    d = FracVector(num, level.q)
    cert = d2_contains(quadric, level, d)
    extra = "" if cert.is_member else f", class {cert.missing_class} is empty"
    print(f"d = {d}: {cert.verdict}{extra}")

# %% Minimal generators under the twisting order
for p in (3, 5, 7):
    search = find_generators(quadric, FrobeniusLevel(p))
    print(f"p = {p}:", ", ".join(str(g) for g in search.generators))
    print("   search box:", [(str(lo), str(hi)) for lo, hi in search.box])

# %% Points with second coordinate (q+1)/(2q) are members, yet each sits above a generator
level = FrobeniusLevel(5)
gens = find_generators(quadric, level).generators
for num in [(-4, 3), (-3, 3), (1, 3), (2, 3)]:
    v = FracVector(num, 5)
    below = [str(g) for g in gens if dual_leq(g, v, quadric)]
    print(f"{v}: member = {d2_contains(quadric, level, v).is_member}, dominated by {below}")
