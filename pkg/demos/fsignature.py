"""Walkthrough: F-signature volumes and how many splittings survive in D2.

Run with ``python3 demos/fsignature.py``.
"""

# %%
from fractions import Fraction

import numpy as np

from toricd2 import count_points, from_rays, fsig_sequence, fsig_volume, sig_polytope

data = {
    "plane": [(1, 0), (0, 1)],
    "quadric": [(1, 0), (-1, 2)],
    "cyclic 1/3": [(1, 0), (1, 3)],
    "threefold": [(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)],
}

# %% Exact volumes of the signature polytope
for name, rays in data.items():
    print(f"{name:<12} s(R) = {fsig_volume(from_rays(rays))}")

# %% Lattice-count estimates converge to the volume
ms = np.array([4, 8, 16, 32, 64])
for name, rays in data.items():
    datum = from_rays(rays)
    vol = fsig_volume(datum)
    est = np.array([count_points(sig_polytope(datum), int(m)) / float(m) ** datum.dim for m in ms])
    print(f"{name:<12} |error| by m:", np.round(np.abs(est - float(vol)), 4))

# %% Splitting counts per Frobenius level
for name in ("quadric", "threefold"):
    datum = from_rays(data[name])
    print(name)
    for row in fsig_sequence(datum, 3, 2 if datum.dim == 3 else 3):
        print(f"  e = {row.e}: splittings {row.split_count} ({float(row.split_ratio):.4f}), "
              f"in D2 {row.d2_count} ({float(row.d2_ratio):.4f})")

print("threefold D2 ratio at e = 1 is at least 1/3:",
      fsig_sequence(from_rays(data["threefold"]), 3, 1)[0].d2_ratio >= Fraction(1, 3))
