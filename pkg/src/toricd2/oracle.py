"""Brute-force verification on the torus.

Maps ``k[T x T]^{1/q} -> k[T x T]`` are finite sums
``sum c[a, a'] pi_a (x) pi_a'`` with coefficients in F_p. Compatibility with
the diagonal ideal is decided directly from class sums, and restriction to
the diagonal is computed from the explicit formula. ``oracle_check`` decides
membership along a code path that shares nothing with :mod:`toricd2.cartier`:
its search box comes from floating-point LPs (scipy) widened by a margin and
every candidate is tested with integer arithmetic against the raw ray
inequalities.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .lattice import FracVector, FrobeniusLevel, ResidueClass, enumerate_classes, residue_class
from .toric import ToricDatum

__all__ = [
    "DiagonalMap",
    "IncompatibleMapError",
    "OracleReport",
    "TensorMap",
    "build_witness_map",
    "class_sums",
    "extends_over_cone",
    "is_diagonal_compatible",
    "oracle_check",
    "oracle_d2_contains",
    "restrict_to_diagonal",
]


class IncompatibleMapError(ValueError):
    """The map is not compatible with the diagonal, so it has no restriction."""


class TensorMap:
    """``sum c[a, a'] pi_a (x) pi_a'`` over F_p with all points in (1/q)Z^n."""

    def __init__(self, level: FrobeniusLevel, support=None):
        self.level = level
        table: dict[tuple[FracVector, FracVector], int] = {}
        for (a, b), c in dict(support or {}).items():
            if a.den != level.q or b.den != level.q:
                raise ValueError(f"support points must have denominator {level.q}")
            c = (table.get((a, b), 0) + int(c)) % level.p
            table[(a, b)] = c
        self.support = {k: v for k, v in sorted(table.items()) if v}

    def __add__(self, other: "TensorMap") -> "TensorMap":
        if other.level != self.level:
            raise ValueError("level mismatch")
        out = dict(self.support)
        for k, v in other.support.items():
            out[k] = out.get(k, 0) + v
        return TensorMap(self.level, out)

    def __rmul__(self, scalar: int) -> "TensorMap":
        return TensorMap(self.level, {k: scalar * v for k, v in self.support.items()})

    def __eq__(self, other):
        return isinstance(other, TensorMap) and self.level == other.level and self.support == other.support

    def __len__(self):
        return len(self.support)

    def degree_slices(self) -> dict[FracVector, "TensorMap"]:
        """Split into pieces of constant total degree ``a + a'``."""
        parts = defaultdict(dict)
        for (a, b), c in self.support.items():
            parts[a + b][(a, b)] = c
        return {d: TensorMap(self.level, s) for d, s in sorted(parts.items())}

    def __repr__(self):
        terms = " + ".join(f"{c}*pi_{a}(x)pi_{b}" for (a, b), c in self.support.items())
        return f"TensorMap(p={self.level.p}, q={self.level.q}: {terms or '0'})"


@dataclass
class DiagonalMap:
    level: FrobeniusLevel
    coeffs: dict[FracVector, int] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {u: c % self.level.p for u, c in sorted(self.coeffs.items()) if c % self.level.p}


def class_sums(m: TensorMap) -> dict[FracVector, dict[ResidueClass, int]]:
    """Per total degree ``d``, the sums ``sum_{a in [u]} c[a, d - a]`` mod p over occupied classes."""
    out: dict[FracVector, dict[ResidueClass, int]] = defaultdict(lambda: defaultdict(int))
    p = m.level.p
    for (a, b), c in m.support.items():
        sums = out[a + b]
        cls = residue_class(a)
        sums[cls] = (sums[cls] + c) % p
    return out


def _n_classes(m: TensorMap) -> int:
    n = next(iter(m.support))[0].dim
    return m.level.q**n


def is_diagonal_compatible(m: TensorMap) -> bool:
    """All class sums agree in every degree (unoccupied classes count as 0)."""
    if not m.support:
        return True
    total = _n_classes(m)
    for sums in class_sums(m).values():
        values = set(sums.values())
        if len(sums) < total:
            values.add(0)
        if len(values) > 1:
            return False
    return True


def restrict_to_diagonal(m: TensorMap) -> DiagonalMap:
    """Restriction of a compatible map to ``R (x) R / I_diag``.

    The coefficient of ``pi_u`` is read off as ``sum_{a in -v + Z^n} c[a, u - a]``
    for every class ``[v]``; these must all coincide.
    """
    if not is_diagonal_compatible(m):
        raise IncompatibleMapError("map is not compatible with the diagonal")
    if not m.support:
        return DiagonalMap(m.level)
    n = next(iter(m.support))[0].dim
    coeffs = {}
    for u, sums in class_sums(m).items():
        seen = set()
        for v in enumerate_classes(m.level, n):
            minus_v = residue_class(FracVector((-x for x in v), m.level.q))
            seen.add(sums.get(minus_v, 0))
        if len(seen) != 1:
            raise IncompatibleMapError(f"restriction coefficient at {u} depends on the chosen class")
        coeffs[u] = seen.pop()
    return DiagonalMap(m.level, coeffs)


def _in_open_anticanonical(num, q: int, datum: ToricDatum) -> bool:
    return all(sum(x * r for x, r in zip(num, ray)) > -q for ray in datum.rays)


def extends_over_cone(m: TensorMap, datum: ToricDatum) -> bool:
    """Both tensor factors of every support term lie in the open anticanonical polytope."""
    q = m.level.q
    return all(
        _in_open_anticanonical(a.num, q, datum) and _in_open_anticanonical(b.num, q, datum)
        for a, b in m.support
    )


def build_witness_map(d: FracVector, reps: dict, level: FrobeniusLevel) -> TensorMap:
    """``sum_i pi_{a_i} (x) pi_{d - a_i}`` over one representative per class."""
    n = d.dim
    by_class = {residue_class(a): a for a in reps.values()}
    if len(by_class) != level.q**n:
        raise ValueError(f"representatives cover {len(by_class)} of {level.q**n} classes")
    return TensorMap(level, {(a, d - a): 1 for a in by_class.values()})


# --- independent membership search -----------------------------------------

def _search_box(datum: ToricDatum, d: FracVector) -> list[range]:
    """Integer numerator ranges (at denominator d.den) covering the closed diagonal polytope."""
    q = d.den
    n = datum.dim
    rays = np.array(datum.rays, dtype=float)
    dd = np.array(d.num, dtype=float) / q
    # -1 <= <x, v> <= <d, v> + 1
    A = np.vstack([-rays, rays])
    b = np.concatenate([np.ones(len(rays)), rays @ dd + 1])
    ranges = []
    for i in range(n):
        c = np.zeros(n)
        c[i] = 1.0
        lo = linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * n, method="highs")
        hi = linprog(-c, A_ub=A, b_ub=b, bounds=[(None, None)] * n, method="highs")
        if lo.status != 0 or hi.status != 0:
            raise ValueError("diagonal polytope is empty or unbounded")
        ranges.append(range(math.floor(lo.fun * q) - 1, math.ceil(-hi.fun * q) + 2))
    return ranges


@dataclass
class OracleReport:
    verdict: bool
    d: FracVector
    transcript: list[str] = field(default_factory=list)
    witness_map: TensorMap | None = None
    missing_class: ResidueClass | None = None

    def __bool__(self):
        return self.verdict


def oracle_check(datum: ToricDatum, level: FrobeniusLevel, d: FracVector, seed: int = 0) -> OracleReport:
    """Decide membership of ``pi_d`` and verify the answer at the level of tensor maps.

    On success the witness map is checked for compatibility, extension over
    the cone and restriction to exactly ``pi_d``. On failure every
    compatible degree-``d`` map supported over the cone is shown to restrict
    to zero: the empty class has class sum 0, forcing all others to vanish.
    Random maps supported over the cone are sampled to exercise this.
    """
    q = level.q
    n = datum.dim
    if d.den != q or d.dim != n:
        raise ValueError(f"d must be a point of (1/{q})Z^{n}")
    if not _in_open_anticanonical(d.num, q, datum):
        raise ValueError(f"{d} is not in the interior of the anticanonical polytope")
    D = d.num
    pairs_d = [sum(x * r for x, r in zip(D, ray)) for ray in datum.rays]
    admissible: dict[ResidueClass, list[FracVector]] = defaultdict(list)
    for N in itertools.product(*_search_box(datum, d)):
        ok = True
        for ray, pd in zip(datum.rays, pairs_d):
            s = sum(x * r for x, r in zip(N, ray))
            if not (-q < s < pd + q):
                ok = False
                break
        if ok:
            admissible[tuple(x % q for x in N)].append(FracVector(N, q))
    lines = [f"d = {d} at q = {q}: {sum(map(len, admissible.values()))} admissible points, "
           f"{len(admissible)} of {q**n} classes occupied"]
    report = OracleReport(len(admissible) == q**n, d, lines)

    if report.verdict:
        reps = {cls: min(pts) for cls, pts in admissible.items()}
        wm = build_witness_map(d, reps, level)
        report.witness_map = wm
        checks = [
            ("witness map is compatible with the diagonal", is_diagonal_compatible(wm)),
            ("witness map extends over the cone", extends_over_cone(wm, datum)),
            ("witness map restricts to pi_d with coefficient 1",
             restrict_to_diagonal(wm).coeffs == {d: 1}),
        ]
        for label, ok in checks:
            lines.append(("PASS " if ok else "FAIL ") + label)
            if not ok:
                raise AssertionError(f"oracle self-check failed: {label}")
        return report

    missing = next(c for c in enumerate_classes(level, n) if c not in admissible)
    report.missing_class = missing
    lines.append(f"class {missing} has no admissible point; its class sum is 0 for every map over the cone")
    full = TensorMap(level, {(a, d - a): 1 for pts in admissible.values() for a in pts})
    if not extends_over_cone(full, datum):
        raise AssertionError("admissible support leaves the cone")
    rng = random.Random(seed)
    samples = [full]
    for _ in range(8):
        samples.append(TensorMap(level, {k: rng.randrange(level.p) for k in full.support}))
    # a compatible map: each class sum cancels
    cancel = {}
    for pts in admissible.values():
        if len(pts) >= 2:
            cancel[(pts[0], d - pts[0])] = 1
            cancel[(pts[1], d - pts[1])] = -1
    samples.append(TensorMap(level, cancel))
    n_compatible = 0
    for m in samples:
        if sum(c for (a, _), c in m.support.items() if residue_class(a) == missing) % level.p:
            raise AssertionError("empty class carries a nonzero class sum")
        if is_diagonal_compatible(m):
            n_compatible += 1
            if restrict_to_diagonal(m).coeffs.get(d, 0) != 0:
                raise AssertionError("compatible map over the cone restricts to a nonzero multiple of pi_d")
    lines.append(f"PASS {len(samples)} sampled maps over the cone: {n_compatible} compatible, "
               "all restrict to 0 at pi_d")
    return report


def oracle_d2_contains(datum: ToricDatum, level: FrobeniusLevel, d: FracVector) -> bool:
    return oracle_check(datum, level, d).verdict
