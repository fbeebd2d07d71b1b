"""Exact H-representation polyhedra with per-face strictness.

A polytope is a list of half-spaces ``<normal, x> REL bound`` with ``REL`` one
of ``>=``, ``>``, ``<=``, ``<``. Everything here is exact: bounds are
:class:`~fractions.Fraction` and vertex/volume computations run over the
rationals. Lattice-point scans use integer numpy arrays with an overflow guard
that falls back to Python integers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .lattice import CapExceededError, FracVector, enumeration_cap

__all__ = [
    "DIM_CAP",
    "HalfSpace",
    "HPolytope",
    "UnboundedError",
    "box",
    "contains",
    "count_points",
    "exact_volume",
    "frac_points",
    "interior",
    "intersect",
    "is_bounded",
    "reflect_translate",
    "vertices",
]

DIM_CAP = 4

RELATIONS = (">=", ">", "<=", "<")
_FLIP = {">=": "<=", ">": "<", "<=": ">=", "<": ">"}
_STRICT = {">=": ">", ">": ">", "<=": "<", "<": "<"}
_CLOSED = {">=": ">=", ">": ">=", "<=": "<=", "<": "<="}


class UnboundedError(ValueError):
    """The operation needs a bounded polytope."""


@dataclass(frozen=True)
class HalfSpace:
    normal: tuple[int, ...]
    bound: Fraction
    relation: str = ">="

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(int(a) for a in self.normal))
        object.__setattr__(self, "bound", Fraction(self.bound))
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        if not any(self.normal):
            raise ValueError("half-space normal must be nonzero")

    @property
    def strict(self) -> bool:
        return self.relation in (">", "<")

    def ge_form(self) -> tuple[tuple[int, ...], Fraction, bool]:
        """Rewrite as ``<a, x> >= b`` (or ``>`` when strict)."""
        if self.relation in (">=", ">"):
            return self.normal, self.bound, self.strict
        return tuple(-a for a in self.normal), -self.bound, self.strict

    def holds(self, value: Fraction) -> bool:
        """Test the relation for a precomputed value of ``<normal, x>``."""
        r = self.relation
        if r == ">=":
            return value >= self.bound
        if r == ">":
            return value > self.bound
        if r == "<=":
            return value <= self.bound
        return value < self.bound

    def __str__(self):
        terms = " + ".join(f"{a}*x{i}" for i, a in enumerate(self.normal) if a)
        return f"{terms} {self.relation} {self.bound}"


@dataclass(frozen=True)
class HPolytope:
    dim: int
    faces: tuple[HalfSpace, ...]

    def __post_init__(self):
        faces = tuple(self.faces)
        for f in faces:
            if len(f.normal) != self.dim:
                raise ValueError(f"face {f} does not live in dimension {self.dim}")
        object.__setattr__(self, "faces", faces)

    @classmethod
    def from_inequalities(cls, rows, relation=">="):
        """Build from ``(normal, bound)`` pairs or ``(normal, bound, relation)`` triples."""
        faces = []
        dim = None
        for row in rows:
            if len(row) == 3:
                normal, bound, rel = row
            else:
                (normal, bound), rel = row, relation
            faces.append(HalfSpace(tuple(normal), Fraction(bound), rel))
            dim = len(normal) if dim is None else dim
        if dim is None:
            raise ValueError("need at least one face to infer the dimension")
        return cls(dim, tuple(faces))

    def closure(self) -> "HPolytope":
        return HPolytope(self.dim, tuple(HalfSpace(f.normal, f.bound, _CLOSED[f.relation]) for f in self.faces))

    # convenience wrappers around the module-level operations
    def __contains__(self, x):
        return contains(self, x)

    def interior(self):
        return interior(self)

    def is_bounded(self):
        return is_bounded(self)

    def vertices(self):
        return vertices(self)

    def volume(self):
        return exact_volume(self)

    def __str__(self):
        return "{" + ", ".join(str(f) for f in self.faces) + "}"


def box(lower: Sequence, upper: Sequence, strict: bool = False) -> HPolytope:
    """The axis-parallel box ``lower <= x <= upper``."""
    n = len(lower)
    if len(upper) != n:
        raise ValueError("dimension mismatch")
    lo_rel, hi_rel = (">", "<") if strict else (">=", "<=")
    faces = []
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        faces.append(HalfSpace(e, Fraction(lower[i]), lo_rel))
        faces.append(HalfSpace(e, Fraction(upper[i]), hi_rel))
    return HPolytope(n, tuple(faces))


def _coords(x) -> tuple[Fraction, ...]:
    if isinstance(x, FracVector):
        return x.coords()
    return tuple(Fraction(c) for c in x)


def contains(P: HPolytope, x) -> bool:
    """True iff ``x`` satisfies every face of ``P`` with its declared relation."""
    if isinstance(x, FracVector):
        if x.dim != P.dim:
            raise ValueError("dimension mismatch")
        return all(f.holds(x.pair(f.normal)) for f in P.faces)
    c = _coords(x)
    if len(c) != P.dim:
        raise ValueError("dimension mismatch")
    return all(f.holds(sum((a * xi for a, xi in zip(f.normal, c)), Fraction(0))) for f in P.faces)


def interior(P: HPolytope) -> HPolytope:
    return HPolytope(P.dim, tuple(HalfSpace(f.normal, f.bound, _STRICT[f.relation]) for f in P.faces))


def intersect(P: HPolytope, Q: HPolytope) -> HPolytope:
    if P.dim != Q.dim:
        raise ValueError("dimension mismatch")
    return HPolytope(P.dim, P.faces + Q.faces)


def reflect_translate(d, P: HPolytope) -> HPolytope:
    """The set ``{d - x : x in P}``."""
    dc = _coords(d)
    if len(dc) != P.dim:
        raise ValueError("dimension mismatch")
    faces = []
    for f in P.faces:
        shift = sum((a * c for a, c in zip(f.normal, dc)), Fraction(0))
        faces.append(HalfSpace(f.normal, shift - f.bound, _FLIP[f.relation]))
    return HPolytope(P.dim, tuple(faces))


# --- exact linear algebra over Q --------------------------------------------

def _row_reduce(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the matrix and its pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def _rank(rows) -> int:
    return len(_row_reduce([[Fraction(v) for v in r] for r in rows])[1])


def _solve_square(A, b) -> tuple[Fraction, ...] | None:
    """Unique solution of ``A x = b`` or None when ``A`` is singular."""
    n = len(A)
    aug = [[Fraction(v) for v in A[i]] + [Fraction(b[i])] for i in range(n)]
    red, piv = _row_reduce(aug)
    if piv != list(range(n)):
        return None
    return tuple(red[i][n] for i in range(n))


def _kernel_vector(rows, n: int) -> tuple[Fraction, ...]:
    """A nonzero vector spanning the kernel of a rank ``n - 1`` matrix."""
    if not rows:
        return (Fraction(1),)
    red, piv = _row_reduce([[Fraction(v) for v in r] for r in rows])
    free = next(c for c in range(n) if c not in piv)
    vec = [Fraction(0)] * n
    vec[free] = Fraction(1)
    for i, c in enumerate(piv):
        vec[c] = -red[i][free]
    return tuple(vec)


def _det(M) -> Fraction:
    n = len(M)
    m = [[Fraction(v) for v in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                factor = m[i][c] / m[c][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[c])]
    return det


# --- boundedness, vertices, volume ------------------------------------------

def is_bounded(P: HPolytope) -> bool:
    """Decide whether the recession cone ``{v : <a, v> >= 0 for all ge-form faces}`` is zero.

    If the cone is nonzero and the normals have full rank, the cone is pointed
    and has an extreme ray cut out by ``n - 1`` independent normals; we look
    for one among the kernels of all such subsets.
    """
    n = P.dim
    normals = [f.ge_form()[0] for f in P.faces]
    if not normals or _rank(normals) < n:
        return False
    for sub in itertools.combinations(normals, n - 1):
        if sub and _rank(sub) < n - 1:
            continue
        k = _kernel_vector(list(sub), n)
        for sign in (1, -1):
            if all(sum(a * sign * kv for a, kv in zip(nv, k)) >= 0 for nv in normals):
                return False
    return True


def _require_bounded(P: HPolytope, what: str):
    if P.dim > DIM_CAP:
        raise ValueError(f"{what} is limited to dimension <= {DIM_CAP}")
    if not is_bounded(P):
        raise UnboundedError(f"{what} needs a bounded polytope")


def vertices(P: HPolytope) -> list[tuple[Fraction, ...]]:
    """Vertices of the closure of a bounded ``P``, sorted lexicographically."""
    _require_bounded(P, "vertex enumeration")
    n = P.dim
    ge = [f.ge_form() for f in P.faces]
    found = set()
    for idx in itertools.combinations(range(len(ge)), n):
        sol = _solve_square([ge[i][0] for i in idx], [ge[i][1] for i in idx])
        if sol is None:
            continue
        if all(sum((a * x for a, x in zip(nv, sol)), Fraction(0)) >= b for nv, b, _ in ge):
            found.add(sol)
    return sorted(found)


def _affine_rank(points) -> int:
    if not points:
        return -1
    base = points[0]
    return _rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


def _pulling_triangulation(verts, ge_faces, vids: frozenset, k: int):
    """Triangulate the ``k``-dimensional face spanned by vertex ids ``vids``.

    Cones from the smallest vertex over the triangulated facets of the face
    that avoid it. Facets are found as maximal vertex subsets lying on one
    of the supporting hyperplanes.
    """
    if k == 0:
        return [(min(vids),)]
    apex = min(vids)
    subfaces = set()
    for nv, b, _ in ge_faces:
        on = frozenset(i for i in vids if sum(a * x for a, x in zip(nv, verts[i])) == b)
        if apex in on or on == vids or not on:
            continue
        if _affine_rank([verts[i] for i in sorted(on)]) == k - 1:
            subfaces.add(on)
    simplices = []
    for sf in sorted(subfaces, key=sorted):
        for s in _pulling_triangulation(verts, ge_faces, sf, k - 1):
            simplices.append((apex,) + s)
    return simplices


def exact_volume(P: HPolytope) -> Fraction:
    """Euclidean volume of the closure of a bounded polytope, as an exact rational."""
    _require_bounded(P, "volume")
    verts = vertices(P)
    n = P.dim
    if _affine_rank(verts) < n:
        return Fraction(0)
    ge = [f.ge_form() for f in P.faces]
    total = Fraction(0)
    for simplex in _pulling_triangulation(verts, ge, frozenset(range(len(verts))), n):
        base = verts[simplex[0]]
        M = [[a - b for a, b in zip(verts[i], base)] for i in simplex[1:]]
        total += abs(_det(M))
    return total / math.factorial(n)


# --- fractional lattice points ----------------------------------------------

def _grid_ranges(P: HPolytope, q: int) -> list[range] | None:
    verts = vertices(P.closure())
    if not verts:
        return None
    ranges = []
    for i in range(P.dim):
        lo = min(v[i] for v in verts) * q
        hi = max(v[i] for v in verts) * q
        ranges.append(range(math.ceil(lo), math.floor(hi) + 1))
    return ranges


def _integer_faces(P: HPolytope, q: int):
    """Faces rescaled to integers: ``<a, N> * den  REL  num * q`` for numerators ``N``."""
    out = []
    for f in P.faces:
        a, b, strict = f.ge_form()
        scaled = [x * b.denominator for x in a]
        out.append((scaled, b.numerator * q, strict))
    return out


def _scan(P: HPolytope, q: int, cap: int | None):
    """Yield boolean masks and numerator blocks for the bounding-box grid, one slab at a time."""
    if q <= 0:
        raise ValueError("denominator must be positive")
    _require_bounded(P, "lattice-point enumeration")
    ranges = _grid_ranges(P, q)
    if ranges is None or any(len(r) == 0 for r in ranges):
        return
    total = math.prod(len(r) for r in ranges)
    limit = enumeration_cap(cap)
    if total > limit:
        raise CapExceededError(f"scan of {total} grid points exceeds the cap {limit}")
    faces = _integer_faces(P, q)
    extent = max(max(abs(r.start), abs(r.stop)) for r in ranges)
    worst = max((sum(abs(c) for c in a) * extent + abs(rhs) for a, rhs, _ in faces), default=0)
    dtype = np.int64 if worst < 2**62 else object
    rest = ranges[1:]
    if rest:
        tail = np.array(list(itertools.product(*rest)), dtype=dtype).reshape(-1, len(rest))
    else:
        tail = np.zeros((1, 0), dtype=dtype)
    for x0 in ranges[0]:
        block = np.empty((tail.shape[0], P.dim), dtype=dtype)
        block[:, 0] = x0
        block[:, 1:] = tail
        mask = np.ones(block.shape[0], dtype=bool)
        for a, rhs, strict in faces:
            lhs = block @ np.array(a, dtype=dtype)
            mask &= (lhs > rhs) if strict else (lhs >= rhs)
        yield block, mask


def frac_points(P: HPolytope, q: int, cap: int | None = None) -> list[FracVector]:
    """All points of (1/q)Z^n in ``P`` respecting strictness, in lexicographic order."""
    out = []
    for block, mask in _scan(P, q, cap):
        out.extend(FracVector(row, q) for row in block[mask].tolist())
    return out


def count_points(P: HPolytope, q: int, cap: int | None = None) -> int:
    """Number of points of (1/q)Z^n in ``P``."""
    return sum(int(mask.sum()) for _, mask in _scan(P, q, cap))
