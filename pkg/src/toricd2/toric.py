"""Affine toric data: a single pointed, full-dimensional cone given by its rays."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .lattice import FracVector, primitivize
from .polytope import HalfSpace, HPolytope, _det, _kernel_vector, _rank, _row_reduce

__all__ = [
    "InvalidConeError",
    "ToricDatum",
    "anticanonical",
    "dual_leq",
    "from_rays",
    "gorenstein_shift",
    "is_smooth",
]


class InvalidConeError(ValueError):
    """Rays do not describe a pointed full-dimensional cone."""


def _dual_cone_rays(rays: Sequence[tuple[int, ...]], n: int) -> list[tuple[int, ...]]:
    """Primitive integer generators of the extreme rays of the dual cone.

    These are the inward facet normals of the cone: kernels of rank ``n - 1``
    subsets of rays, oriented so every ray pairs nonnegatively.
    """
    found = set()
    for sub in itertools.combinations(rays, n - 1):
        if sub and _rank(sub) < n - 1:
            continue
        k = _kernel_vector(list(sub), n)
        den = math.lcm(*(c.denominator for c in k))
        kint = primitivize([int(c * den) for c in k])
        for sign in (1, -1):
            w = tuple(sign * c for c in kint)
            if all(sum(a * b for a, b in zip(w, r)) >= 0 for r in rays):
                found.add(w)
    return sorted(found)


def _is_pointed(rays: list[tuple[int, ...]]) -> bool:
    """Pointedness, decided inside the linear span of the rays.

    Rays are rewritten in coordinates of a basis of their span, where the
    cone is full-dimensional; it is pointed iff its dual cone is too.
    """
    r = _rank(rays)
    basis = [rays[i] for i in _independent_rows(rays)]
    coords = []
    for v in rays:
        aug = [[Fraction(basis[j][i]) for j in range(r)] + [Fraction(v[i])] for i in range(len(v))]
        red, _ = _row_reduce(aug)
        c = [red[k][r] for k in range(r)]
        den = math.lcm(*(x.denominator for x in c))
        coords.append(tuple(int(x * den) for x in c))
    if r == 1:
        return all(c[0] > 0 for c in coords) or all(c[0] < 0 for c in coords)
    dual = _dual_cone_rays(sorted(set(coords)), r)
    return bool(dual) and _rank(dual) == r


def _independent_rows(rows) -> list[int]:
    chosen: list[int] = []
    for i in range(len(rows)):
        if _rank([rows[j] for j in chosen + [i]]) > len(chosen):
            chosen.append(i)
    return chosen


@dataclass(frozen=True)
class ToricDatum:
    """Primitive extremal ray generators of a pointed full-dimensional cone in R^n.

    Build instances with :func:`from_rays`, which validates and normalizes.
    """

    dim: int
    rays: tuple[tuple[int, ...], ...]
    dual_rays: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    def pair(self, u) -> list[Fraction]:
        """Pairings ``<u, v_rho>`` for every ray."""
        if isinstance(u, FracVector):
            return [u.pair(r) for r in self.rays]
        u = [Fraction(c) for c in u]
        return [sum((a * b for a, b in zip(u, r)), Fraction(0)) for r in self.rays]

    def in_dual_cone(self, w) -> bool:
        return all(x >= 0 for x in self.pair(w))

    def transform(self, U) -> "ToricDatum":
        """Apply an integer matrix to every ray (``v -> U v``)."""
        rays = [tuple(sum(U[i][j] * r[j] for j in range(self.dim)) for i in range(self.dim)) for r in self.rays]
        return from_rays(rays)


def from_rays(raw: Sequence[Sequence[int]]) -> ToricDatum:
    """Validate ray generators and return a normalized :class:`ToricDatum`.

    Rays are primitivized, deduplicated and sorted. The cone must be
    full-dimensional and pointed, and every given ray must be extremal.
    """
    raw = [tuple(int(c) for c in r) for r in raw]
    if not raw:
        raise InvalidConeError("need at least one ray")
    n = len(raw[0])
    if n < 1 or any(len(r) != n for r in raw):
        raise InvalidConeError("rays must share a positive dimension")
    rays = []
    for r in raw:
        try:
            rays.append(primitivize(r))
        except ValueError:
            raise InvalidConeError("zero ray") from None
    rays = sorted(set(rays))
    if not _is_pointed(rays):
        raise InvalidConeError("cone is not pointed")
    if _rank(rays) < n:
        raise InvalidConeError("rays do not span a full-dimensional cone")
    dual = _dual_cone_rays(rays, n)
    for r in rays:
        on = [w for w in dual if sum(a * b for a, b in zip(w, r)) == 0]
        if n > 1 and (not on or _rank(on) < n - 1):
            raise InvalidConeError(f"ray {r} is not extremal")
    return ToricDatum(n, tuple(rays), tuple(dual))


def anticanonical(datum: ToricDatum) -> HPolytope:
    """``{u : <u, v_rho> >= -1 for every ray}``."""
    return HPolytope(datum.dim, tuple(HalfSpace(r, Fraction(-1), ">=") for r in datum.rays))


def gorenstein_shift(datum: ToricDatum) -> tuple[Fraction, ...] | None:
    """A rational ``v`` with ``<v, v_rho> = -1`` for all rays, or None if there is none."""
    n = datum.dim
    aug = [[Fraction(c) for c in r] + [Fraction(-1)] for r in datum.rays]
    red, piv = _row_reduce(aug)
    if n in piv:
        return None
    v = [Fraction(0)] * n
    for i, c in enumerate(piv):
        v[c] = red[i][n]
    return tuple(v)


def is_smooth(datum: ToricDatum) -> bool:
    """Rays form a lattice basis."""
    return len(datum.rays) == datum.dim and abs(_det(datum.rays)) == 1


def dual_leq(a: FracVector, b: FracVector, datum: ToricDatum) -> bool:
    """True iff ``b - a`` lies in the dual cone, i.e. ``pi_b`` is ``pi_a`` twisted by a monomial."""
    if a.den != b.den:
        raise ValueError(f"denominator mismatch: {a.den} vs {b.den}")
    w = [y - x for x, y in zip(a.num, b.num)]
    return all(sum(c * r for c, r in zip(w, ray)) >= 0 for ray in datum.rays)
