"""Splittings, F-signature volume, and splittings inside the diagonal Cartier algebra."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .cartier import d2_contains
from .lattice import CapExceededError, FracVector, FrobeniusLevel, enumeration_cap
from .polytope import HalfSpace, HPolytope, exact_volume, frac_points
from .toric import ToricDatum

__all__ = [
    "FsigRow",
    "d2_splitting_count",
    "d2_splitting_points",
    "fsig_sequence",
    "fsig_volume",
    "sig_polytope",
    "splitting_points",
]


def sig_polytope(datum: ToricDatum) -> HPolytope:
    """The half-open polytope ``{-1 < <x, v_rho> <= 0}``; its points at level q index splittings."""
    faces = []
    for r in datum.rays:
        faces.append(HalfSpace(r, Fraction(-1), ">"))
        faces.append(HalfSpace(r, Fraction(0), "<="))
    return HPolytope(datum.dim, tuple(faces))


def splitting_points(datum: ToricDatum, level: FrobeniusLevel) -> list[FracVector]:
    return frac_points(sig_polytope(datum), level.q)


def fsig_volume(datum: ToricDatum) -> Fraction:
    """F-signature of the toric ring, as the exact volume of the splitting polytope."""
    return exact_volume(sig_polytope(datum))


def d2_splitting_points(datum: ToricDatum, level: FrobeniusLevel) -> list[FracVector]:
    return [d for d in splitting_points(datum, level) if d2_contains(datum, level, d).is_member]


def d2_splitting_count(datum: ToricDatum, level: FrobeniusLevel) -> int:
    """Number of splittings ``pi_d`` that lie in the diagonal Cartier algebra."""
    return len(d2_splitting_points(datum, level))


class FsigRow(NamedTuple):
    e: int
    split_count: int
    d2_count: int
    split_ratio: Fraction
    d2_ratio: Fraction


def fsig_sequence(datum: ToricDatum, p: int, e_max: int, cap: int | None = None) -> list[FsigRow]:
    """Splitting counts and their normalized ratios for ``e = 1 .. e_max``.

    No limit is extrapolated; the rows are raw data.
    """
    limit = enumeration_cap(cap)
    rows = []
    for e in range(1, e_max + 1):
        level = FrobeniusLevel(p, e)
        qn = level.q**datum.dim
        if qn > limit:
            raise CapExceededError(f"q^n = {qn} exceeds the cap {limit}")
        split = splitting_points(datum, level)
        d2 = sum(1 for d in split if d2_contains(datum, level, d).is_member)
        rows.append(FsigRow(e, len(split), d2, Fraction(len(split), qn), Fraction(d2, qn)))
    return rows
