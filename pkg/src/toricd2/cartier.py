"""The second diagonal Cartier algebra of an affine toric ring.

For a fractional point ``d`` of the open anticanonical polytope ``P``, the
monomial map ``pi_d`` lifts to a map on ``R (x) R`` compatible with the
diagonal exactly when the open polytope ``int(P  ∩  (d - P))`` meets every
residue class of (1/q)Z^n / Z^n. This module evaluates that criterion with
reproducible certificates, extracts minimal generators under the monomial
twisting order, and tests diagonal F-splitting.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .lattice import (
    FracVector,
    FrobeniusLevel,
    ResidueClass,
    enumerate_classes,
    residue_class,
)
from .polytope import HPolytope, box as make_box, contains, frac_points, interior, intersect, is_bounded, reflect_translate
from .toric import ToricDatum, anticanonical, dual_leq, gorenstein_shift

__all__ = [
    "D2Certificate",
    "DomainError",
    "GeneratorSearch",
    "PiMap",
    "d2_contains",
    "d2_minimal_generators",
    "diagonal_polytope",
    "find_generators",
    "is_diagonally_split",
    "payne_basis",
    "pi_map",
]

log = logging.getLogger(__name__)

MEMBER = "Member"
NON_MEMBER = "NonMember"


class DomainError(ValueError):
    """A point is not a valid map index (wrong denominator or outside the open polytope)."""


@dataclass(frozen=True)
class PiMap:
    point: FracVector
    level: FrobeniusLevel

    def __str__(self):
        return f"pi_{self.point}"


def _check_point(datum: ToricDatum, level: FrobeniusLevel, d: FracVector):
    if d.dim != datum.dim:
        raise DomainError(f"point {d} has dimension {d.dim}, expected {datum.dim}")
    if d.den != level.q:
        raise DomainError(f"point {d!r} has denominator {d.den}, expected q = {level.q}")
    if not contains(interior(anticanonical(datum)), d):
        raise DomainError(f"point {d} is not in the interior of the anticanonical polytope")


def pi_map(datum: ToricDatum, level: FrobeniusLevel, a: FracVector) -> PiMap:
    """The basis map ``pi_a``, validated to send ``R^{1/q}`` into ``R``."""
    _check_point(datum, level, a)
    return PiMap(a, level)


def _as_box(box, n: int) -> HPolytope:
    if isinstance(box, HPolytope):
        return box
    intervals = list(box)
    if len(intervals) != n:
        raise ValueError(f"box needs {n} intervals")
    return make_box([Fraction(lo) for lo, _ in intervals], [Fraction(hi) for _, hi in intervals])


def payne_basis(datum: ToricDatum, level: FrobeniusLevel, box) -> list[PiMap]:
    """Basis maps ``pi_a`` of Hom(R^{1/q}, R) with ``a`` inside ``box``.

    ``box`` is either an :class:`HPolytope` or a sequence of ``(lo, hi)``
    rational intervals, one per coordinate.
    """
    region = _as_box(box, datum.dim)
    if not is_bounded(region):
        raise ValueError("box must be bounded")
    pts = frac_points(intersect(interior(anticanonical(datum)), region), level.q)
    return [PiMap(a, level) for a in pts]


def diagonal_polytope(datum: ToricDatum, d: FracVector) -> HPolytope:
    """The open polytope ``int(P ∩ (d - P))``."""
    P = anticanonical(datum)
    return interior(intersect(P, reflect_translate(d, P)))


@dataclass(frozen=True)
class D2Certificate:
    """Outcome of a membership query.

    A member carries one witness per residue class (the lexicographically
    first point of that class in the diagonal polytope); a non-member carries
    the lexicographically first class with no point there.
    """

    verdict: str
    d: FracVector
    level: FrobeniusLevel
    witnesses: dict[ResidueClass, FracVector] = field(default_factory=dict)
    missing_class: ResidueClass | None = None

    @property
    def is_member(self) -> bool:
        return self.verdict == MEMBER

    def __bool__(self):
        return self.is_member

    def verify(self, datum: ToricDatum) -> bool:
        """Re-check the certificate against a freshly built diagonal polytope."""
        Q = diagonal_polytope(datum, self.d)
        q = self.level.q
        if self.is_member:
            if len(self.witnesses) != q**datum.dim:
                return False
            return all(
                w.den == q and residue_class(w) == cls and contains(Q, w)
                for cls, w in self.witnesses.items()
            )
        if self.missing_class is None:
            return False
        return all(residue_class(pt) != self.missing_class for pt in frac_points(Q, q))


def d2_contains(datum: ToricDatum, level: FrobeniusLevel, d: FracVector) -> D2Certificate:
    """Decide whether ``pi_d`` lies in the degree-``e`` part of the diagonal Cartier algebra."""
    _check_point(datum, level, d)
    q = level.q
    witnesses: dict[ResidueClass, FracVector] = {}
    for pt in frac_points(diagonal_polytope(datum, d), q):
        witnesses.setdefault(residue_class(pt), pt)
    if len(witnesses) == q**datum.dim:
        return D2Certificate(MEMBER, d, level, dict(sorted(witnesses.items())))
    missing = next(c for c in enumerate_classes(level, datum.dim) if c not in witnesses)
    return D2Certificate(NON_MEMBER, d, level, missing_class=missing)


def is_diagonally_split(datum: ToricDatum, level: FrobeniusLevel | int, at_level: bool = False) -> bool:
    """Whether ``pi_0`` is in the diagonal Cartier algebra.

    Membership at e = 1 is equivalent to diagonal F-splitting, so by default
    only ``p`` is used. Pass ``at_level=True`` to test ``pi_0`` at the given
    ``e`` instead.
    """
    if not isinstance(level, FrobeniusLevel):
        level = FrobeniusLevel(int(level), 1)
    if not at_level:
        level = level.with_e(1)
    return d2_contains(datum, level, FracVector.zero(datum.dim, level.q)).is_member


def _minimal(points: Sequence[FracVector], datum: ToricDatum) -> list[FracVector]:
    return sorted(
        m for m in points if not any(o != m and dual_leq(o, m, datum) for o in points)
    )


def _members_in(datum: ToricDatum, level: FrobeniusLevel, region: HPolytope, cache: dict) -> list[FracVector]:
    out = []
    for a in frac_points(intersect(interior(anticanonical(datum)), region), level.q):
        if a not in cache:
            cache[a] = d2_contains(datum, level, a).is_member
        if cache[a]:
            out.append(a)
    return out


@dataclass(frozen=True)
class GeneratorSearch:
    generators: list[FracVector]
    box: list[tuple[Fraction, Fraction]]
    auto_box: bool


def find_generators(datum: ToricDatum, level: FrobeniusLevel, box=None, max_expansions: int = 8) -> GeneratorSearch:
    """Minimal members under the twisting order, with the search box used.

    Without ``box`` the search starts at ``v + [0, 2]^n`` around the
    Gorenstein shift ``v`` and widens by one unit on each side until one
    further widening leaves the minimal set unchanged.
    """
    n = datum.dim
    cache: dict[FracVector, bool] = {}
    if box is not None:
        region = _as_box(box, n)
        if not is_bounded(region):
            raise ValueError("box must be bounded")
        gens = _minimal(_members_in(datum, level, region, cache), datum)
        intervals = [(Fraction(lo), Fraction(hi)) for lo, hi in box] if not isinstance(box, HPolytope) else []
        return GeneratorSearch(gens, intervals, False)

    shift = gorenstein_shift(datum)
    if shift is None:
        raise ValueError("cone is not Q-Gorenstein; an explicit search box is required")

    def intervals_at(k):
        return [(c - k, c + 2 + k) for c in shift]

    def gens_at(k):
        iv = intervals_at(k)
        region = make_box([lo for lo, _ in iv], [hi for _, hi in iv])
        return _minimal(_members_in(datum, level, region, cache), datum)

    current = gens_at(0)
    for k in range(max_expansions):
        wider = gens_at(k + 1)
        if wider == current:
            return GeneratorSearch(current, intervals_at(k), True)
        log.debug("generator set changed when widening box to step %d", k + 1)
        current = wider
    raise RuntimeError(f"generator search did not stabilize after {max_expansions} expansions")


def d2_minimal_generators(datum: ToricDatum, level: FrobeniusLevel, box=None) -> list[FracVector]:
    """Minimal generators of the degree-``e`` part as a module over ``F^e_* R``."""
    return find_generators(datum, level, box).generators
