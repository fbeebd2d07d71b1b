"""Exact lattice arithmetic on the fractional lattice (1/q)Z^n.

Rationals are :class:`fractions.Fraction`. A point of (1/q)Z^n is a
:class:`FracVector` holding integer numerators over a shared positive
denominator; residue classes modulo Z^n are stored q-scaled as tuples with
entries in ``[0, q)``.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

__all__ = [
    "CapExceededError",
    "DEFAULT_CAP",
    "FracVector",
    "FrobeniusLevel",
    "ResidueClass",
    "enumerate_classes",
    "enumeration_cap",
    "is_prime",
    "primitivize",
    "residue_class",
]

DEFAULT_CAP = 10**7
CAP_ENV_VAR = "TORICD2_CAP"

ResidueClass = tuple[int, ...]


class CapExceededError(RuntimeError):
    """Raised when an enumeration would exceed the configured size cap."""


def enumeration_cap(cap: int | None = None) -> int:
    """Resolve the enumeration cap: explicit value, then environment, then default."""
    if cap is not None:
        return int(cap)
    env = os.environ.get(CAP_ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_CAP


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % k for k in range(3, math.isqrt(p) + 1, 2))


@dataclass(frozen=True)
class FrobeniusLevel:
    """The pair (p, e) together with ``q = p**e``."""

    p: int
    e: int = 1

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p!r}")
        if not isinstance(self.e, int) or self.e < 1:
            raise ValueError(f"e must be a positive integer, got {self.e!r}")

    @property
    def q(self) -> int:
        return self.p**self.e

    def with_e(self, e: int) -> "FrobeniusLevel":
        return FrobeniusLevel(self.p, e)


class FracVector:
    """A point ``numerators / denominator`` of (1/q)Z^n.

    The denominator is the declared level q and is *not* reduced, so
    ``FracVector((2, 0), 4)`` keeps ``den == 4``. Equality and hashing are
    mathematical: vectors over different denominators compare equal when
    they describe the same point.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Iterable[int], den: int = 1):
        num = tuple(int(x) for x in num)
        den = int(den)
        if den <= 0:
            raise ValueError("denominator must be positive")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("FracVector is immutable")

    @classmethod
    def from_rationals(cls, coords: Sequence, den: int | None = None) -> "FracVector":
        """Build from rationals, over ``den`` if given, else over the lcm of the denominators."""
        fr = [Fraction(c) for c in coords]
        if den is None:
            den = math.lcm(1, *(f.denominator for f in fr))
        num = []
        for f in fr:
            scaled = f * den
            if scaled.denominator != 1:
                raise ValueError(f"{f} is not in (1/{den})Z")
            num.append(scaled.numerator)
        return cls(num, den)

    @classmethod
    def zero(cls, n: int, den: int = 1) -> "FracVector":
        return cls((0,) * n, den)

    @property
    def dim(self) -> int:
        return len(self.num)

    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def rescale(self, den: int) -> "FracVector":
        """Express the same point over denominator ``den`` (must be a multiple-compatible value)."""
        if den == self.den:
            return self
        out = []
        for x in self.num:
            scaled = Fraction(x * den, self.den)
            if scaled.denominator != 1:
                raise ValueError(f"point is not in (1/{den})Z^n")
            out.append(scaled.numerator)
        return FracVector(out, den)

    def is_integral(self) -> bool:
        return all(x % self.den == 0 for x in self.num)

    def _common(self, other: "FracVector") -> tuple[tuple[int, ...], tuple[int, ...], int]:
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        den = math.lcm(self.den, other.den)
        a = tuple(x * (den // self.den) for x in self.num)
        b = tuple(x * (den // other.den) for x in other.num)
        return a, b, den

    def __add__(self, other: "FracVector") -> "FracVector":
        a, b, den = self._common(other)
        return FracVector((x + y for x, y in zip(a, b)), den)

    def __sub__(self, other: "FracVector") -> "FracVector":
        a, b, den = self._common(other)
        return FracVector((x - y for x, y in zip(a, b)), den)

    def __neg__(self) -> "FracVector":
        return FracVector((-x for x in self.num), self.den)

    def pair(self, v: Sequence[int]) -> Fraction:
        """The pairing <self, v> with an integer vector."""
        if len(v) != self.dim:
            raise ValueError("dimension mismatch")
        return Fraction(sum(x * y for x, y in zip(self.num, v)), self.den)

    def _key(self) -> tuple[Fraction, ...]:
        return self.coords()

    def __eq__(self, other):
        if not isinstance(other, FracVector):
            return NotImplemented
        if self.dim != other.dim:
            return False
        a, b, _ = self._common(other)
        return a == b

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other: "FracVector") -> bool:
        return self._key() < other._key()

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords())

    def __len__(self) -> int:
        return self.dim

    def __repr__(self):
        return f"FracVector({list(self.num)}, {self.den})"

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords()) + ")"


def residue_class(v: FracVector) -> ResidueClass:
    """Canonical q-scaled representative of ``v`` modulo Z^n."""
    return tuple(x % v.den for x in v.num)


def enumerate_classes(level: FrobeniusLevel | int, n: int, cap: int | None = None) -> list[ResidueClass]:
    """All q**n residue classes of (1/q)Z^n / Z^n in lexicographic order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    q = level.q if isinstance(level, FrobeniusLevel) else int(level)
    limit = enumeration_cap(cap)
    if q**n > limit:
        raise CapExceededError(f"{q}^{n} residue classes exceed the cap {limit}")
    return list(itertools.product(range(q), repeat=n))


def primitivize(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    v = tuple(int(x) for x in v)
    g = math.gcd(*v)
    if g == 0:
        raise ValueError("cannot primitivize the zero vector")
    return tuple(x // g for x in v)
