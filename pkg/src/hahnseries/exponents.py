"""The exponent group Q^k under the lexicographic order.

Exponents of a series are vectors of exact rationals with a fixed rank k
per session; rank 1 covers ordinary Puiseux exponents.  The group is
divisible (any exponent can be scaled by a rational) and totally ordered
by the lexicographic comparison, so archimedean classes are read off the
first nonzero coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import RankMismatchError

__all__ = [
    "Exponent",
    "GroupSpec",
    "as_exponent",
    "compare",
    "arch_class",
    "reach_count",
]


def _rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Exponent:
    """A vector of exact rationals compared lexicographically."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(_rational(c) for c in coords)
        if not coords:
            raise ValueError("rank must be at least 1")
        self.coords = coords

    @property
    def rank(self) -> int:
        return len(self.coords)

    def _check_rank(self, other: "Exponent"):
        if len(self.coords) != len(other.coords):
            raise RankMismatchError(
                f"rank {len(self.coords)} vs rank {len(other.coords)}"
            )

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def arch_class(self):
        """1-based index of the first nonzero coordinate; None for 0."""
        for j, c in enumerate(self.coords):
            if c != 0:
                return j + 1
        return None

    def scale(self, q) -> "Exponent":
        q = _rational(q)
        return Exponent(c * q for c in self.coords)

    def __add__(self, other):
        self._check_rank(other)
        return Exponent(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        self._check_rank(other)
        return Exponent(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return Exponent(-c for c in self.coords)

    def __mul__(self, q):
        return self.scale(q)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Exponent):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        self._check_rank(other)
        return self.coords < other.coords

    def __le__(self, other):
        self._check_rank(other)
        return self.coords <= other.coords

    def __gt__(self, other):
        self._check_rank(other)
        return self.coords > other.coords

    def __ge__(self, other):
        self._check_rank(other)
        return self.coords >= other.coords

    def __str__(self):
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"Exponent({self})"


@dataclass(frozen=True)
class GroupSpec:
    """Rank of the exponent group, fixed for the lifetime of a session."""

    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("rank must be a positive integer")

    def zero(self) -> Exponent:
        return Exponent((Fraction(0),) * self.k)

    def exponent(self, *coords) -> Exponent:
        if len(coords) != self.k:
            raise RankMismatchError(f"expected {self.k} coordinates, got {len(coords)}")
        return Exponent(coords)

    def unit(self) -> Exponent:
        """The exponent of the series variable itself: (1, 0, ..., 0)."""
        return Exponent((Fraction(1),) + (Fraction(0),) * (self.k - 1))


def as_exponent(x, rank=None) -> Exponent:
    """Coerce a rational, tuple, or Exponent; check rank when given."""
    if isinstance(x, Exponent):
        e = x
    elif isinstance(x, (tuple, list)):
        e = Exponent(x)
    else:
        e = Exponent((x,))
    if rank is not None and e.rank != rank:
        raise RankMismatchError(f"expected rank {rank}, got rank {e.rank}")
    return e


def compare(g: Exponent, h: Exponent) -> int:
    """Lexicographic comparison: -1, 0, or 1."""
    g._check_rank(h)
    if g.coords < h.coords:
        return -1
    if g.coords > h.coords:
        return 1
    return 0


def arch_class(g: Exponent):
    return g.arch_class()


def reach_count(step: Exponent, target: Exponent):
    """Least n >= 0 with n*step >= target, or None if no integer works.

    step must be positive.  In lexicographic groups of rank > 1 the
    target may be unreachable (no archimedean bound), which is exactly
    the case the truncated analytic operations must refuse.
    """
    step._check_rank(target)
    if not step > step.scale(0):
        raise ValueError("step must be positive")
    zero = step.scale(0)
    if zero >= target:
        return 0
    if step >= target:
        return 1
    j = step.arch_class() - 1
    for i in range(j):
        ti = target.coords[i]
        if ti > 0:
            return None
        if ti < 0:
            # n*step has 0 in coordinate i, which already exceeds target
            return 1
    # prefixes agree; compare at the leading coordinate of step
    base = target.coords[j] / step.coords[j]
    n = max(1, int(base))
    while not step.scale(n) >= target:
        n += 1
    return n
