"""The coefficient field: rational functions of formal transcendentals.

Elements of Q(a1, ..., am) are kept in a unique canonical form, with
numerator and denominator coprime and the denominator monic under
graded lex, so equal field elements have identical representations.
A place substitutes one transcendental by a rational; its image is the
distinguished value INFINITE when the (already cancelled) denominator
vanishes under the substitution.  Given finitely many elements, only
finitely many substitution targets hit a pole, so a finite place can
always be found by scanning candidates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .polynomials import Poly, divexact, poly_gcd

__all__ = [
    "Coefficient",
    "Place",
    "INFINITE",
    "as_coefficient",
    "apply_place",
    "variables_of",
    "finite_place_for",
    "default_candidates",
]


class _Infinite:
    """The value a place takes at a pole."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "infinite"


INFINITE = _Infinite()


class Coefficient:
    """Canonical rational function num/den with den monic, gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly, _canonical=False):
        if _canonical:
            self.num = num
            self.den = den
            return
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = Poly.zero()
            self.den = Poly.one()
            return
        g = poly_gcd(num, den)
        if not (g.is_const() and g.const_value() == 1):
            num = divexact(num, g)
            den = divexact(den, g)
        lc = den.leading_coeff()
        if lc != 1:
            num = num.scale(1 / lc)
            den = den.scale(1 / lc)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, q) -> "Coefficient":
        q = q if isinstance(q, Fraction) else Fraction(q)
        return cls(Poly.const(q), Poly.one(), _canonical=True)

    @classmethod
    def alpha(cls, j) -> "Coefficient":
        return cls(Poly.variable(j), Poly.one(), _canonical=True)

    @classmethod
    def zero(cls) -> "Coefficient":
        return cls.const(0)

    @classmethod
    def one(cls) -> "Coefficient":
        return cls.const(1)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def as_fraction(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"not a constant: {self}")
        if self.num.is_zero():
            return Fraction(0)
        return self.num.const_value() / self.den.const_value()

    def variables(self):
        return self.num.variables() | self.den.variables()

    def __add__(self, other):
        other = as_coefficient(other)
        if self.den == other.den:
            return Coefficient(self.num + other.num, self.den)
        return Coefficient(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = as_coefficient(other)
        if self.den == other.den:
            return Coefficient(self.num - other.num, self.den)
        return Coefficient(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __rsub__(self, other):
        return as_coefficient(other) - self

    def __neg__(self):
        return Coefficient(-self.num, self.den, _canonical=True)

    def __mul__(self, other):
        other = as_coefficient(other)
        return Coefficient(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_coefficient(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero coefficient")
        return Coefficient(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return as_coefficient(other) / self

    def __pow__(self, n):
        if n < 0:
            return Coefficient.one() / self**-n
        return Coefficient(self.num**n, self.den**n)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Coefficient.const(other)
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_const() and self.den.const_value() == 1:
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1 or num.startswith("-"):
            num = f"({num})"
        return f"{num}/({self.den})"

    def __repr__(self):
        return f"Coefficient({self})"


def as_coefficient(x) -> Coefficient:
    if isinstance(x, Coefficient):
        return x
    if isinstance(x, (int, Fraction)):
        return Coefficient.const(x)
    raise TypeError(f"cannot coerce {x!r} to a coefficient")


@dataclass(frozen=True)
class Place:
    """Substitution of one transcendental by a rational: a_var -> q."""

    var: int
    q: Fraction

    def __post_init__(self):
        if self.var < 1:
            raise ValueError("variable indices start at 1")
        if not isinstance(self.q, Fraction):
            object.__setattr__(self, "q", Fraction(self.q))

    def __str__(self):
        return f"a{self.var} -> {self.q}"


def apply_place(c: Coefficient, place: Place):
    """Specialize one transcendental; INFINITE exactly at the poles.

    The input is canonical, so numerator and denominator share no factor
    and at most one of them can vanish identically under the
    substitution; the map is a ring homomorphism wherever it is finite.
    """
    den = c.den.subs_var(place.var, place.q)
    if den.is_zero():
        return INFINITE
    num = c.num.subs_var(place.var, place.q)
    return Coefficient(num, den)


def variables_of(c: Coefficient):
    """Indices of the transcendentals occurring in the canonical form."""
    return c.variables()


def default_candidates():
    """0, 1, -1, 2, -2, ...; the scan skips 0 (inverses must stay finite)."""
    yield 0
    n = 1
    while True:
        yield n
        yield -n
        n += 1


def finite_place_for(cs, var, candidates=None) -> Place:
    """First candidate q != 0 whose place a_var -> q is finite on all of cs.

    Each element has finitely many poles in a_var, so with infinitely
    many distinct candidates the scan terminates.
    """
    if candidates is None:
        candidates = default_candidates()
    for q in candidates:
        q = q if isinstance(q, Fraction) else Fraction(q)
        if q == 0:
            continue
        place = Place(var, q)
        if all(apply_place(c, place) is not INFINITE for c in cs):
            return place
    raise PreconditionError(
        f"candidate budget exhausted while seeking a finite place for a{var}"
    )
