from fractions import Fraction

from hahnseries.polynomials import (
    Poly,
    divexact,
    poly_gcd,
    poly_lcm,
    poly_sqrt,
)

a1 = Poly.variable(1)
a2 = Poly.variable(2)
a3 = Poly.variable(3)
one = Poly.one()


def test_basic_arithmetic():
    p = (a1 + one) * (a1 - one)
    assert p == a1 * a1 - one
    assert (a1 + a2) ** 2 == a1 * a1 + a1 * a2.scale(2) + a2 * a2
    assert (a1 - a1).is_zero()


def test_grlex_leading():
    p = a1 * a1 + a1 * a2 + a2
    assert p.leading_mono() == ((1, 2),)
    q = a1 * a2 * a2 + a1 * a1 * a2
    assert q.leading_mono() == ((1, 2), (2, 1))


def test_gcd_univariate():
    assert poly_gcd(a1 * a1 - one, a1 - one) == a1 - one
    assert poly_gcd(a1.scale(2), a1.scale(3)) == a1
    assert poly_gcd(Poly.const(4), a1) == one


def test_gcd_multivariate():
    p = (a1 + a2) * (a1 - a2)
    q = (a1 + a2) * a1
    assert poly_gcd(p, q) == a1 + a2
    r = (a1 * a2 + one) * (a2 + a3)
    s = (a1 * a2 + one) * a3
    assert poly_gcd(r, s) == a1 * a2 + one


def test_gcd_random_products(rng):
    from conftest import rand_poly

    for _ in range(60):
        g = rand_poly(rng, (1, 2), max_deg=1, terms=2)
        if g.is_zero():
            g = a1 + one
        p = g * rand_poly(rng, (1, 2), max_deg=1, terms=2)
        q = g * rand_poly(rng, (1, 2), max_deg=1, terms=2)
        d = poly_gcd(p, q)
        if p.is_zero() or q.is_zero():
            continue
        assert divexact(p, d) is not None
        assert divexact(q, d) is not None
        assert divexact(d, g.monic()) is not None


def test_divexact():
    assert divexact(a1 * a1 - one, a1 - one) == a1 + one
    assert divexact(a1 * a2, a1) == a2
    assert divexact(a1 * a2 + one, a1) is None


def test_lcm():
    assert poly_lcm(a1, a2) == a1 * a2
    l = poly_lcm(a1 * (a1 + one), (a1 + one) * a2)
    assert l == (a1 * (a1 + one) * a2).monic()


def test_subs_var():
    p = a1 * a1 + a2
    assert p.subs_var(1, Fraction(3)) == Poly.const(9) + a2
    assert p.subs_var(2, Fraction(-1)) == a1 * a1 - one


def test_sqrt():
    assert poly_sqrt((a1 + a2) ** 2) == a1 + a2
    assert poly_sqrt(a1 * a1.scale(4)) == a1.scale(2)
    assert poly_sqrt(Poly.const(Fraction(9, 4))) == Poly.const(Fraction(3, 2))
    assert poly_sqrt(Poly.const(2)) is None
    assert poly_sqrt(a1) is None
    assert poly_sqrt(a1 * a2) is None
    assert poly_sqrt((a1 * a2 - one) ** 2) == a1 * a2 - one
    assert poly_sqrt(-((a1 + one) ** 2)) is None


def test_sqrt_random(rng):
    from conftest import rand_poly

    for _ in range(40):
        p = rand_poly(rng, (1, 2), max_deg=2, terms=3)
        if p.is_zero():
            continue
        sq = p * p
        root = poly_sqrt(sq)
        assert root is not None
        assert root * root == sq


def test_str_forms():
    assert str(a1 * a1 - one) == "a1^2 - 1"
    assert str(Poly.zero()) == "0"
    assert str(a1.scale(Fraction(-3, 2)) + a2) == "-3/2*a1 + a2"
