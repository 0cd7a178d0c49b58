#!/usr/bin/env python3
"""Optimal approximation demo.

Runs the inclusion-exclusion construction on a series whose
coefficients mix two transcendentals, printing the full summand table,
and then builds a small restricted exponential from matched additive
and multiplicative bases.
"""

from hahnseries import (
    BasisFamily,
    Coefficient,
    ScalarField,
    TruncatedSeries,
    build_restricted_exp,
    exp,
    inclusion_exclusion_approx,
    mult_inclusion_exclusion,
)

PREC = 8


def main():
    a1, a2 = Coefficient.alpha(1), Coefficient.alpha(2)
    f = TruncatedSeries({1: a1 * a2, 2: a1 + 1, 3: a1 * a1 * a2}, PREC)
    print("f =", f)
    result = inclusion_exclusion_approx(f, [1, 2])
    print("optimal approximation by series missing one variable each:")
    print("  h =", result.h)
    for sigma, summand in result.summands.items():
        print(f"  sigma {sigma}: {summand}")
    print("  places:", "; ".join(str(p) for p in result.places))
    print("  first disagreement with f at:", (f - result.h).v_min())
    print()

    u = exp(TruncatedSeries({1: a1 * a2}, PREC))
    mult = mult_inclusion_exclusion(u, [1, 2])
    print("multiplicative variant on exp(a1*a2*t):")
    print("  h =", mult.h.series)
    print()

    t = TruncatedSeries.monomial(1, 1, PREC)
    t2 = TruncatedSeries.monomial(1, 2, PREC)
    mapping = build_restricted_exp(
        BasisFamily([t, t2], ScalarField.rationals()),
        [exp(t), exp(t2)],
    )
    sample = t.scalar_mul(2) + t2.scalar_mul(-1)
    print("restricted exponential on the span of {t, t^2}:")
    print("  image of", sample, "is", mapping.apply(sample).series)
    print("  matches exp:", mapping.apply(sample).agrees_with(exp(sample)))


if __name__ == "__main__":
    main()
