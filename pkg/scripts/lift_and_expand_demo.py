#!/usr/bin/env python3
"""Root finding demo: Hensel lifting vs Newton polygon expansion.

Lifts sqrt(1+t) from its residue root, expands the same polynomial by
the polygon algorithm, cross-checks the two, and reports which primes
show up in the lifted coefficients' denominators.
"""

from hahnseries import (
    SeriesPolynomial,
    TruncatedSeries,
    hensel_lift,
    newton_puiseux,
    track_denominators,
    verify_root,
)

PREC = 12


def main():
    one = TruncatedSeries.one(PREC)
    t = TruncatedSeries.monomial(1, 1, PREC)
    q = SeriesPolynomial([-(one + t), TruncatedSeries.zero(PREC), one])

    root, trace = hensel_lift(q, one, with_trace=True)
    print("hensel lift of y^2 - (1+t) from r = 1:")
    print(" ", root)
    print("  residual valuations per step:", ", ".join(str(v) for v in trace))
    print("  denominator primes:", sorted(track_denominators(q, one)))
    print()

    print("newton polygon branches of y^2 - y + t:")
    q2 = SeriesPolynomial([t, -one, one])
    for branch in newton_puiseux(q2, PREC):
        print(" ", branch)
    print()

    print("branches of y^2 - (1+t) agree with the lift:")
    for branch in newton_puiseux(q, PREC):
        tag = "matches lift" if branch.agrees_with(root) else "other sign"
        print(f"  {branch}   [{tag}, residual {verify_root(q, branch)}]")


if __name__ == "__main__":
    main()
