#!/usr/bin/env python3
"""Pairwise-distinct towers from multiples of a non-torsion point.

Builds towers with constant sequences e_i = m*P on y^2 = x^3 + 17 for
m = 1..count and classifies the family: every pair separates already at
level 1 because the differences (m - m')*P are non-torsion, so the family
is a desk-scale slice of an uncountable collection of pairwise
non-isomorphic towers.
"""

import argparse
import time

from ectower import (
    EllipticCurve,
    NonTorsionCertificate,
    Point,
    QQ,
    Tower,
    classify_family,
    torsion_test_Q,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=5)
    parser.add_argument("--N", type=int, default=6)
    args = parser.parse_args()

    curve = EllipticCurve(QQ, 0, 17)
    P = Point(QQ.element(-2), QQ.element(3))
    cert = torsion_test_Q(curve, P)
    assert isinstance(cert, NonTorsionCertificate), "base point must be non-torsion"
    print("base point (-2, 3) certified non-torsion on y^2 = x^3 + 17")

    O = Point.infinity()
    towers = []
    for m in range(1, args.count + 1):
        e_m = curve.scalar_mul(m, P)
        towers.append(Tower(curve, O, [O] + [e_m] * args.N))

    start = time.perf_counter()
    result = classify_family(towers)
    elapsed = time.perf_counter() - start

    print("classified %d towers (N = %d) in %.2fs" % (args.count, args.N, elapsed))
    for (i, j), verdict in sorted(result.verdicts.items()):
        line = "towers %d and %d: %s" % (i + 1, j + 1, verdict.status)
        if verdict.status == "non_iso":
            line += " at level %d" % verdict.certificate.level
        print(line)
    print("classes:", [list(c) for c in result.classes])
    assert result.all_non_isomorphic


if __name__ == "__main__":
    main()
