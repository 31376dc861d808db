#!/usr/bin/env python3
"""Survey deck groups of the tower over y^2 = x^3 + 1 / F_5, levels 1..4.

For each level the script finds the smallest extension field carrying the
full torsion of the level map and of the composite map down to the base,
prints both deck groups, and checks the composite one against the matching
factorial lattice quotient.
"""

import argparse
import time

from ectower import (
    EllipticCurve,
    LatticeGroup,
    Point,
    PrimeField,
    Tower,
    deck_group,
    full_torsion_field,
    match_deck,
    quotient,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--levels", type=int, default=4)
    parser.add_argument("--p", type=int, default=5)
    args = parser.parse_args()

    field = PrimeField(args.p)
    curve = EllipticCurve(field, 0, 1)
    O = Point.infinity()
    pts = [P for P in curve.enumerate_points() if not P.is_infinity]
    tower = Tower(curve, O, [O] + [pts[i % len(pts)] for i in range(args.levels)])
    lattice = LatticeGroup(2)

    print("base: y^2 = x^3 + 1 over F_%d, tower N = %d" % (args.p, args.levels))
    header = "%-6s %-14s %-12s %-14s %-12s %-8s" % (
        "level", "step deck", "field", "composite", "field", "match",
    )
    print(header)
    print("-" * len(header))
    for i in range(1, args.levels + 1):
        start = time.perf_counter()
        step_field = full_torsion_field(curve, i)
        step = deck_group(tower.level_map(i), field=step_field)
        composite = tower.compose_to_base(i)
        comp_field = full_torsion_field(curve, composite.m)
        comp = deck_group(composite, field=comp_field)
        agrees = match_deck(tower, i, field=comp_field)
        elapsed = time.perf_counter() - start
        print(
            "%-6d %-14s %-12r %-14s %-12r %-8s (%.2fs)"
            % (
                i,
                step.describe(2),
                step_field,
                comp.describe(2),
                comp_field,
                agrees,
                elapsed,
            )
        )
        expected = quotient(lattice, i).group
        assert comp.invariant_factors == expected.invariant_factors


if __name__ == "__main__":
    main()
