"""Wall-and-chamber scan for a rank triple over a tau interval.

A wall is a rational tau where some subtriple's slope crosses the
ambient slope; between walls the stability verdict of every cell is
constant.  The scan prints each wall with its witnessing cells, the
cells that are critical for every tau at once, and a verdict sample
inside each chamber.
"""

from fractions import Fraction

from sklab.walls import (TripleInvariants, candidate_walls, degeneration_cells,
                         stability_verdict)


def main():
    t = TripleInvariants(2, 1, 3, 0)
    lo, hi = Fraction(0), Fraction(3)
    walls = candidate_walls(t, lo, hi)

    print(f"triple (r1, r2, d1, d2) = (2, 1, 3, 0), interval ({lo}, {hi})")
    for wall in walls:
        print(f"  tau = {str(wall.tau):>4}: witnesses {list(wall.witnesses)}")

    degenerate = degeneration_cells(t)
    print(f"always-critical cells: {degenerate if degenerate else 'none'}")

    taus = [lo] + [w.tau for w in walls] + [hi]
    mids = [(a + b) / 2 for a, b in zip(taus, taus[1:])]
    sub = (1, 0, 1)
    print(f"\nverdicts for cell {sub} across the chambers:")
    for tau in mids:
        print(f"  tau = {str(tau):>4}: {stability_verdict(t, sub, tau)}")

    shifted = TripleInvariants(t.r1, t.r2, t.d1 + 2 * t.r1, t.d2 + 2 * t.r2)
    moved = candidate_walls(shifted, lo + 2, hi + 2)
    print(f"\ntensoring by degree 2 shifts every wall by 2:")
    print(f"  before: {[str(w.tau) for w in walls]}")
    print(f"  after:  {[str(w.tau) for w in moved]}")


if __name__ == "__main__":
    main()
