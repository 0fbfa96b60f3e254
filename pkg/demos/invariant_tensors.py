"""Admissible symmetric tensors for some small Lie representations.

A symmetric 2-tensor on the Lie algebra is admissible when it is
invariant under the adjoint action and the operator it induces on S^2 V
vanishes.  The solver works over exact rationals whenever the input
data is exact, so every dimension below is free of floating-point fuzz.
"""

from sklab.invtensor import (augment_with_center, check_invariance,
                             gl_pair_rep, gl_pair_tensor, gsp_rep,
                             sl2_casimir_tensor, sl2_rep, solve_admissible,
                             sp_rep)


def main():
    print("gl_{r1} + gl_{r2} acting on matrices (X, Y) . M = XM - MY:")
    for r1, r2 in [(1, 1), (2, 1), (2, 2), (3, 2)]:
        rep = gl_pair_rep(r1, r2)
        basis = solve_admissible(rep)
        canon = gl_pair_tensor(r1, r2)
        print(f"  ({r1}, {r2}): admissible dimension {len(basis)}, "
              f"canonical tensor invariance defect {check_invariance(rep, canon)}")

    for name, rep in [("sp(4)", sp_rep(4)), ("gsp(4)", gsp_rep(4))]:
        basis = solve_admissible(rep)
        print(f"\n{name} on C^4: dim_g = {rep.dim_g}, "
              f"admissible dimension {len(basis)}")
        if basis:
            print("  basis tensor rows:")
            for row in basis[0].t:
                print(f"    {[str(x) for x in row]}")

    rep = sl2_rep()
    print(f"\nsl(2) on C^2: admissible dimension {len(solve_admissible(rep))}")
    print(f"  with central extension: "
          f"{len(solve_admissible(augment_with_center(rep)))}")
    casimir = sl2_casimir_tensor()
    print(f"  casimir invariance defect: {check_invariance(rep, casimir)} "
          f"(invariant, but its induced operator is not zero)")


if __name__ == "__main__":
    main()
