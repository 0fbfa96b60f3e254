"""The generator substitution t_a -> t_{r'a} as an algebra isomorphism.

When r*r' = 1 mod d the substitution carries the relations of Q_{d,r}(x)
onto those of Q_{d,r'}(x); the subspace distance between the transported
and the native relation space is numerically zero.  For any other r' the
distance is order one, which is the negative control printed last.
"""

import numpy as np

from sklab.sklyanin import (check_substitution_isomorphism, sample_generic_x,
                            substitution_distance)
from sklab.theta import CurveModulus

OMEGA = 0.2 + 1.3j


def main():
    modulus = CurveModulus(OMEGA)
    rng = np.random.default_rng(21)

    pairs = [(5, 2, 3), (7, 3, 5), (8, 3, 3), (9, 2, 5), (11, 4, 3)]
    print("isomorphic pairs (r * r' = 1 mod d):")
    for d, r, r_prime in pairs:
        x = sample_generic_x(d, modulus, rng)
        dist = check_substitution_isomorphism(d, r, r_prime, x, modulus)
        print(f"  d={d:>2} r={r} r'={r_prime}: distance = {dist:.3e}")

    print("\nnegative controls (r * r' != 1 mod d):")
    for d, r, r_bad in [(5, 2, 2), (7, 3, 4), (11, 4, 5)]:
        x = sample_generic_x(d, modulus, rng)
        dist = substitution_distance(d, r, r_bad, x, modulus)
        print(f"  d={d:>2} r={r} r'={r_bad}: distance = {dist:.3f}")


if __name__ == "__main__":
    main()
