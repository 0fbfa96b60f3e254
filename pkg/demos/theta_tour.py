"""Tour of the theta basis: values, functional equations, zeros, symmetry.

The d basis functions live on the curve C/(Z + Z*omega); everything
below checks the structure that the relation-space machinery relies on.
"""

import numpy as np

from sklab.theta import (CurveModulus, ThetaBasis, theta_symmetry_constants,
                         theta_zero_count)

OMEGA = 0.2 + 1.3j


def main():
    d = 5
    modulus = CurveModulus(OMEGA)
    basis = ThetaBasis(d, modulus)

    z = 0.13 + 0.21j
    print(f"basis values at z = {z} (d = {d}):")
    for m, value in enumerate(basis.values_at(z)):
        print(f"  theta_{m}(z) = {value:+.12f}")

    print("\nquasi-periodicity residuals at the same z (relative):")
    for m in range(d):
        v = basis.eval(m, z)
        lhs1 = basis.eval(m, z + 1.0 / d)
        rhs1 = -np.exp(2j * np.pi * m / d) * v
        lhs2 = basis.eval(m, z + OMEGA)
        rhs2 = -np.exp(-1j * np.pi * d * OMEGA - 2j * np.pi * d * z) * v
        r1 = abs(lhs1 - rhs1) / max(abs(lhs1), abs(rhs1))
        r2 = abs(lhs2 - rhs2) / max(abs(lhs2), abs(rhs2))
        print(f"  m = {m}: shift 1/d -> {r1:.2e}, shift omega -> {r2:.2e}")

    print("\nzeros per fundamental cell (contour count):")
    for m in range(d):
        print(f"  theta_{m}: {theta_zero_count(basis, m)} zeros")

    x = 0.31 + 0.17j
    a, b, fit = theta_symmetry_constants(basis, x)
    print(f"\nreflection constants at x = {x}:")
    print(f"  a = {a:+.12f}  (expected -1)")
    print(f"  b = {b:+.12f}  (expected exp(-2 pi i/d))")
    print(f"  fit residual = {fit:.2e}, |b^d - 1| = {abs(b**d - 1):.2e}")


if __name__ == "__main__":
    main()
