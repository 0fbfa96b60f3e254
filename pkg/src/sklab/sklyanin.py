"""Quadratic relation spaces of the elliptic algebras Q_{d,r}(x).

The algebra Q_{d,r}(x) has d generators t_0, ..., t_{d-1} and, for each
pair (i, j) of indices mod d, the quadratic relation

    sum_n  theta_{j-i+(r-1)n}(0)
           ----------------------------------  t_{r(j-n)} t_{r(i+n)}  =  0,
           theta_{j-i-n}(-x) * theta_{rn}(x)

with n running over Z/dZ.  This module builds the d^2 coefficient rows,
measures the numerical rank of their span inside C^{d^2} (which equals
d(d-1)/2 for generic x), and checks that the index substitution
t_i -> t_{r'i} with r*r' = 1 mod d carries the relation space of
Q_{d,r}(x) onto that of Q_{d,r'}(x).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .theta import CurveModulus, ThetaBasis, reduce_to_cell

__all__ = [
    "AlgebraParams",
    "AmbiguousRank",
    "DenominatorNearZero",
    "RelationSystem",
    "build_relations",
    "check_substitution_isomorphism",
    "relation_space",
    "relation_terms",
    "sample_generic_x",
    "singular_values",
    "subspace_distance",
    "substitution_distance",
    "substitution_matrix",
]

ROW_DROP_CUTOFF = 1e-10


class DenominatorNearZero(ValueError):
    """x sits too close to a zero of a denominator theta; move x."""

    def __init__(self, index: int, which: str, ratio: float, zero_tol: float):
        self.index = index
        self.which = which
        self.ratio = ratio
        super().__init__(
            f"|theta_{index}({which})| is {ratio:.2e} of the largest basis "
            f"value, below zero_tol={zero_tol:g}")


class AmbiguousRank(RuntimeError):
    """No clear spectral gap at the rank cutoff."""


@dataclass(frozen=True)
class AlgebraParams:
    """Parameters (d, r, x) of Q_{d,r}(x) on the curve C/(Z + omega Z).

    r is stored reduced mod d and must be a unit mod d; x must not be a
    lattice point (x = 0 is the symmetric-algebra degeneration, reached
    only as a limit by the poisson module).
    """

    d: int
    r: int
    x: complex
    modulus: CurveModulus

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")
        object.__setattr__(self, "r", self.r % self.d)
        if gcd(self.r, self.d) != 1:
            raise ValueError(f"r={self.r} is not a unit mod d={self.d}")
        object.__setattr__(self, "x", complex(self.x))
        x_red, _, _ = reduce_to_cell(self.x, self.modulus.omega)
        if abs(complex(x_red)) < 1e-12 * (1.0 + abs(self.modulus.omega)):
            raise ValueError("x is congruent to 0 mod the lattice")


@dataclass(frozen=True)
class RelationSystem:
    """Coefficient rows of the d^2 relations, each scaled to unit max entry.

    coeffs[i, j, a, b] is the coefficient of t_a t_b in relation R_{ij};
    for fixed (i, j) the nonzero entries sit at (a, b) = (r(j-n), r(i+n)),
    one per n.  Rows that vanish identically (their theta numerators are
    exact zeros) are stored as zero rows.
    """

    params: AlgebraParams
    coeffs: np.ndarray

    @property
    def d(self) -> int:
        return self.params.d


def _theta_triple(params: AlgebraParams, zero_tol: float, tail_eps: float):
    """theta values at 0, x and -x, with the near-zero precondition check."""
    basis = ThetaBasis(params.d, params.modulus, tail_eps=tail_eps)
    at_zero = basis.values_at_zero()
    at_x = basis.values_at(params.x)
    at_minus_x = basis.values_at(-params.x)
    for which, vals in (("x", at_x), ("-x", at_minus_x)):
        scale = np.abs(vals).max()
        bad = int(np.abs(vals).argmin())
        ratio = abs(vals[bad]) / scale
        if ratio < zero_tol:
            raise DenominatorNearZero(bad, which, ratio, zero_tol)
    return at_zero, at_x, at_minus_x


def _raw_rows(params: AlgebraParams, zero_tol: float, tail_eps: float):
    """Yield (i, j, [(n, a, b, coeff), ...]) per relation, unnormalized.

    Terms whose numerator theta is an exact zero are dropped here; at
    small x their denominators vanish to second order, and keeping the
    rounding-level numerator noise would pollute the row with entries
    that blow up like 1/x^2.
    """
    d, r = params.d, params.r
    at_zero, at_x, at_minus_x = _theta_triple(params, zero_tol, tail_eps)
    for i in range(d):
        for j in range(d):
            terms = []
            for n in range(d):
                num = at_zero[(j - i + (r - 1) * n) % d]
                if num == 0.0:
                    continue
                den = at_minus_x[(j - i - n) % d] * at_x[(r * n) % d]
                a = (r * (j - n)) % d
                b = (r * (i + n)) % d
                terms.append((n, a, b, num / den))
            yield i, j, terms


def build_relations(params: AlgebraParams, zero_tol: float = 1e-9,
                    tail_eps: float = 1e-14) -> RelationSystem:
    """Fill the relation coefficient array for Q_{d,r}(x).

    Every denominator theta is checked against zero_tol (relative to the
    largest theta value at the same point) before any division happens, so
    a row can never silently contain an underflowed entry.
    """
    d = params.d
    coeffs = np.zeros((d, d, d, d), dtype=complex)
    for i, j, terms in _raw_rows(params, zero_tol, tail_eps):
        for _, a, b, coeff in terms:
            coeffs[i, j, a, b] += coeff
        top = np.abs(coeffs[i, j]).max()
        if top > 0.0:
            coeffs[i, j] /= top
    if not np.all(np.isfinite(coeffs)):
        raise ArithmeticError("non-finite relation coefficient slipped through")
    return RelationSystem(params, coeffs)


def relation_terms(params: AlgebraParams, zero_tol: float = 1e-9,
                   tail_eps: float = 1e-14):
    """Per-term breakdown of every relation row, for serialization.

    Each entry is (i, j, [(n, a, b, coeff), ...]) with the terms scaled
    by the same per-row factor build_relations uses, so summing the
    terms of a row at each (a, b) reproduces RelationSystem.coeffs.
    """
    d = params.d
    out = []
    for i, j, terms in _raw_rows(params, zero_tol, tail_eps):
        summed = np.zeros((d, d), dtype=complex)
        for _, a, b, coeff in terms:
            summed[a, b] += coeff
        top = np.abs(summed).max()
        scale = 1.0 / top if top > 0.0 else 1.0
        out.append((i, j, [(n, a, b, coeff * scale)
                           for n, a, b, coeff in terms]))
    return out


def _nonzero_rows(sys: RelationSystem) -> np.ndarray:
    d = sys.d
    rows = sys.coeffs.reshape(d * d, d * d)
    rowmax = np.abs(rows).max(axis=1)
    top = rowmax.max()
    if top == 0.0:
        return rows[:0]
    return rows[rowmax >= ROW_DROP_CUTOFF * top]


def singular_values(sys: RelationSystem) -> np.ndarray:
    """Singular values of the stacked nonzero relation rows."""
    rows = _nonzero_rows(sys)
    if rows.shape[0] == 0:
        return np.zeros(0)
    return np.linalg.svd(rows, compute_uv=False)


def relation_space(sys: RelationSystem, rank_tol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis (as columns) of the span of the relation rows.

    The dimension is the number of singular values above rank_tol times
    the largest one.  If the spectrum has no clear gap there (consecutive
    ratio < 10), the rank is not trustworthy and AmbiguousRank is raised.
    """
    rows = _nonzero_rows(sys)
    if rows.shape[0] == 0:
        return np.zeros((sys.d ** 2, 0), dtype=complex)
    _, s, vh = np.linalg.svd(rows)
    rank = int((s > rank_tol * s[0]).sum())
    if 0 < rank < len(s) and s[rank] > 0.0 and s[rank - 1] / s[rank] < 10.0:
        raise AmbiguousRank(
            f"singular values straddle the cutoff without a gap: "
            f"s[{rank - 1}]={s[rank - 1]:.3e}, s[{rank}]={s[rank]:.3e}")
    return vh[:rank].conj().T


def subspace_distance(b1: np.ndarray, b2: np.ndarray) -> float:
    """Sine of the largest principal angle between two column spans.

    Computed from the residual of projecting either basis onto the other,
    which stays accurate near zero where the sqrt(1 - sigma_min^2) form
    loses half the working digits.
    """
    if b1.shape[1] == 0 and b2.shape[1] == 0:
        return 0.0
    if b1.shape[1] == 0 or b2.shape[1] == 0:
        return 1.0
    r12 = b1 - b2 @ (b2.conj().T @ b1)
    r21 = b2 - b1 @ (b1.conj().T @ b2)
    s1 = np.linalg.svd(r12, compute_uv=False)[0]
    s2 = np.linalg.svd(r21, compute_uv=False)[0]
    return float(min(1.0, max(s1, s2)))


def substitution_matrix(d: int, mult: int) -> np.ndarray:
    """Permutation of C^{d^2} induced by t_i -> t_{mult*i} on both factors."""
    if gcd(mult % d, d) != 1:
        raise ValueError(f"substitution multiplier {mult} is not a unit mod {d}")
    perm = np.zeros((d * d, d * d))
    for a in range(d):
        for b in range(d):
            perm[((mult * a) % d) * d + (mult * b) % d, a * d + b] = 1.0
    return perm


def substitution_distance(d: int, r: int, r2: int, x: complex,
                          modulus: CurveModulus, zero_tol: float = 1e-9,
                          rank_tol: float = 1e-9) -> float:
    """Distance between the transported Q_{d,r}(x) space and Q_{d,r2}(x).

    Transports the relation space of Q_{d,r}(x) through e_a (x) e_b ->
    e_{r2*a} (x) e_{r2*b} and measures the subspace distance to the
    relation space of Q_{d,r2}(x).  No congruence between r and r2 is
    assumed; for r*r2 != 1 mod d the distance is an O(1) negative control.
    """
    space_r = relation_space(
        build_relations(AlgebraParams(d, r, x, modulus), zero_tol), rank_tol)
    space_r2 = relation_space(
        build_relations(AlgebraParams(d, r2, x, modulus), zero_tol), rank_tol)
    if space_r.shape[1] != space_r2.shape[1]:
        raise AmbiguousRank(
            f"relation-space ranks differ: {space_r.shape[1]} vs "
            f"{space_r2.shape[1]}")
    return subspace_distance(substitution_matrix(d, r2) @ space_r, space_r2)


def check_substitution_isomorphism(d: int, r: int, r_prime: int, x: complex,
                                   modulus: CurveModulus,
                                   zero_tol: float = 1e-9,
                                   rank_tol: float = 1e-9) -> float:
    """Subspace distance realizing the isomorphism Q_{d,r}(x) = Q_{d,r'}(x).

    Requires r*r' = 1 mod d; the returned distance should be below iso_tol
    (1e-8 by default elsewhere) when the isomorphism holds.  The caller
    judges; this function only refuses non-inverse pairs.
    """
    if (r * r_prime) % d != 1 % d:
        raise ValueError(
            f"r*r' = {r}*{r_prime} is not 1 mod {d}; "
            "the substitution is only an isomorphism for inverse pairs")
    return substitution_distance(d, r, r_prime, x, modulus, zero_tol, rank_tol)


def sample_generic_x(d: int, modulus: CurveModulus, rng,
                     zero_tol: float = 1e-9, max_rejects: int = 50) -> complex:
    """Draw x uniformly in the fundamental cell, away from denominator zeros.

    Rejects any x at which some |theta_m| at x or -x falls below zero_tol
    relative to the largest basis value there; the zeros form a measure
    zero set, so more than a handful of rejections means something is
    wrong and a RuntimeError is raised after max_rejects attempts.
    """
    basis = ThetaBasis(d, modulus)
    for _ in range(max_rejects + 1):
        x = rng.uniform(0.0, 1.0) + rng.uniform(0.0, 1.0) * modulus.omega
        ok = True
        for z in (x, -x):
            vals = np.abs(basis.values_at(z))
            if vals.min() < zero_tol * vals.max():
                ok = False
                break
        if ok:
            return complex(x)
    raise RuntimeError(
        f"no generic x found in {max_rejects} draws (zero_tol={zero_tol:g})")
