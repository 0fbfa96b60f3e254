"""Classical limit of Q_{d,r}(x): the quadratic Poisson bracket at x = 0.

As x -> 0 the relation space of Q_{d,r}(x) degenerates to the span of the
commutators, so the algebra degenerates to the polynomial ring.  The
first-order term of that degeneration is a Poisson bracket

    {t_a, t_b} = sum_{c<=e} pi[a, b, c, e] t_c t_e,

quadratic in the generators.  It is extracted numerically: at x = h*u
(u a fixed generic direction) each relation-space element with a
prescribed antisymmetric part e_a ^ e_b carries a symmetric part of
order h, and -Sym/h converges linearly to the bracket coefficients.
Two Richardson stages on the ladder h, h/2, h/4 kill the linear error
and estimate what is left.

The Jacobi identity is not built in; jacobi_check verifies it pointwise,
which is the real evidence that the extracted tensor is Poisson.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sklyanin import AlgebraParams, build_relations, relation_space
from .theta import CurveModulus

__all__ = [
    "ExtractionError",
    "PoissonTensor",
    "extract_bracket",
    "jacobi_check",
    "scale_match_deviation",
    "skew_check",
    "substituted_tensor",
]

# Fixed generic direction for x = h*u; any direction off the theta zero
# divisors works, this one is frozen so extractions are reproducible.
EXTRACTION_DIRECTION = (0.31 + 0.17j) / abs(0.31 + 0.17j)

DEFAULT_H = 3e-5


class ExtractionError(RuntimeError):
    """The limit extraction failed (bad conditioning or no convergence)."""


@dataclass(frozen=True)
class PoissonTensor:
    """Coefficients of a quadratic bracket on C^d.

    pi[a, b, c, e] is the coefficient of t_c t_e in {t_a, t_b}, stored for
    all (a, b) with pi[b, a] = -pi[a, b] and zero diagonal, and with the
    quadratic monomial indices canonicalized to c <= e (entries with c > e
    are structurally zero).  extraction_step records the h of the ladder
    when the tensor came from extract_bracket, None for loaded data.
    """

    d: int
    r: int
    pi: np.ndarray
    richardson_error: float
    extraction_step: float | None = None

    def bracket_matrix(self, a: int, b: int) -> np.ndarray:
        """Symmetric matrix M with {t_a, t_b}(p) = p^T M p."""
        d = self.d
        m = np.zeros((d, d), dtype=complex)
        for c in range(d):
            m[c, c] = self.pi[a, b, c, c]
            for e in range(c + 1, d):
                m[c, e] = m[e, c] = 0.5 * self.pi[a, b, c, e]
        return m

    def bracket_value(self, a: int, b: int, p: np.ndarray) -> complex:
        return complex(p @ self.bracket_matrix(a, b) @ p)


def _symmetric_to_storage(mat: np.ndarray) -> np.ndarray:
    """Pack a symmetric matrix into the canonical c <= e coefficient slice."""
    d = mat.shape[0]
    out = np.zeros((d, d), dtype=complex)
    for c in range(d):
        out[c, c] = mat[c, c]
        for e in range(c + 1, d):
            out[c, e] = 2.0 * mat[c, e]
    return out


def _extract_level(d: int, r: int, modulus: CurveModulus, h: float,
                   zero_tol: float, rank_tol: float):
    """Bracket matrices -Sym(v)/h for every pair a < b at x = h*u."""
    x = h * EXTRACTION_DIRECTION
    sys = build_relations(AlgebraParams(d, r, x, modulus), zero_tol)
    basis = relation_space(sys, rank_tol)
    k = basis.shape[1]
    as_mats = basis.reshape(d, d, k)
    wedge = 0.5 * (as_mats - as_mats.transpose(1, 0, 2)).reshape(d * d, k)
    cond = np.linalg.cond(wedge) if k else np.inf
    if k and cond >= 1e6:
        raise ExtractionError(
            f"projection of the relation space to the wedge square is "
            f"ill-conditioned (cond={cond:.2e}) at h={h:g}")
    mats = {}
    for a in range(d):
        for b in range(a + 1, d):
            target = np.zeros(d * d, dtype=complex)
            target[a * d + b] = 0.5
            target[b * d + a] = -0.5
            coeff, *_ = np.linalg.lstsq(wedge, target, rcond=None)
            residual = np.abs(wedge @ coeff - target).max()
            if residual > 1e-8:
                raise ExtractionError(
                    f"no relation-space element has antisymmetric part "
                    f"e_{a}^e_{b} (residual {residual:.2e}) at h={h:g}")
            v = (basis @ coeff).reshape(d, d)
            mats[(a, b)] = -0.5 * (v + v.T) / h
    return mats


def extract_bracket(d: int, r: int, modulus: CurveModulus,
                    h: float = DEFAULT_H, zero_tol: float = 1e-9,
                    rank_tol: float = 1e-9,
                    bracket_tol: float = 1e-6) -> PoissonTensor:
    """Extract the bracket of the x -> 0 degeneration of Q_{d,r}(x).

    Runs the level extraction at h, h/2 and h/4 and forms the two
    Richardson stages E1 = 2 pi(h/2) - pi(h), E2 = 2 pi(h/4) - pi(h/2).
    E2 is returned; the spread max|E2 - E1| is stored as richardson_error
    and must come in under bracket_tol, otherwise the extraction is
    rejected rather than silently inaccurate.
    """
    levels = [_extract_level(d, r, modulus, step, zero_tol, rank_tol)
              for step in (h, h / 2, h / 4)]
    pairs = levels[0].keys()
    first = {p: 2.0 * levels[1][p] - levels[0][p] for p in pairs}
    second = {p: 2.0 * levels[2][p] - levels[1][p] for p in pairs}
    spread = max((np.abs(second[p] - first[p]).max() for p in pairs),
                 default=0.0)
    if spread >= bracket_tol:
        raise ExtractionError(
            f"richardson stages disagree by {spread:.2e} "
            f">= bracket_tol={bracket_tol:g}; shrink h")
    pi = np.zeros((d, d, d, d), dtype=complex)
    for (a, b), mat in second.items():
        packed = _symmetric_to_storage(mat)
        pi[a, b] = packed
        pi[b, a] = -packed
    return PoissonTensor(d=d, r=r % d, pi=pi, richardson_error=float(spread),
                         extraction_step=h)


def skew_check(tensor: PoissonTensor) -> float:
    """Largest violation of the storage conventions.

    Checks {t_a, t_a} = 0, pi[b, a] = -pi[a, b], and that no coefficient
    sits below the diagonal of the monomial indices (c > e).  Extracted
    tensors return exactly 0; a hand-edited array shows up as positive.
    """
    worst = 0.0
    d = tensor.d
    for a in range(d):
        worst = max(worst, float(np.abs(tensor.pi[a, a]).max()))
        for b in range(d):
            worst = max(worst, float(
                np.abs(tensor.pi[a, b] + tensor.pi[b, a]).max()))
            lower = [abs(tensor.pi[a, b, c, e])
                     for c in range(d) for e in range(c)]
            if lower:
                worst = max(worst, max(lower))
    return worst


def jacobi_check(tensor: PoissonTensor, trials: int, seed: int) -> float:
    """Max normalized Jacobi residual of the bracket at random points.

    The bracket extends to polynomials by the Leibniz rule, so with
    g = {t_b, t_c} the cyclic sum J_abc(p) = {t_a, g}(p) + ... needs only
    first derivatives of the quadratic forms.  Points are drawn with each
    coordinate uniform in the unit disc, and |J| is normalized per point
    by the largest cubic monomial (max_i |p_i|)^3.
    """
    d = tensor.d
    mats = np.zeros((d, d, d, d), dtype=complex)
    for a in range(d):
        for b in range(d):
            if a != b:
                mats[a, b] = tensor.bracket_matrix(min(a, b), max(a, b))
                if a > b:
                    mats[a, b] = -mats[a, b]
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        radius = np.sqrt(rng.uniform(0.0, 1.0, d))
        angle = rng.uniform(0.0, 2.0 * np.pi, d)
        p = radius * np.exp(1j * angle)
        cube = np.abs(p).max() ** 3
        if cube == 0.0:
            continue
        values = np.einsum("c,abce,e->ab", p, mats, p)
        gradients = np.einsum("abce,e->abc", mats, p)
        for a in range(d):
            for b in range(a + 1, d):
                for c in range(b + 1, d):
                    total = (2.0 * gradients[b, c] @ values[a]
                             + 2.0 * gradients[c, a] @ values[b]
                             + 2.0 * gradients[a, b] @ values[c])
                    worst = max(worst, abs(total) / cube)
    return worst


def substituted_tensor(tensor: PoissonTensor) -> PoissonTensor:
    """Transport the tensor through t_i -> t_{r'i}, r' the inverse of r.

    The relation-space substitution that identifies Q_{d,r}(x) with
    Q_{d,r'}(x) acts on the extracted bracket entrywise: the transported
    coefficient at (a, b, c, e) is the original one at the indices
    multiplied by r, with a sign when the (a, b) ordering flips.  The
    result is directly comparable (up to one overall scale) with the
    tensor extracted at (d, r').
    """
    d, r = tensor.d, tensor.r
    r_prime = pow(r, -1, d) if d > 1 else 0
    pi = np.zeros((d, d, d, d), dtype=complex)
    for a in range(d):
        for b in range(a + 1, d):
            source = tensor.bracket_matrix
            sa, sb = (r * a) % d, (r * b) % d
            sign = 1.0
            if sa > sb:
                sa, sb = sb, sa
                sign = -1.0
            mat = sign * source(sa, sb)
            moved = np.zeros((d, d), dtype=complex)
            for c in range(d):
                for e in range(d):
                    moved[c, e] = mat[(r * c) % d, (r * e) % d]
            packed = _symmetric_to_storage(moved)
            pi[a, b] = packed
            pi[b, a] = -packed
    return PoissonTensor(d=d, r=r_prime, pi=pi,
                         richardson_error=tensor.richardson_error,
                         extraction_step=tensor.extraction_step)


def scale_match_deviation(t1: PoissonTensor, t2: PoissonTensor):
    """Best single complex scale lam with t2 ~ lam * t1, and the deviation.

    lam is read off at the largest entry of t1; the return is (lam, dev)
    where dev = max |t2 - lam*t1| normalized by max |t2|.  Zero tensors
    compare equal with lam = 1.
    """
    if t1.d != t2.d:
        raise ValueError("tensor dimensions differ")
    flat1, flat2 = t1.pi.ravel(), t2.pi.ravel()
    top = np.abs(flat1).argmax()
    scale2 = np.abs(flat2).max()
    if abs(flat1[top]) == 0.0 and scale2 == 0.0:
        return 1.0 + 0.0j, 0.0
    if abs(flat1[top]) == 0.0 or scale2 == 0.0:
        return 1.0 + 0.0j, 1.0
    lam = flat2[top] / flat1[top]
    dev = float(np.abs(flat2 - lam * flat1).max() / scale2)
    return complex(lam), dev
