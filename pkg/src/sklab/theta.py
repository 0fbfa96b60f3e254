"""Theta functions of level d on a complex torus.

For a torus C/(Z + omega Z) with Im(omega) > 0 the functions implemented
here form a d-dimensional family theta_m, m in Z/dZ,

    theta_m(z) = sum_k exp( pi i d omega (k + m/d + 1/2)^2
                            + 2 pi i (k + m/d + 1/2) (d z + 1/2) ),

an eigenbasis for translation by 1/d.  The family satisfies, for every d,

    theta_m(z + 1/d) = -exp(2 pi i m / d) * theta_m(z)
    theta_m(z + omega) = -exp(-pi i d omega - 2 pi i d z) * theta_m(z)
    theta_{-m}(-z)    = -exp(-2 pi i m / d) * theta_m(z)

and each theta_m has exactly d zeros per fundamental cell.  Evaluation
reduces the argument to the fundamental cell first and then sums the
series adaptively, so values stay accurate (and finite) for any z a
moderate number of cells away from the origin.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ConvergenceError",
    "CurveModulus",
    "ThetaBasis",
    "reduce_to_cell",
    "theta_eval",
    "theta_symmetry_constants",
    "theta_zero_count",
]

_TWO_PI_I = 2j * np.pi


def reduce_to_cell(z, omega: complex):
    """Write z = z_red + p + q*omega with z_red in the centered unit cell.

    Works elementwise on arrays; p and q come back as int64 arrays.
    """
    z = np.asarray(z, dtype=complex)
    beta = z.imag / omega.imag
    q = np.rint(beta)
    p = np.rint(z.real - beta * omega.real)
    z_red = z - p - q * omega
    return z_red, p.astype(np.int64), q.astype(np.int64)


class ConvergenceError(RuntimeError):
    """Adaptive truncation, contour placement, or a constants fit failed."""


@dataclass(frozen=True)
class CurveModulus:
    """Lattice modulus omega of the torus C/(Z + omega Z), Im(omega) > 0."""

    omega: complex

    def __post_init__(self):
        w = complex(self.omega)
        if not np.isfinite(w.real) or not np.isfinite(w.imag):
            raise ValueError("omega must be finite")
        if w.imag <= 0.0:
            raise ValueError(f"Im(omega) must be positive, got {w.imag}")
        object.__setattr__(self, "omega", w)


@dataclass(frozen=True)
class ThetaBasis:
    """Evaluator for the d theta functions of level d at fixed modulus.

    Parameters
    ----------
    d : int
        Level; also the number of basis functions and of zeros per cell.
    modulus : CurveModulus
        The curve.
    tail_eps : float, optional
        Relative truncation tolerance for the defining series.

    Notes
    -----
    Instances are immutable and safe to share between threads.  The index
    m is reduced mod d on entry, so ``eval(m + d, z) == eval(m, z)``
    exactly.
    """

    d: int
    modulus: CurveModulus
    tail_eps: float = 1e-14

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("level d must be >= 1")
        if not (0.0 < self.tail_eps < 1.0):
            raise ValueError("tail_eps must be in (0, 1)")

    @property
    def omega(self) -> complex:
        return self.modulus.omega

    # -- argument reduction --------------------------------------------------

    def _reduce(self, z):
        return reduce_to_cell(z, self.omega)

    def _cell_multiplier(self, z_red, p, q):
        # theta_m(z_red + p + q*omega) =
        #   (-1)^(d p + q) exp(-pi i d omega q^2 - 2 pi i d q z_red) theta_m(z_red)
        # (independent of m).
        d = self.d
        sign = 1.0 - 2.0 * ((d * p + q) % 2)
        return sign * np.exp(-1j * np.pi * d * self.omega * q * q
                             - _TWO_PI_I * d * q * z_red)

    # -- series --------------------------------------------------------------

    def _series(self, m, z_red, want_deriv=False):
        """Sum the defining series at reduced arguments (1-d array z_red)."""
        d = self.d
        w = self.omega
        mu = (m % d) / d + 0.5
        lin = d * z_red + 0.5
        decay = np.pi * d * w.imag
        half_width = 3.0 + 6.0 / np.sqrt(decay)
        cap = 16.0 * half_width + 64.0
        while True:
            k_lo = int(np.ceil(-half_width - mu))
            k_hi = int(np.floor(half_width - mu))
            c = np.arange(k_lo, k_hi + 1) + mu
            expo = (1j * np.pi * d * w) * c * c + _TWO_PI_I * np.outer(lin, c)
            terms = np.exp(expo)
            total = terms.sum(axis=1)
            edge = np.maximum(np.abs(terms[:, 0]), np.abs(terms[:, -1]))
            if np.all(edge < self.tail_eps * np.abs(total)):
                break
            half_width *= 1.5
            if half_width > cap:
                raise ConvergenceError(
                    f"series truncation did not converge (d={d}, "
                    f"Im omega={w.imag:g})")
        if not want_deriv:
            return total
        deriv = (terms * (_TWO_PI_I * d * c)).sum(axis=1)
        return total, deriv

    # -- public evaluation ---------------------------------------------------

    def eval(self, m: int, z) -> complex:
        """Evaluate theta_m at z (scalar or array), index m taken mod d."""
        z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
        if not np.all(np.isfinite(z_arr)):
            raise ValueError("z must be finite")
        z_red, p, q = self._reduce(z_arr)
        vals = self._cell_multiplier(z_red, p, q) * self._series(m, z_red)
        return vals[0] if np.isscalar(z) or np.ndim(z) == 0 else vals

    def values_at(self, z: complex) -> np.ndarray:
        """All d values theta_0(z), ..., theta_{d-1}(z) at a single point."""
        z_arr = np.asarray([complex(z)])
        z_red, p, q = self._reduce(z_arr)
        mult = self._cell_multiplier(z_red, p, q)[0]
        return np.array([mult * self._series(m, z_red)[0]
                         for m in range(self.d)])

    def values_at_zero(self) -> np.ndarray:
        """The d values theta_m(0) with the exact zero at m = 0.

        The reflection identity theta_{-m}(-z) = -exp(-2 pi i m/d) theta_m(z)
        forces theta_0(0) = 0 identically.  Summing the series leaves rounding
        residue of order 1e-16 there instead, which matters to callers that
        divide by quantities vanishing at the same point, so this entry is
        pinned to exact zero.
        """
        vals = self.values_at(0.0)
        vals[0] = 0.0
        return vals

    def dlog(self, m: int, z) -> np.ndarray:
        """Logarithmic derivative theta_m'(z)/theta_m(z), vectorized in z."""
        z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
        z_red, p, q = self._reduce(z_arr)
        total, deriv = self._series(m, z_red, want_deriv=True)
        vals = deriv / total - _TWO_PI_I * self.d * q
        return vals[0] if np.isscalar(z) or np.ndim(z) == 0 else vals


def theta_eval(basis: ThetaBasis, m: int, z) -> complex:
    return basis.eval(m, z)


def theta_symmetry_constants(basis: ThetaBasis, x: complex,
                             zero_tol: float = 1e-9,
                             fit_tol: float = 1e-8):
    """Fit the constants of the reflection identity of the family.

    The basis satisfies theta_{-i}(-x) = a * b^i * theta_i(x) for constants
    a, b independent of i with b^d = 1.  The constants are recovered from
    the d value ratios by averaging consecutive quotients (b) and de-biased
    ratios (a), and the identity is then re-checked directly.

    Returns
    -------
    (a, b, residual) : complex, complex, float
        ``residual`` is max_i |theta_{-i}(-x) - a b^i theta_i(x)|
        normalized by max_i |theta_i(x)|.

    Raises
    ------
    ValueError
        If some |theta_i(x)| is below zero_tol relative to the largest,
        i.e. x sits too close to a zero divisor of the identity.
    ConvergenceError
        If the fitted constants violate the identity or |b^d - 1| >= fit_tol.
    """
    d = basis.d
    idx = np.arange(d)
    plus = np.array([basis.eval(i, x) for i in idx])
    minus = np.array([basis.eval(-i, -x) for i in idx])
    scale = np.abs(plus).max()
    if scale == 0.0 or np.abs(plus).min() < zero_tol * scale:
        raise ValueError("x is too close to a theta zero for the fit")
    rho = minus / plus
    if d == 1:
        b = 1.0 + 0.0j
        a = rho[0]
    else:
        b = complex(np.mean(rho[1:] / rho[:-1]))
        a = complex(np.mean(rho * b ** (-idx.astype(float))))
    residual = float(np.abs(minus - a * b ** idx * plus).max() / scale)
    if residual >= fit_tol:
        raise ConvergenceError(
            f"symmetry fit residual {residual:.3e} exceeds {fit_tol:g}")
    if abs(b ** d - 1.0) >= fit_tol:
        raise ConvergenceError(
            f"|b^d - 1| = {abs(b ** d - 1.0):.3e} exceeds {fit_tol:g}")
    return a, b, residual


def _winding(basis, m, base, n):
    w = basis.omega
    t, weights = np.polynomial.legendre.leggauss(n)
    t = 0.5 * (t + 1.0)
    weights = 0.5 * weights
    pts = np.concatenate([base + t, base + 1.0 + t * w,
                          base + w + t, base + t * w])
    f = basis.dlog(m, pts)
    if not np.all(np.isfinite(f)):
        return None
    fb, fr, ft, fl = np.split(f, 4)
    total = (weights @ fb) + w * (weights @ fr) \
        - (weights @ ft) - w * (weights @ fl)
    return total / _TWO_PI_I


def theta_zero_count(basis: ThetaBasis, m: int, nodes: int = 160,
                     max_retries: int = 8) -> int:
    """Count zeros of theta_m in a fundamental cell by contour integration.

    Integrates theta'/theta around a fundamental parallelogram with
    Gauss-Legendre quadrature on each edge.  The zeros of theta_m fill a
    single horizontal line per cell (d of them, spaced 1/d apart), so the
    contour is based half a lattice period below that line and 1/(2d) to
    the side of the nearest zero.  The winding number is accepted only if
    it is stable under doubling the node count and within 0.01 of an
    integer; otherwise the base is nudged sideways and the count retried.
    """
    d = basis.d
    height = ((-m) % d) / d
    base = 1.0 / (2.0 * d) + (height - 0.5) * basis.omega
    for attempt in range(max_retries):
        w1 = _winding(basis, m, base, nodes)
        w2 = _winding(basis, m, base, 2 * nodes)
        if w1 is not None and w2 is not None and abs(w2 - w1) < 1e-3:
            count = int(np.rint(w2.real))
            if abs(w2 - count) < 0.01:
                return count
        base += 0.37 / d
    raise ConvergenceError(
        f"no clean contour found for zero count after {max_retries} attempts")
