"""Symmetric invariant tensors and the induced operator on S^2 V.

A symmetric tensor t in S^2 g, fed through a representation V of g,
induces t_*: S^2 V -> S^2 V by t_*(u . v) = sum t[i][j] (A_i u) . (A_j v)
(the polarization of the square form; "." is the symmetric product).
The quadratic Poisson construction downstream needs invariant t with
t_* = 0, so this module computes t_star matrices, tests invariance, and
solves the joint linear system for the admissible space.

All built-in cases are exact: structure constants and actions are
rational, kernels come from fraction-free row reduction, and the
headline dimensions (GL pairs, gsp4, sl2 before/after central
augmentation) are unambiguous integers, not numerical ranks.  Float
input is accepted through the same entry points with a 1e-10 residual
cutoff standing in for exactness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = [
    "LieRepData",
    "SymTensor",
    "augment_with_center",
    "check_invariance",
    "gl_pair_rep",
    "gl_pair_tensor",
    "gsp_rep",
    "load_rep_json",
    "load_tensor_json",
    "sl2_casimir_tensor",
    "sl2_rep",
    "solve_admissible",
    "sp_rep",
    "t_star",
]

FLOAT_TOL = 1e-10


def _is_exact(value) -> bool:
    return isinstance(value, (int, Fraction))


@dataclass(frozen=True)
class LieRepData:
    """Structure constants c[i][j][k] plus the action matrices on V."""

    dim_g: int
    dim_V: int
    bracket: tuple  # c[i][j][k], [x_i, x_j] = sum_k c[i][j][k] x_k
    action: tuple   # dim_g matrices, dim_V x dim_V

    def is_exact(self) -> bool:
        return (all(_is_exact(c) for pl in self.bracket for row in pl for c in row)
                and all(_is_exact(a) for mat in self.action for row in mat for a in row))

    def validate(self, tol: float = FLOAT_TOL) -> None:
        m, n = self.dim_g, self.dim_V
        c = self.bracket
        acts = self.action
        if len(c) != m or any(len(pl) != m or any(len(row) != m for row in pl)
                              for pl in c):
            raise ValueError("bracket array is not dim_g^3")
        if len(acts) != m or any(len(mat) != n or any(len(row) != n for row in mat)
                                 for mat in acts):
            raise ValueError("action is not dim_g matrices of size dim_V")
        cut = 0 if self.is_exact() else tol
        nz = [[[(s, c[i][j][s]) for s in range(m) if c[i][j][s] != 0]
               for j in range(m)] for i in range(m)]
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    if abs(c[i][j][k] + c[j][i][k]) > cut:
                        raise ValueError("bracket is not antisymmetric")
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    # jacobi on (x_i, x_j, x_k), coefficient of each x_u
                    acc = [0] * m
                    for s, val in nz[i][j]:
                        row = c[s][k]
                        for u in range(m):
                            if row[u] != 0:
                                acc[u] += val * row[u]
                    for s, val in nz[j][k]:
                        row = c[s][i]
                        for u in range(m):
                            if row[u] != 0:
                                acc[u] += val * row[u]
                    for s, val in nz[k][i]:
                        row = c[s][j]
                        for u in range(m):
                            if row[u] != 0:
                                acc[u] += val * row[u]
                    if any(abs(x) > cut for x in acc):
                        raise ValueError("structure constants fail jacobi")
        for i in range(m):
            for j in range(m):
                comm = _mat_sub(_mat_mul(acts[i], acts[j]),
                                _mat_mul(acts[j], acts[i]))
                expect = None
                for k in range(m):
                    if c[i][j][k] == 0:
                        continue
                    term = _mat_scale(acts[k], c[i][j][k])
                    expect = term if expect is None else _mat_add(expect, term)
                if expect is None:
                    expect = [[0] * n for _ in range(n)]
                for a in range(n):
                    for b in range(n):
                        if abs(comm[a][b] - expect[a][b]) > cut:
                            raise ValueError("action is not a homomorphism")


@dataclass(frozen=True)
class SymTensor:
    t: tuple  # symmetric dim_g x dim_g

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.t)
        m = len(rows)
        if any(len(row) != m for row in rows):
            raise ValueError("tensor matrix is not square")
        for i in range(m):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("tensor matrix is not symmetric")
        object.__setattr__(self, "t", rows)

    @property
    def dim(self) -> int:
        return len(self.t)


def _mat_mul(a, b):
    n, mid, p = len(a), len(b), len(b[0])
    out = [[0] * p for _ in range(n)]
    for i in range(n):
        ai = a[i]
        row = out[i]
        for k in range(mid):
            v = ai[k]
            if v == 0:
                continue
            bk = b[k]
            for j in range(p):
                row[j] += v * bk[j]
    return out


def _mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_scale(a, s):
    return [[s * x for x in row] for row in a]


def sym_pairs(n: int):
    """Index pairs (i, j), i <= j, ordering the monomial basis of S^2."""
    return [(i, j) for i in range(n) for j in range(i, n)]


def _sym_product_coeffs(x, y, pairs, index):
    """Coefficients of the symmetric product x . y in the monomial basis."""
    n = len(x)
    out = [0] * len(pairs)
    for a in range(n):
        xa, ya = x[a], y[a]
        if xa == 0 and ya == 0:
            continue
        for b in range(a, n):
            if a == b:
                val = xa * y[a]
            else:
                val = xa * y[b] + x[b] * ya
            if val != 0:
                out[index[(a, b)]] += val
    return out


def t_star(rep: LieRepData, t: SymTensor):
    """Matrix of the induced operator on S^2 V, monomial basis, i <= j."""
    if t.dim != rep.dim_g:
        raise ValueError("tensor dimension does not match dim_g")
    n = rep.dim_V
    pairs = sym_pairs(n)
    index = {pq: s for s, pq in enumerate(pairs)}
    nonzero = [(i, j, t.t[i][j])
               for i in range(rep.dim_g) for j in range(rep.dim_g)
               if t.t[i][j] != 0]
    cols = []
    for (p, q) in pairs:
        acc = [0] * len(pairs)
        for i, j, val in nonzero:
            ai_p = [row[p] for row in rep.action[i]]
            aj_q = [row[q] for row in rep.action[j]]
            for s, coef in enumerate(_sym_product_coeffs(ai_p, aj_q, pairs, index)):
                if coef != 0:
                    acc[s] += val * coef
        cols.append(acc)
    # columns were built per input basis vector; transpose to a matrix
    size = len(pairs)
    return [[cols[c][r] for c in range(size)] for r in range(size)]


def check_invariance(rep: LieRepData, t: SymTensor):
    """Max norm of (ad_z x 1 + 1 x ad_z)(t) over the basis z of g."""
    if t.dim != rep.dim_g:
        raise ValueError("tensor dimension does not match dim_g")
    m = rep.dim_g
    c = rep.bracket
    worst = 0
    for k in range(m):
        for u in range(m):
            for v in range(m):
                acc = 0
                for a in range(m):
                    if c[k][a][u] != 0:
                        acc += c[k][a][u] * t.t[a][v]
                    if c[k][a][v] != 0:
                        acc += c[k][a][v] * t.t[u][a]
                worst = max(worst, abs(acc))
    return worst


def _rref(rows, ncols, exact):
    """Row-reduce in place; returns pivot column list."""
    cut = 0 if exact else FLOAT_TOL
    pivots = []
    r = 0
    for col in range(ncols):
        best = None
        for i in range(r, len(rows)):
            if abs(rows[i][col]) > cut:
                if best is None or abs(rows[i][col]) > abs(rows[best][col]):
                    best = i
                    if exact:
                        break
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r][col]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                if abs(f) > 0:
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    del rows[r:]
    return pivots


def _kernel_basis(rows, ncols, exact):
    """Basis of the nullspace of the stacked row system.

    Each basis vector carries 1 at its own free coordinate and 0 at the
    other free coordinates, so coordinates of any kernel member can be
    read off at the free positions.
    """
    if exact:
        work = [list(map(Fraction, row)) for row in rows if any(x != 0 for x in row)]
    else:
        work = [list(row) for row in rows if any(x != 0 for x in row)]
    pivots = _rref(work, ncols, exact)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0) if exact else 0.0] * ncols
        vec[f] = Fraction(1) if exact else 1.0
        for rix, p in enumerate(pivots):
            vec[p] = -work[rix][f]
        basis.append(vec)
    return basis


def _normalize_exact(vec):
    """Scale to primitive integers with positive leading entry."""
    denom = 1
    for x in vec:
        denom = denom * Fraction(x).denominator // gcd(denom, Fraction(x).denominator)
    ints = [int(x * denom) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 1)
    if lead < 0:
        ints = [-x for x in ints]
    return ints


def _tensor_from_sym_vec(vec, pairs, m):
    t = [[0] * m for _ in range(m)]
    for s, (a, b) in enumerate(pairs):
        t[a][b] = vec[s]
        t[b][a] = vec[s]
    return SymTensor(tuple(tuple(row) for row in t))


def solve_admissible(rep: LieRepData):
    """Basis of the admissible space {t in (S^2 g)^g : t_* = 0}.

    Staged: first the invariant subspace of S^2 g (kernel of every
    ad_z x 1 + 1 x ad_z), then the t_* = 0 condition restricted to it.
    The second stage is tiny since invariant spaces are low dimensional.
    """
    exact = rep.is_exact()
    m = rep.dim_g
    c = rep.bracket
    gpairs = sym_pairs(m)
    gindex = {ab: s for s, ab in enumerate(gpairs)}
    nsym = len(gpairs)

    rows = []
    for k in range(m):
        for u in range(m):
            for v in range(u, m):
                row = [0 if exact else 0.0] * nsym
                for a in range(m):
                    if c[k][a][u] != 0:
                        row[gindex[(min(a, v), max(a, v))]] += c[k][a][u]
                    if c[k][a][v] != 0:
                        row[gindex[(min(u, a), max(u, a))]] += c[k][a][v]
                rows.append(row)
    invariant_vecs = _kernel_basis(rows, nsym, exact)
    if not invariant_vecs:
        return []

    candidates = [_tensor_from_sym_vec(vec, gpairs, m) for vec in invariant_vecs]
    star_cols = []
    for cand in candidates:
        mat = t_star(rep, cand)
        star_cols.append([entry for row in mat for entry in row])
    # solve sum_r s_r * star_cols[r] = 0 for the combination coefficients
    nrows = len(star_cols[0])
    stacked = [[star_cols[r][i] for r in range(len(star_cols))]
               for i in range(nrows)]
    combo = _kernel_basis(stacked, len(star_cols), exact)
    out = []
    for coeffs in combo:
        vec = [0 if exact else 0.0] * nsym
        for weight, base in zip(coeffs, invariant_vecs):
            if weight != 0:
                vec = [x + weight * y for x, y in zip(vec, base)]
        if exact:
            vec = _normalize_exact(vec)
        out.append(_tensor_from_sym_vec(vec, gpairs, m))
    return out


def augment_with_center(rep: LieRepData) -> LieRepData:
    """Append one central element acting as the identity on V."""
    m, n = rep.dim_g, rep.dim_V
    bracket = []
    for i in range(m + 1):
        plane = []
        for j in range(m + 1):
            if i < m and j < m:
                plane.append(tuple(rep.bracket[i][j]) + (0,))
            else:
                plane.append((0,) * (m + 1))
        bracket.append(tuple(plane))
    ident = tuple(tuple(1 if a == b else 0 for b in range(n)) for a in range(n))
    return LieRepData(dim_g=m + 1, dim_V=n,
                      bracket=tuple(bracket),
                      action=tuple(rep.action) + (ident,))


# ---------------------------------------------------------------- built-ins


def _gl_basis_bracket(r):
    """Structure constants of gl_r in the E_ij basis, index i*r + j."""
    m = r * r
    c = [[[0] * m for _ in range(m)] for _ in range(m)]
    for i in range(r):
        for j in range(r):
            for k in range(r):
                for l in range(r):
                    p, q = i * r + j, k * r + l
                    # [E_ij, E_kl] = d_jk E_il - d_li E_kj
                    if j == k:
                        c[p][q][i * r + l] += 1
                    if l == i:
                        c[p][q][k * r + j] -= 1
    return c


def gl_pair_rep(r1: int, r2: int) -> LieRepData:
    """gl_{r1} + gl_{r2} acting on Mat(r1, r2) by (X, Y) . M = X M - M Y."""
    if r1 < 1 or r2 < 1:
        raise ValueError("ranks must be positive")
    m = r1 * r1 + r2 * r2
    n = r1 * r2
    c1 = _gl_basis_bracket(r1)
    c2 = _gl_basis_bracket(r2)
    c = [[[0] * m for _ in range(m)] for _ in range(m)]
    off = r1 * r1
    for p in range(off):
        for q in range(off):
            for s in range(off):
                c[p][q][s] = c1[p][q][s]
    for p in range(r2 * r2):
        for q in range(r2 * r2):
            for s in range(r2 * r2):
                c[off + p][off + q][off + s] = c2[p][q][s]
    action = []
    for i in range(r1):
        for j in range(r1):
            mat = [[0] * n for _ in range(n)]
            # E_ij M: row a=i picks row j of M
            for b in range(r2):
                mat[i * r2 + b][j * r2 + b] = 1
            action.append(tuple(tuple(row) for row in mat))
    for k in range(r2):
        for l in range(r2):
            mat = [[0] * n for _ in range(n)]
            # -(M F_kl): column b=l picks column k of M
            for a in range(r1):
                mat[a * r2 + l][a * r2 + k] = -1
            action.append(tuple(tuple(row) for row in mat))
    return LieRepData(
        dim_g=m, dim_V=n,
        bracket=tuple(tuple(tuple(row) for row in pl) for pl in c),
        action=tuple(action))


def gl_pair_tensor(r1: int, r2: int) -> SymTensor:
    """The canonical tensor (t1, -t2), t1 = sum E_ij x E_ji."""
    m = r1 * r1 + r2 * r2
    t = [[0] * m for _ in range(m)]
    for i in range(r1):
        for j in range(r1):
            t[i * r1 + j][j * r1 + i] += 1
    off = r1 * r1
    for k in range(r2):
        for l in range(r2):
            t[off + k * r2 + l][off + l * r2 + k] -= 1
    return SymTensor(tuple(tuple(row) for row in t))


def _commutator_rep_from_matrices(mats, n):
    """LieRepData for a list of matrices closed under commutator."""
    flat = [[mat[a][b] for a in range(n) for b in range(n)] for mat in mats]
    work = [list(map(Fraction, row)) for row in flat]
    pivots = _rref(work, n * n, exact=True)
    if len(pivots) != len(mats):
        raise ValueError("matrix list is not linearly independent")
    m = len(mats)
    c = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            comm = _mat_sub(_mat_mul(mats[i], mats[j]), _mat_mul(mats[j], mats[i]))
            vec = [comm[a][b] for a in range(n) for b in range(n)]
            coeffs = _solve_in_span(flat, vec)
            for k, val in enumerate(coeffs):
                c[i][j][k] = val
                c[j][i][k] = -val
    return LieRepData(
        dim_g=m, dim_V=n,
        bracket=tuple(tuple(tuple(row) for row in pl) for pl in c),
        action=tuple(tuple(tuple(x for x in row) for row in mat) for mat in mats))


def _solve_in_span(basis_rows, vec):
    """Exact coefficients expressing vec in the span of basis_rows."""
    k = len(basis_rows)
    ncols = len(vec)
    # augmented elimination: reduce [basis; vec] tracking multipliers
    aug = [list(map(Fraction, row)) +
           [Fraction(1) if i == j else Fraction(0) for j in range(k)]
           for i, row in enumerate(basis_rows)]
    pivots = []
    r = 0
    for col in range(ncols):
        hit = next((i for i in range(r, k) if aug[i][col] != 0), None)
        if hit is None:
            continue
        aug[r], aug[hit] = aug[hit], aug[r]
        piv = aug[r][col]
        aug[r] = [x / piv for x in aug[r]]
        for i in range(k):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == k:
            break
    target = list(map(Fraction, vec))
    coeffs = [Fraction(0)] * k
    for rix, col in enumerate(pivots):
        if target[col] != 0:
            f = target[col]
            target = [x - f * y for x, y in zip(target, aug[rix][:ncols])]
            for j in range(k):
                coeffs[j] += f * aug[rix][ncols + j]
    if any(x != 0 for x in target):
        raise ValueError("vector is outside the span")
    return coeffs


def symplectic_form(two_r: int):
    """Antidiagonal form with +1 in the top half, -1 in the bottom."""
    if two_r < 2 or two_r % 2:
        raise ValueError("need even size at least 2")
    n = two_r
    omega = [[0] * n for _ in range(n)]
    for i in range(n):
        omega[i][n - 1 - i] = 1 if i < n // 2 else -1
    return omega


def sp_rep(two_r: int) -> LieRepData:
    """sp_{2r} on its defining representation, built as an exact kernel.

    The algebra is {X : X^T Omega + Omega X = 0} for the antidiagonal
    symplectic form; the basis comes out of row reduction of that linear
    condition over the matrix entries.
    """
    n = two_r
    omega = symplectic_form(n)
    rows = []
    for a in range(n):
        for b in range(a, n):  # X^T Omega + Omega X is antisymmetric
            row = [0] * (n * n)
            for k in range(n):
                # (X^T Omega)[a][b] = X[k][a] Omega[k][b]
                row[k * n + a] += omega[k][b]
                # (Omega X)[a][b] = Omega[a][k] X[k][b]
                row[k * n + b] += omega[a][k]
            rows.append(row)
    basis_vecs = _kernel_basis(rows, n * n, exact=True)
    mats = []
    for vec in basis_vecs:
        vec = _normalize_exact(vec)
        mats.append([[vec[a * n + b] for b in range(n)] for a in range(n)])
    expected = (n // 2) * (n + 1)
    if len(mats) != expected:
        raise AssertionError(f"sp_{n} basis has size {len(mats)}, expected {expected}")
    return _commutator_rep_from_matrices(mats, n)


def gsp_rep(two_r: int) -> LieRepData:
    """sp_{2r} plus the central identity (the similitude extension)."""
    return augment_with_center(sp_rep(two_r))


def sl2_rep() -> LieRepData:
    """sl2 on C^2, basis (h, e, f)."""
    h = [[1, 0], [0, -1]]
    e = [[0, 1], [0, 0]]
    f = [[0, 0], [1, 0]]
    return _commutator_rep_from_matrices([h, e, f], 2)


def sl2_casimir_tensor() -> SymTensor:
    """Killing-dual Casimir in the (h, e, f) basis: h x h / 8 + (exf + fxe)/4."""
    q = Fraction(1, 8)
    half = Fraction(1, 4)
    z = Fraction(0)
    return SymTensor(((q, z, z), (z, z, half), (z, half, z)))


# ------------------------------------------------------------------- file IO


def _parse_scalar(value):
    if isinstance(value, str):
        if "/" in value:
            num, den = value.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(value))
    if isinstance(value, bool):
        raise ValueError("boolean is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    raise ValueError(f"cannot parse scalar {value!r}")


def load_rep_json(path: str) -> LieRepData:
    with open(path) as fh:
        data = json.load(fh)
    bracket = tuple(tuple(tuple(_parse_scalar(x) for x in row) for row in pl)
                    for pl in data["bracket"])
    action = tuple(tuple(tuple(_parse_scalar(x) for x in row) for row in mat)
                   for mat in data["action"])
    rep = LieRepData(dim_g=int(data["dim_g"]), dim_V=int(data["dim_V"]),
                     bracket=bracket, action=action)
    rep.validate()
    return rep


def load_tensor_json(path: str) -> SymTensor:
    with open(path) as fh:
        data = json.load(fh)
    rows = data["t"] if isinstance(data, dict) else data
    return SymTensor(tuple(tuple(_parse_scalar(x) for x in row) for row in rows))
