"""The residue set R_d and its symmetric-group action.

R_d collects the residues r mod d with both r and r + 1 invertible.
Two maps act on it: phi(r) = -(r+1)^{-1} of order three and the
involution beta(r) = r^{-1}.  They satisfy phi beta = beta phi^{-1},
so together they generate a copy of S3 permuting R_d.

For even d the set is empty (one of r, r+1 is even), so everything
interesting happens at odd d, where phi beta has the single fixed point
r = -2 and phi fixes exactly the roots of r^2 + r + 1 = 0 mod d.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

__all__ = [
    "PHI",
    "BETA",
    "IDENTITY",
    "ResidueSet",
    "S3Element",
    "all_elements",
    "apply",
    "check_group_relations",
    "fixed_points",
    "orbit_report",
    "residue_set",
]


@dataclass(frozen=True)
class S3Element:
    """Canonical form phi^k beta^e with k mod 3, e mod 2.

    Multiplication uses phi^a beta phi^b = phi^{a-b} beta, the dihedral
    normal form; there are six elements in total.
    """

    k: int
    e: int

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % 3)
        object.__setattr__(self, "e", self.e % 2)

    def __mul__(self, other: "S3Element") -> "S3Element":
        # (phi^k1 b^e1)(phi^k2 b^e2): move b^e1 across phi^k2
        k2 = -other.k if self.e else other.k
        return S3Element(self.k + k2, self.e + other.e)

    def inverse(self) -> "S3Element":
        if self.e:
            return self  # reflections are involutions
        return S3Element(-self.k, 0)

    def __str__(self) -> str:
        phi_part = ("", "phi", "phi^2")[self.k]
        beta_part = "beta" if self.e else ""
        if not phi_part and not beta_part:
            return "id"
        return (phi_part + (" " if phi_part and beta_part else "") + beta_part)


IDENTITY = S3Element(0, 0)
PHI = S3Element(1, 0)
BETA = S3Element(0, 1)


def all_elements():
    return tuple(S3Element(k, e) for e in (0, 1) for k in (0, 1, 2))


@dataclass(frozen=True)
class ResidueSet:
    d: int
    members: tuple

    def __contains__(self, r: int) -> bool:
        return r in self.members


def residue_set(d: int) -> ResidueSet:
    """Residues r mod d with gcd(r, d) = gcd(r + 1, d) = 1."""
    if d < 2:
        raise ValueError("modulus must be at least 2")
    members = tuple(r for r in range(1, d)
                    if gcd(r, d) == 1 and gcd(r + 1, d) == 1)
    return ResidueSet(d=d, members=members)


def _phi(r: int, d: int) -> int:
    return (-pow(r + 1, -1, d)) % d


def _beta(r: int, d: int) -> int:
    return pow(r, -1, d) % d


def apply(g: S3Element, r: int, d: int) -> int:
    """Act by g on a residue.  Raises if r is outside R_d."""
    if gcd(r, d) != 1 or gcd(r + 1, d) != 1:
        raise ValueError(f"residue {r} is not in R_{d}")
    out = r % d
    if g.e:
        out = _beta(out, d)
    for _ in range(g.k):
        out = _phi(out, d)
    return out


def check_group_relations(d: int) -> bool:
    """phi^3 = beta^2 = (phi beta)^2 = id pointwise on R_d."""
    rset = residue_set(d)
    phibeta = PHI * BETA
    for r in rset.members:
        if apply(PHI, apply(PHI, apply(PHI, r, d), d), d) != r:
            return False
        if apply(BETA, apply(BETA, r, d), d) != r:
            return False
        if apply(phibeta, apply(phibeta, r, d), d) != r:
            return False
        # closure: images stay inside R_d (apply would raise otherwise)
        apply(PHI, apply(PHI, r, d), d)
        apply(BETA, r, d)
    return True


def fixed_points(d: int) -> dict:
    """Fixed residues of phi and of phi beta, by direct scan.

    The scan is cross-checked against the defining congruences:
    phi-fixed means r^2 + r + 1 = 0 mod d, and for odd d the phi beta
    fixed set is exactly {d - 2} when that residue lies in R_d.
    """
    rset = residue_set(d)
    phibeta = PHI * BETA
    phi_fixed = tuple(r for r in rset.members if apply(PHI, r, d) == r)
    pb_fixed = tuple(r for r in rset.members if apply(phibeta, r, d) == r)
    for r in phi_fixed:
        assert (r * r + r + 1) % d == 0
    if d % 2:
        expected = tuple(r for r in ((d - 2) % d,) if r in rset.members)
        assert pb_fixed == expected
    return {"phi_fixed": phi_fixed, "phibeta_fixed": pb_fixed}


def orbit_report(d: int):
    """Partition of R_d into orbits of the full six-element group."""
    rset = residue_set(d)
    remaining = set(rset.members)
    orbits = []
    group = all_elements()
    for r in rset.members:
        if r not in remaining:
            continue
        orbit = sorted({apply(g, r, d) for g in group})
        orbits.append(tuple(orbit))
        remaining.difference_update(orbit)
    return orbits
