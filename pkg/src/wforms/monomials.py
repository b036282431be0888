"""Monomial bases of R, M and their reductions R', M', graded by weight.

Monomials are plain integer triples ``(a, b, c)`` standing for x^a y^b z^c.
On the M side the same triple is read as ``(i, j, k)`` and graded by its
M-weight ``i + 2j + 3k - 3m``, so that both sides of a slice share the index w.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

Monomial = tuple[int, int, int]

SIDES = ("R", "M", "Rprime", "Mprime")


class DomainError(ValueError):
    """An argument lies outside the domain of a formula."""


class ResourceError(RuntimeError):
    """An exhaustive computation exceeded its budget."""


class Region(str, Enum):
    RECTANGULAR = "rectangular"
    TRIANGULAR = "triangular"


def vadd(u: Monomial, q: Monomial) -> Monomial:
    return (u[0] + q[0], u[1] + q[1], u[2] + q[2])


def vsub(v: Monomial, u: Monomial) -> Monomial:
    return (v[0] - u[0], v[1] - u[1], v[2] - u[2])


def vscale(k: int, u: Monomial) -> Monomial:
    return (k * u[0], k * u[1], k * u[2])


def nonneg(u: Monomial) -> bool:
    return u[0] >= 0 and u[1] >= 0 and u[2] >= 0


def weight(u: Monomial) -> int:
    return u[0] + 2 * u[1] + 3 * u[2]


def weight_R(u: Monomial) -> int:
    return weight(u)


def weight_M(v: Monomial, m: int) -> int:
    return weight(v) - 3 * m


def std_degree(u: Monomial) -> int:
    return u[0] + u[1] + u[2]


def t_invariant_R(u: Monomial) -> int:
    return u[2] // 2


def t_invariant_M(v: Monomial, m: int) -> int:
    return (3 * (m - 1) - (v[0] + v[1])) // 3


@dataclass(frozen=True)
class WeightConstants:
    """Constants attached to a weight slice w for a fixed m."""

    m: int
    w: int

    @property
    def tau(self) -> int:
        # threshold number
        return self.w // 3 - (self.m - 1)

    @property
    def delta(self) -> int:
        return 6 * self.m - 9 - self.w

    @property
    def c_w(self) -> int:
        return 2 * (self.tau + 1)

    @property
    def n_max(self) -> int:
        return self.delta // 6

    def delta_n(self, n: int) -> int:
        return self.delta - 6 * n


# -- membership ----------------------------------------------------------


def in_R(u: Monomial, m: int) -> bool:
    return nonneg(u) and u[0] + u[1] <= 3 * (m - 1)


def in_M(v: Monomial, m: int) -> bool:
    i, j, k = v
    return nonneg(v) and i + j <= 3 * (m - 1) and i + j + k >= 3 * m - 2


def in_Rprime(u: Monomial, m: int) -> bool:
    a, b, c = u
    return nonneg(u) and 2 * a + 2 * b + 3 * c <= 6 * m - 9


def in_Mprime(v: Monomial, m: int) -> bool:
    i, j, k = v
    return in_M(v, m) and 2 * i + 2 * j + 3 * k <= 9 * (m - 1)


def member(mono: Monomial, m: int, side: str) -> bool:
    return {"R": in_R, "M": in_M, "Rprime": in_Rprime, "Mprime": in_Mprime}[side](mono, m)


# -- psi -----------------------------------------------------------------


def psi(u: Monomial, m: int) -> Monomial:
    """The graded isomorphism R[-3m] -> M on monomials."""
    a, b, c = u
    if not nonneg(u):
        raise DomainError(f"psi: negative exponent in {u}")
    if a + b > 3 * (m - 1):
        raise DomainError(f"psi: a+b <= 3(m-1) fails for {u}, m={m}")
    return (3 * (m - 1) - a - b, a, 1 + b + c)


def psi_inverse(v: Monomial, m: int) -> Monomial:
    i, j, k = v
    if not nonneg(v):
        raise DomainError(f"psi_inverse: negative exponent in {v}")
    if i + j > 3 * (m - 1):
        raise DomainError(f"psi_inverse: i+j <= 3(m-1) fails for {v}, m={m}")
    if i + j + k < 3 * m - 2:
        raise DomainError(f"psi_inverse: i+j+k >= 3m-2 fails for {v}, m={m}")
    return (j, 3 * (m - 1) - i - j, i + j + k - 3 * m + 2)


# -- enumeration ---------------------------------------------------------


def monomials_of_weight(W: int) -> list[Monomial]:
    """All monomials of raw weight W, lexicographic."""
    if W < 0:
        return []
    out = []
    for c in range(W // 3 + 1):
        for b in range((W - 3 * c) // 2 + 1):
            out.append((W - 3 * c - 2 * b, b, c))
    out.sort()
    return out


@lru_cache(maxsize=None)
def _basis(m: int, w: int, side: str) -> tuple[Monomial, ...]:
    if side not in SIDES:
        raise DomainError(f"unknown side {side!r}")
    W = w + 3 * m if side in ("M", "Mprime") else w
    return tuple(u for u in monomials_of_weight(W) if member(u, m, side))


def enumerate_basis(m: int, w: int, which: str) -> list[Monomial]:
    """Monomial basis of the weight-w slice of R, M, R' or M', sorted lexicographically.

    For the M sides, w is the M-weight.
    """
    return list(_basis(m, w, which))


def dims_check(m: int, w: int) -> tuple[int, int]:
    return len(_basis(m, w, "R")), len(_basis(m, w, "M"))


def classify_region(mono: Monomial, m: int, side: str = "R") -> Region:
    """Rectangular iff the t-invariant does not exceed the threshold of its weight."""
    if side in ("R", "Rprime"):
        if not in_Rprime(mono, m):
            raise DomainError(f"{mono} is not in R' for m={m}")
        w, t = weight_R(mono), t_invariant_R(mono)
    elif side in ("M", "Mprime"):
        if not in_Mprime(mono, m):
            raise DomainError(f"{mono} is not in M' for m={m}")
        w, t = weight_M(mono, m), t_invariant_M(mono, m)
    else:
        raise DomainError(f"unknown side {side!r}")
    return Region.RECTANGULAR if t <= WeightConstants(m, w).tau else Region.TRIANGULAR


def basis_record(m: int, w: int, side: str) -> dict:
    return {"m": m, "w": w, "side": side, "monomials": [list(u) for u in _basis(m, w, side)]}

