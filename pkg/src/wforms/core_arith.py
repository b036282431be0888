"""Residues mod 2, 3 and the (lambda, rho) decomposition mod 6."""

from __future__ import annotations

from typing import NamedTuple

RHO_VALUES = (-6, -4, -3, -2, -1, 1)


class ResiduePair(NamedTuple):
    eps: int
    eta: int


class LambdaRho(NamedTuple):
    lam: int
    rho: int


def eps(n: int) -> int:
    """Residue of n mod 2 in {0, 1}."""
    return n % 2


def eta(n: int) -> int:
    """Residue of n mod 3 in {0, 1, 2}."""
    return n % 3


def residues(n: int) -> ResiduePair:
    return ResiduePair(n % 2, n % 3)


def lambda_rho(n: int) -> LambdaRho:
    """Write n = 6*lam + rho with rho in {-6, -4, -3, -2, -1, 1}.

    >>> lambda_rho(1), lambda_rho(0)
    (LambdaRho(lam=0, rho=1), LambdaRho(lam=1, rho=-6))
    """
    r = n % 6
    rho = {0: -6, 1: 1, 2: -4, 3: -3, 4: -2, 5: -1}[r]
    return LambdaRho((n - rho) // 6, rho)


def lam(n: int) -> int:
    return lambda_rho(n).lam


def rho(n: int) -> int:
    return lambda_rho(n).rho


def rho_closed(n: int) -> int:
    return 3 * eps(n) + 2 * eta(-n) - 6


def lambda_closed(n: int) -> int:
    return (n - rho_closed(n)) // 6


