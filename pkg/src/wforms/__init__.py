"""Monomial bijections for weighted quotient rings and exact determinant certificates.

The ring is k[x, y, z] with wt(x)=1, wt(y)=2, wt(z)=3.  For m >= 2 we compare the
monomial bases of R = k[x,y,z]/(x,y)^(3m-2) and M = (x,y,z)^(3m-2)/(x,y)^(3m-2)
slice by slice, and certify that multiplication by a general form of weight 3m
is an isomorphism R[-3m] -> M.
"""

from wforms.core_arith import eps, eta, lambda_rho, residues
from wforms.monomials import DomainError, Monomial, ResourceError, enumerate_basis
from wforms.bijection import phi

__all__ = [
    "DomainError",
    "Monomial",
    "ResourceError",
    "enumerate_basis",
    "eps",
    "eta",
    "lambda_rho",
    "phi",
    "residues",
]
