"""Brute-force oracles over divisible bijections R'_w -> M'_w.

A divisible bijection is a perfect matching in the bipartite graph with an
edge u -> v whenever u divides v.  The enumerator backtracks over domain
monomials, constrained by a target multiset of multipliers, and records the
parity of each matching relative to a reference bijection (by default phi).
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from wforms.bijection import E1, phi, phihat, q_lambda, special_block
from wforms.monomials import (
    DomainError,
    Monomial,
    Region,
    ResourceError,
    WeightConstants,
    classify_region,
    enumerate_basis,
    nonneg,
    vsub,
    weight_M,
    weight_R,
)

DEFAULT_CAP = 10**7

Multiset = Counter  # Counter[Monomial, int]


@dataclass(frozen=True)
class BijectionTable:
    domain: tuple[Monomial, ...]
    image: tuple[Monomial, ...]
    m: int

    def __post_init__(self):
        if len(self.domain) != len(self.image):
            raise DomainError("domain and image lengths differ")
        if len(set(self.image)) != len(self.image):
            raise DomainError("image entries are not pairwise distinct")
        for u, v in zip(self.domain, self.image):
            if weight_R(u) != weight_M(v, self.m):
                raise DomainError(f"weight mismatch in row {u} -> {v}")

    def as_dict(self) -> dict[Monomial, Monomial]:
        return dict(zip(self.domain, self.image))


@dataclass(frozen=True)
class SignedCount:
    count: int
    signed: int
    parity_uniform: bool

    def __post_init__(self):
        if self.parity_uniform and abs(self.signed) != self.count:
            raise ValueError("parity_uniform requires |signed| == count")

    @property
    def noncancelling(self) -> bool:
        return self.parity_uniform and self.signed != 0


def phi_table(m: int, w: int) -> BijectionTable:
    dom = tuple(enumerate_basis(m, w, "Rprime"))
    return BijectionTable(dom, tuple(phi(u, m) for u in dom), m)


def check_divisible(bij: BijectionTable) -> bool:
    return all(nonneg(vsub(v, u)) for u, v in zip(bij.domain, bij.image))


def multiset_of(bij: BijectionTable) -> Multiset:
    if not check_divisible(bij):
        raise DomainError("multiplier multiset of a non-divisible table")
    return Counter(vsub(v, u) for u, v in zip(bij.domain, bij.image))


def multiset_list(ms: Multiset) -> list:
    return [[list(q), k] for q, k in sorted(ms.items())]


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation of range(len(perm)), by cycle decomposition."""
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def relative_parity(reference: dict, candidate: dict) -> int:
    """Sign of candidate^{-1} o reference as a permutation of the domain."""
    dom = sorted(reference)
    idx = {u: k for k, u in enumerate(dom)}
    inv = {v: u for u, v in candidate.items()}
    return permutation_sign([idx[inv[reference[u]]] for u in dom])


# -- matching enumeration ----------------------------------------------------


def _matchings(
    domain: Sequence[Monomial],
    codomain: Sequence[Monomial],
    target: Optional[Multiset],
    cap: int,
    allow: Optional[Callable[[Monomial, Monomial], bool]] = None,
) -> Iterable[dict[Monomial, Monomial]]:
    cod = set(codomain)
    cands: dict[Monomial, list[tuple[Monomial, Monomial]]] = {}
    for u in domain:
        opts = []
        for v in codomain:
            q = vsub(v, u)
            if nonneg(q) and (target is None or q in target) and (allow is None or allow(u, q)):
                opts.append((v, q))
        cands[u] = opts
    # most constrained first; ties broken by the canonical order
    order = sorted(domain, key=lambda u: (len(cands[u]), u))
    remaining = Counter(target) if target is not None else None
    used: set[Monomial] = set()
    assign: dict[Monomial, Monomial] = {}
    nodes = 0

    def rec(k: int):
        nonlocal nodes
        nodes += 1
        if nodes > cap:
            raise ResourceError(f"backtracking exceeded {cap} nodes")
        if k == len(order):
            yield dict(assign)
            return
        u = order[k]
        for v, q in cands[u]:
            if v in used or (remaining is not None and remaining[q] == 0):
                continue
            used.add(v)
            assign[u] = v
            if remaining is not None:
                remaining[q] -= 1
            yield from rec(k + 1)
            if remaining is not None:
                remaining[q] += 1
            used.discard(v)
            del assign[u]

    if len(domain) != len(cod):
        return
    yield from rec(0)


def enumerate_matching_bijections(
    m: int,
    w: int,
    target: Optional[Multiset] = None,
    cap: int = DEFAULT_CAP,
) -> list[tuple[BijectionTable, int]]:
    """All divisible bijections R'_w -> M'_w with multiplier multiset ``target``.

    ``target=None`` enumerates every divisible bijection.  Each result carries
    its parity relative to phi.  Results are sorted by image tuple.
    """
    dom = enumerate_basis(m, w, "Rprime")
    cod = enumerate_basis(m, w, "Mprime")
    ref = {u: phi(u, m) for u in dom}
    out = []
    for match in _matchings(dom, cod, target, cap):
        table = BijectionTable(tuple(dom), tuple(match[u] for u in dom), m)
        out.append((table, relative_parity(ref, match)))
    out.sort(key=lambda tp: tp[0].image)
    return out


def signed_count(results: Sequence[tuple[BijectionTable, int]]) -> SignedCount:
    parities = [p for _, p in results]
    return SignedCount(len(parities), sum(parities), len(set(parities)) <= 1)


def phi_multiset(m: int, w: int) -> Multiset:
    return multiset_of(phi_table(m, w))


def check_noncancellation(m: int, w: int, cap: int = DEFAULT_CAP) -> SignedCount:
    return signed_count(enumerate_matching_bijections(m, w, phi_multiset(m, w), cap))


def check_uniqueness(m: int, w: int, cap: int = DEFAULT_CAP) -> bool:
    return check_noncancellation(m, w, cap).count == 1


def multisets_with_unique_bijection(m: int, w: int, cap: int = DEFAULT_CAP) -> list[Multiset]:
    """Multisets realised by exactly one divisible bijection (full sweep)."""
    groups: dict[tuple, int] = Counter()
    for table, _ in enumerate_matching_bijections(m, w, None, cap):
        groups[tuple(sorted(multiset_of(table).items()))] += 1
    return [Counter(dict(key)) for key, k in groups.items() if k == 1]


def predicted_count(m: int, w: int) -> int:
    wc = WeightConstants(m, w)
    return (wc.tau + 2) ** (wc.n_max + 1)


# -- special blocks ------------------------------------------------------------


def block_by_definition(m: int, w: int, n: int, j_floor: Optional[int] = None):
    """B_n and C_n cut out of R'_w, M'_w by coordinate conditions.

    The M side uses j >= j_floor, defaulting to 6n + eta(w).
    """
    wc = WeightConstants(m, w)
    d = wc.delta_n(n)
    if j_floor is None:
        j_floor = 6 * n + w % 3
    B = [u for u in enumerate_basis(m, w, "Rprime") if u[0] in (d, d - 1) and u[1] >= 3 * n - 1 + w % 3]
    C = [v for v in enumerate_basis(m, w, "Mprime") if v[0] in (d, d - 1) and v[1] >= j_floor]
    return B, C


def block_family(m: int, w: int, n: int, cap: int = DEFAULT_CAP) -> list[dict]:
    """Bijections B_n -> C_n obeying the family restrictions.

    Divisible; no multiplier q_h or q_h + e1 with h < n; q_n used at most tau+1 times.
    """
    blk = special_block(m, w, n)
    forbidden = set()
    for h in range(n):
        forbidden.add(q_lambda(m, h))
        forbidden.add(tuple(x + y for x, y in zip(q_lambda(m, h), E1)))
    qn = q_lambda(m, n)
    out = []
    for match in _matchings(blk.B_elems, blk.C_elems, None, cap,
                            allow=lambda u, q: q not in forbidden):
        if sum(1 for u, v in match.items() if vsub(v, u) == qn) <= blk.tau + 1:
            out.append(match)
    return out


def block_family_check(m: int, w: int, n: int, cap: int = DEFAULT_CAP) -> bool:
    blk = special_block(m, w, n)
    expected = [phihat(m, w, n, l0) for l0 in range(blk.tau + 2)]
    found = block_family(m, w, n, cap)
    key = lambda d: tuple(sorted(d.items()))  # noqa: E731
    if sorted(map(key, found)) != sorted(map(key, expected)):
        return False
    ref = expected[0]
    ms = Counter(vsub(v, u) for u, v in ref.items())
    for f in expected:
        if Counter(vsub(v, u) for u, v in f.items()) != ms:
            return False
        if relative_parity(ref, f) != 1:
            return False
    return True


def successive_three_cycles(m: int, w: int, n: int) -> bool:
    """phihat_{l+1}^{-1} o phihat_l moves exactly three monomials, cyclically."""
    tau = special_block(m, w, n).tau
    for l0 in range(tau + 1):
        a, b = phihat(m, w, n, l0), phihat(m, w, n, l0 + 1)
        inv = {v: u for u, v in b.items()}
        moved = {u: inv[a[u]] for u in a if inv[a[u]] != u}
        if len(moved) != 3:
            return False
        x = next(iter(moved))
        if moved[moved[moved[x]]] != x:
            return False
    return True


# -- r-invariant census ---------------------------------------------------------


def nu_counts(m: int, w: int, r: int) -> tuple[int, int]:
    """Images with j = 2r (plus) and j = 2r+1 (minus) over the triangular slice."""
    plus = minus = 0
    for v in enumerate_basis(m, w, "Mprime"):
        if classify_region(v, m, "M") is not Region.TRIANGULAR:
            continue
        if v[1] == 2 * r:
            plus += 1
        elif v[1] == 2 * r + 1:
            minus += 1
    return plus, minus


def triangular_r_count(m: int, w: int, r: int) -> int:
    return sum(1 for u in enumerate_basis(m, w, "Rprime")
               if classify_region(u, m) is Region.TRIANGULAR and u[1] == r)


def bprime_census(m: int, w: int) -> Counter:
    return Counter(phi(u, m)[1] - u[1] for u in enumerate_basis(m, w, "Rprime")
                   if classify_region(u, m) is Region.TRIANGULAR)


# -- reports ----------------------------------------------------------------------


def verification_report(m: int, w: int, cap: int = DEFAULT_CAP, timing: bool = True) -> dict:
    t0 = time.perf_counter()
    ms = phi_multiset(m, w)
    sc = check_noncancellation(m, w, cap)
    rep = {
        "m": m,
        "w": w,
        "multiset": multiset_list(ms),
        "count": sc.count,
        "signed": sc.signed,
        "parity_uniform": sc.parity_uniform,
    }
    if timing:
        rep["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    return rep


def report_json(rep: dict) -> str:
    return json.dumps(rep, sort_keys=True)
