"""The weight- and t-preserving bijection R' -> M' with divisibility.

On the rectangular region the map is ``u -> u + q_lambda`` with
``q_lambda = (0, 3*lambda, m - 2*lambda)``; on the triangular region it is
the composite of two (w, r, s) parametrizations.  Special blocks, markers,
filtrations and the low-a' tables are the structural data used to analyse
when another divisible bijection can share the multiplier multiset.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from wforms.core_arith import eps, eta, lam
from wforms.monomials import (
    DomainError,
    Monomial,
    Region,
    WeightConstants,
    classify_region,
    enumerate_basis,
    in_Mprime,
    in_Rprime,
    psi_inverse,
    t_invariant_M,
    t_invariant_R,
    vadd,
    vscale,
    vsub,
    weight_M,
    weight_R,
)

E1: Monomial = (1, 1, -1)
E2: Monomial = (0, 3, -2)


def q_lambda(m: int, h: int) -> Monomial:
    return (0, 3 * h, m - 2 * h)


# -- rectangular parametrizations ----------------------------------------


def _check_nat(*xs: int) -> None:
    if any(x < 0 for x in xs):
        raise DomainError(f"parameters must be non-negative, got {xs}")


def param_rect_u(m: int, w: int, t: int, a: int) -> Monomial:
    _check_nat(w, t, a)
    if w + a > 6 * m - 9:
        raise DomainError(f"w+a <= 6m-9 fails for (w,t,a)=({w},{t},{a}), m={m}")
    e = eps(w + a)
    if w - a - 6 * t - 3 * e < 0:
        raise DomainError(f"w-a-6t-3eps(w+a) >= 0 fails for (w,t,a)=({w},{t},{a})")
    return (a, -3 * t + (w - a - 3 * e) // 2, 2 * t + e)


def param_rect_u_inverse(u: Monomial) -> tuple[int, int, int]:
    return weight_R(u), t_invariant_R(u), u[0]


def param_rect_v(m: int, w: int, t: int, i: int) -> Monomial:
    _check_nat(w, t, i)
    if w + i > 6 * m - 9:
        raise DomainError(f"w+i <= 6m-9 fails for (w,t,i)=({w},{t},{i}), m={m}")
    h = eta(w + i)
    if not 3 * (m - 1 + t) - w + h <= i:
        raise DomainError(f"lower bound 3(m-1+t)-w+eta(w+i) <= i fails for ({w},{t},{i})")
    if not i <= 3 * (m - 1 - t) - h:
        raise DomainError(f"upper bound i <= 3(m-1-t)-eta(w+i) fails for ({w},{t},{i})")
    return (i, -3 * t + 3 * (m - 1) - i - h, 2 * t - (m - 2) + (w + i + 2 * h) // 3)


def param_rect_v_inverse(v: Monomial, m: int) -> tuple[int, int, int]:
    return weight_M(v, m), t_invariant_M(v, m), v[0]


# -- rectangular map and order --------------------------------------------


def lambda_of(u: Monomial, w: int, m: int) -> int:
    return lam(WeightConstants(m, w).delta - u[0])


def phi_rect(u: Monomial, m: int) -> Monomial:
    if classify_region(u, m, "R") is not Region.RECTANGULAR:
        raise DomainError(f"{u} is not in the rectangular region for m={m}")
    return vadd(u, q_lambda(m, lambda_of(u, weight_R(u), m)))


def prec_key(mono: Monomial, m: int, side: str = "R") -> tuple[int, int, int]:
    """Sort key realising the order on a rectangular slice.

    Lexicographic on (lambda(delta_w - a), -a, t); for fixed lambda a larger
    first coordinate means a smaller rho, so this is the (lambda, rho, t) order.
    """
    if side == "R":
        w, t = weight_R(mono), t_invariant_R(mono)
    else:
        w, t = weight_M(mono, m), t_invariant_M(mono, m)
    a = mono[0]
    return (lam(WeightConstants(m, w).delta - a), -a, t)


def prec_compare(x: Monomial, y: Monomial, m: int, side: str = "R") -> int:
    wx = weight_R(x) if side == "R" else weight_M(x, m)
    wy = weight_R(y) if side == "R" else weight_M(y, m)
    if wx != wy:
        raise DomainError(f"cannot compare monomials of weights {wx} and {wy}")
    kx, ky = prec_key(x, m, side), prec_key(y, m, side)
    return (kx > ky) - (kx < ky)


def marker_monomial(m: int, w: int, r: int) -> Monomial:
    """The largest rectangular monomial with second entry at most r + eta(w)."""
    wc = WeightConstants(m, w)
    if not 3 * (m - 1) <= w <= 6 * m - 9:
        raise DomainError(f"markers need 3(m-1) <= w <= 6m-9, got w={w}, m={m}")
    if not 0 <= r <= wc.delta // 2:
        raise DomainError(f"marker index r={r} outside [0, {wc.delta // 2}]")
    return param_rect_u(m, w, wc.tau, wc.delta - 2 * r)


def markers(m: int, w: int) -> list[Monomial]:
    if not 3 * (m - 1) <= w <= 6 * m - 9:
        return []
    return [marker_monomial(m, w, r) for r in range(WeightConstants(m, w).delta // 2 + 1)]


# -- triangular parametrizations -------------------------------------------


def t_D(w: int, r: int, s: int) -> int:
    return (w - 2 * r - 3 * s) // 6


def in_DT(m: int, w: int, r: int, s: int) -> bool:
    return min(w, r, s) >= 0 and 2 * r + 3 * s <= w and t_D(w, r, s) >= WeightConstants(m, w).tau + 1


def _check_DT(m: int, w: int, r: int, s: int) -> None:
    _check_nat(w, r, s)
    if 2 * r + 3 * s > w:
        raise DomainError(f"2r+3s <= w fails for (w,r,s)=({w},{r},{s})")
    if t_D(w, r, s) < WeightConstants(m, w).tau + 1:
        raise DomainError(f"t_D >= tau_w+1 fails for (w,r,s)=({w},{r},{s}), m={m}")


def param_tri_u(m: int, w: int, r: int, s: int) -> Monomial:
    _check_DT(m, w, r, s)
    h = eta(w + r)
    return (3 * s + h, r, (w - 2 * r - 3 * s - h) // 3)


def param_tri_v(m: int, w: int, r: int, s: int) -> Monomial:
    _check_DT(m, w, r, s)
    e = eps(w + s)
    return (
        (6 * (m - 1) - w - 2 * r + 3 * s - e) // 2,
        2 * r + e,
        (w - 2 * r - s + 2 - e) // 2,
    )


def param_tri_u_inverse(u: Monomial) -> tuple[int, int, int]:
    return weight_R(u), u[1], u[0] // 3


def param_tri_v_inverse(v: Monomial, m: int) -> tuple[int, int, int]:
    U = psi_inverse(v, m)
    return weight_M(v, m), U[0] // 2, U[2]


def in_RT(u: Monomial, m: int) -> bool:
    return min(u) >= 0 and t_invariant_R(u) >= WeightConstants(m, weight_R(u)).tau + 1


def phi_tri(u: Monomial, m: int) -> Monomial:
    if not in_RT(u, m):
        raise DomainError(f"{u} is not in the extended triangular region for m={m}")
    return param_tri_v(m, *param_tri_u_inverse(u))


def phi(u: Monomial, m: int) -> Monomial:
    """The glued bijection on R'."""
    if classify_region(u, m, "R") is Region.RECTANGULAR:
        return phi_rect(u, m)
    return phi_tri(u, m)


def multiplier(u: Monomial, m: int) -> Monomial:
    return vsub(phi(u, m), u)


def exceptional_pairs(m: int) -> list[tuple[Monomial, Monomial]]:
    """Monomials of the extended triangular region outside R' (w = 2 mod 3)."""
    out = []
    for w in range(3 * m - 4, 6 * m - 9):
        if w % 3 == 2:
            u = (6 * m - 8 - w, 0, (2 * w - 6 * m + 8) // 3)
            out.append((u, vadd(u, (0, 0, m))))
    return out


def h_residue(a: int, c: int) -> int:
    return (2 + 3 * eps(c) - eta(a) - eps(c + eta(a))) // 2


def aprime_of(u: Monomial, m: int) -> int:
    """First coordinate of the triangular multiplier of u, in closed form."""
    if not in_RT(u, m):
        raise DomainError(f"{u} is not in the extended triangular region for m={m}")
    w = weight_R(u)
    tau = WeightConstants(m, w).tau
    return 3 * (t_invariant_R(u) - tau - 1) + h_residue(u[0], u[2]) + 2 - eta(w)


def phi_slice(m: int, w: int) -> dict[Monomial, Monomial]:
    return {u: phi(u, m) for u in enumerate_basis(m, w, "Rprime")}


# -- special blocks ---------------------------------------------------------


def _check_block(m: int, w: int, n: int) -> WeightConstants:
    wc = WeightConstants(m, w)
    if w % 3 == 0:
        raise DomainError(f"special blocks need w = 1, 2 mod 3, got w={w}")
    if wc.tau < 0 or w > 6 * m - 9:
        raise DomainError(f"special blocks need a nonempty rectangular region, got w={w}, m={m}")
    if not 0 <= n <= wc.n_max:
        raise DomainError(f"block index n={n} outside [0, {wc.n_max}]")
    if 2 * n + 2 > m:
        raise DomainError(f"2n+2 <= m fails for n={n}, m={m}")
    return wc


@dataclass(frozen=True)
class SpecialBlock:
    m: int
    w: int
    n: int
    tau: int
    corner: Monomial
    # labelled by ("u", i, l) / ("v", i, l) for u^i_l, v^i_l
    B: dict[tuple[int, int], Monomial] = field(repr=False)
    C: dict[tuple[int, int], Monomial] = field(repr=False)

    @property
    def B_elems(self) -> list[Monomial]:
        return list(self.B.values())

    @property
    def C_elems(self) -> list[Monomial]:
        return list(self.C.values())


def abstract_block(m: int, n: int, tau: int):
    """Offsets of the abstract blocks B and C (third coordinates may be negative)."""
    B = {}
    for l in range(tau + 2):
        B[(0, l)] = vscale(l, E2)
    for l in range(tau + 1):
        B[(1, l)] = vadd(E1, vscale(l, E2))
    C = {}
    for l in range(1, tau + 2):
        C[(0, l)] = q_lambda(m, n + l)
    for l in range(tau + 2):
        C[(1, l)] = vadd(E1, q_lambda(m, n + l))
    return B, C


def special_block(m: int, w: int, n: int) -> SpecialBlock:
    wc = _check_block(m, w, n)
    corner = (wc.delta_n(n) - 1, 3 * n - 1 + eta(w), wc.c_w)
    Bz, Cz = abstract_block(m, n, wc.tau)
    B = {key: vadd(corner, z) for key, z in Bz.items()}
    C = {key: vadd(corner, z) for key, z in Cz.items()}
    return SpecialBlock(m, w, n, wc.tau, corner, B, C)


def special_blocks(m: int, w: int) -> list[SpecialBlock]:
    wc = WeightConstants(m, w)
    if w % 3 == 0 or wc.tau < 0 or w > 6 * m - 9:
        return []
    return [special_block(m, w, n) for n in range(wc.n_max + 1)]


def phihat_label_map(tau: int, l0: int) -> dict[tuple[int, int], tuple[int, int]]:
    """The bijection phi-hat_{l0} on labels: (i, l) of u^i_l -> (i, l) of v^i_l."""
    if not 0 <= l0 <= tau + 1:
        raise DomainError(f"l0={l0} outside [0, {tau + 1}]")
    out = {}
    for l in range(tau + 2):
        if l < l0:
            out[(0, l)] = (0, l + 1)
        elif l == l0:
            out[(0, l)] = (1, l0)
        else:
            out[(0, l)] = (0, l)
    for l in range(tau + 1):
        out[(1, l)] = (1, l) if l < l0 else (1, l + 1)
    return out


def phihat(m: int, w: int, n: int, l0: int) -> dict[Monomial, Monomial]:
    blk = special_block(m, w, n)
    labels = phihat_label_map(blk.tau, l0)
    return {blk.B[src]: blk.C[dst] for src, dst in labels.items()}


# -- filtrations ----------------------------------------------------------------


def filtration_member(m: int, w: int, n: int, mono: Monomial, side: str = "R") -> bool:
    """Membership in H_n (side R) or K_n (side M)."""
    if w % 3 == 0:
        raise DomainError(f"filtration needs w = 1, 2 mod 3, got w={w}")
    wc = WeightConstants(m, w)
    if not 0 <= n <= wc.n_max:
        raise DomainError(f"n={n} outside [0, {wc.n_max}]")
    d = wc.delta_n(n)
    if side == "R":
        return mono[0] >= d - 5 or mono[1] <= 3 * n + 2
    return mono[0] >= d - 5 or mono[1] <= 6 * n + 5


def filtration_level(m: int, w: int, mono: Monomial, side: str = "R") -> int:
    """Smallest n with mono in H_n (resp. K_n)."""
    for n in range(WeightConstants(m, w).n_max + 1):
        if filtration_member(m, w, n, mono, side):
            return n
    raise DomainError(f"{mono} lies in no filtration step")


# -- low a' tables ---------------------------------------------------------------


@dataclass(frozen=True)
class LowRow:
    label: int
    n: int
    u: Monomial
    q: Monomial
    v: Monomial


def low_aprime_rows(m: int, w: int) -> list[tuple[Monomial, Monomial, Monomial]]:
    """Triangular monomials whose multiplier has a' in {0,1} (w=2) or {0,1,2} (w=1), from phi."""
    if w % 3 == 0:
        raise DomainError(f"low a' rows need w = 1, 2 mod 3, got w={w}")
    allowed = {0, 1} if w % 3 == 2 else {0, 1, 2}
    rows = []
    for u in enumerate_basis(m, w, "Rprime"):
        if classify_region(u, m) is Region.TRIANGULAR:
            v = phi(u, m)
            q = vsub(v, u)
            if q[0] in allowed:
                rows.append((u, q, v))
    return rows


def low_aprime_table(m: int, w: int) -> list[LowRow]:
    """Closed-form rows of the tables for w = 2 (labels 1-4) and w = 1 (labels 5-8) mod 3."""
    wc = WeightConstants(m, w)
    if w % 3 == 0 or wc.tau < 0 or w > 6 * m - 9:
        raise DomainError(f"closed-form tables need w = 1, 2 mod 3 in [3m-2, 6m-10], got w={w}")
    nm, cw = wc.n_max, wc.c_w
    q = lambda n: q_lambda(m, n)  # noqa: E731
    rows = []

    def add(label, n_top, u_of, q_of):
        for n in range(n_top + 1):
            u, mult = u_of(wc.delta_n(n), n), q_of(n)
            rows.append(LowRow(label, n, u, mult, vadd(u, mult)))

    if w % 3 == 2:
        top_mod6 = nm - 1 if w % 6 == 2 else nm
        add(1, top_mod6, lambda d, n: (d - 3, 3 * n + 2, cw), lambda n: q(n + 1))
        add(2, nm - 1, lambda d, n: (d - 5, 3 * n + 3, cw), lambda n: q(n + 1))
        add(3, nm, lambda d, n: (d - 1, 3 * n + 1, cw), lambda n: vadd(q(n), E1))
        add(4, top_mod6, lambda d, n: (d - 2, 3 * n, cw + 1), lambda n: vadd(q(n), E1))
    else:
        top_mod6 = nm - 1 if w % 6 == 1 else nm
        add(5, nm, lambda d, n: (d - 1, 3 * n, cw), lambda n: vadd(q(n), E1))
        add(6, top_mod6, lambda d, n: (d - 3, 3 * n + 1, cw), lambda n: vadd(q(n), E1))
        add(7, top_mod6, lambda d, n: (d - 5, 3 * n + 2, cw), lambda n: vadd(q(n), vscale(2, E1)))
        add(8, nm - 1, lambda d, n: (d - 6, 3 * n + 1, cw + 1), lambda n: vadd(q(n), vscale(2, E1)))
    return rows


# -- presentation order and table rows ---------------------------------------


def presentation_order(m: int, w: int) -> list[Monomial]:
    """R'_w in table layout.

    Rectangular monomials by the order prec, then triangular ones by increasing
    j and decreasing i of their images.  For w = 1, 2 mod 3 with blocks present,
    the same layout is applied to each step H_n minus H_(n-1) of the filtration.
    """
    basis = enumerate_basis(m, w, "Rprime")

    def layout(us):
        rect = sorted((u for u in us if classify_region(u, m) is Region.RECTANGULAR),
                      key=lambda u: prec_key(u, m))
        tri = sorted((u for u in us if classify_region(u, m) is Region.TRIANGULAR),
                     key=lambda u: (phi(u, m)[1], -phi(u, m)[0]))
        return rect + tri

    if not special_blocks(m, w):
        return layout(basis)
    levels: dict[int, list[Monomial]] = {}
    for u in basis:
        levels.setdefault(filtration_level(m, w, u), []).append(u)
    out = []
    for n in sorted(levels):
        out.extend(layout(levels[n]))
    return out


def table_rows(m: int, w: int) -> list[dict]:
    blocks = {u: blk.n for blk in special_blocks(m, w) for u in blk.B_elems}
    marks = {u: r for r, u in enumerate(markers(m, w))}
    rows = []
    for u in presentation_order(m, w):
        v = phi(u, m)
        rows.append({
            "u": list(u),
            "v": list(v),
            "multiplier": list(vsub(v, u)),
            "region": classify_region(u, m).value,
            "block": blocks.get(u),
            "marker": marks.get(u),
        })
    return rows


def image_in_Mprime(u: Monomial, m: int) -> bool:
    return in_Rprime(u, m) and in_Mprime(phi(u, m), m)
