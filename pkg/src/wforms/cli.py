"""Command line driver: basis dumps, phi tables, oracle sweeps, determinant runs.

Exit codes: 0 pass, 2 usage, 3 resource limit, 4 verification failure.
Output is deterministic for a fixed configuration; timings are only added
with ``--timing``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from wforms.bijection import phi, special_blocks, table_rows
from wforms.linalg import (
    DEFAULT_PRIME,
    DEFAULT_SIZE_CAP,
    det_mod_p,
    low_degree_member_check,
    random_form,
    slice_bases,
    symbolic_det,
    verify_conjecture2,
)
from wforms.monomials import (
    ResourceError,
    basis_record,
    enumerate_basis,
    nonneg,
    t_invariant_M,
    t_invariant_R,
    vsub,
    weight_M,
    weight_R,
)
from wforms.verification import (
    DEFAULT_CAP,
    block_family_check,
    check_noncancellation,
    multiset_list,
    phi_multiset,
)

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_FAIL = 0, 2, 3, 4

CSV_COLUMNS = ["u_a", "u_b", "u_c", "v_i", "v_j", "v_k", "q_a", "q_b", "q_c", "region", "block", "marker"]


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    m: int
    weights: tuple[int, ...]
    prime: int = DEFAULT_PRIME
    seed: int = 0
    format: str = "json"
    cap_dim: int = DEFAULT_SIZE_CAP
    cap_nodes: int = DEFAULT_CAP
    timing: bool = False

    def __post_init__(self):
        if self.m < 2:
            raise UsageError(f"m must be at least 2, got {self.m}")


def parse_weights(spec: str, m: int) -> tuple[int, ...]:
    """``all`` -> 0..6m-9, ``a..b`` -> inclusive range, else a single int."""
    if spec == "all":
        return tuple(range(6 * m - 8))
    try:
        if ".." in spec:
            lo, hi = (int(x) for x in spec.split("..", 1))
        else:
            lo = hi = int(spec)
    except ValueError:
        raise UsageError(f"cannot parse weight selection {spec!r}") from None
    if lo < 0 or hi < lo:
        raise UsageError(f"invalid weight range {spec!r}")
    return tuple(range(lo, hi + 1))


# -- emitters -----------------------------------------------------------------------


def _csv_row(r: dict) -> list:
    def opt(x):
        return "" if x is None else x

    return [*r["u"], *r["v"], *r["multiplier"], r["region"], opt(r["block"]), opt(r["marker"])]


def render_tables(m: int, tables: list[tuple[int, list[dict]]], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{"m": m, "w": w, "rows": rows} for w, rows in tables], indent=1)
    out = io.StringIO()
    for w, rows in tables:
        if fmt == "csv":
            out.write(f"# m={m} w={w}\n")
            wr = csv.writer(out, lineterminator="\n")
            wr.writerow(CSV_COLUMNS)
            for r in rows:
                wr.writerow(_csv_row(r))
        else:
            out.write(f"### m={m}, w={w}\n\n")
            out.write("| u | phi(u) | multiplier | region | block | marker |\n")
            out.write("|---|---|---|---|---|---|\n")
            for r in rows:
                cells = [
                    "({},{},{})".format(*r["u"]),
                    "({},{},{})".format(*r["v"]),
                    "({},{},{})".format(*r["multiplier"]),
                    r["region"],
                    "" if r["block"] is None else f"B{r['block']}",
                    "" if r["marker"] is None else f"u^({r['marker']})",
                ]
                out.write("| " + " | ".join(cells) + " |\n")
        out.write("\n")
    return out.getvalue().rstrip("\n")


# -- commands -----------------------------------------------------------------------


def cmd_basis(cfg: RunConfig) -> tuple[str, int]:
    recs = [basis_record(cfg.m, w, side) for w in cfg.weights for side in ("Rprime", "Mprime")]
    return json.dumps(recs), EXIT_OK


def cmd_table(cfg: RunConfig) -> tuple[str, int]:
    tables = [(w, table_rows(cfg.m, w)) for w in cfg.weights]
    return render_tables(cfg.m, tables, cfg.format), EXIT_OK


def _phi_slice_ok(m: int, w: int) -> bool:
    dom = enumerate_basis(m, w, "Rprime")
    img = [phi(u, m) for u in dom]
    return (
        sorted(img) == enumerate_basis(m, w, "Mprime")
        and all(weight_M(v, m) == weight_R(u) for u, v in zip(dom, img))
        and all(t_invariant_M(v, m) == t_invariant_R(u) for u, v in zip(dom, img))
        and all(nonneg(vsub(v, u)) for u, v in zip(dom, img))
    )


def verify_slice(m: int, w: int, mode: str, cap: int) -> dict:
    rec: dict = {"m": m, "w": w, "mode": mode}
    if mode == "phi":
        rec["pass"] = _phi_slice_ok(m, w)
    elif mode in ("uniqueness", "noncancel"):
        sc = check_noncancellation(m, w, cap)
        rec.update(multiset=multiset_list(phi_multiset(m, w)), count=sc.count,
                   signed=sc.signed, parity_uniform=sc.parity_uniform)
        rec["pass"] = sc.count == 1 if mode == "uniqueness" else sc.noncancelling
    elif mode == "blocks":
        blocks = special_blocks(m, w)
        rec["blocks"] = len(blocks)
        rec["pass"] = all(block_family_check(m, w, b.n, cap) for b in blocks)
    else:
        raise UsageError(f"unknown mode {mode!r}")
    return rec


def cmd_verify(cfg: RunConfig, mode: str) -> tuple[str, int]:
    slices = []
    for w in cfg.weights:
        t0 = time.perf_counter()
        try:
            rec = verify_slice(cfg.m, w, mode, cfg.cap_nodes)
        except ResourceError as exc:
            rec = {"m": cfg.m, "w": w, "mode": mode, "pass": False, "resource_error": str(exc)}
        if cfg.timing:
            rec["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
        slices.append(rec)
    failed = [s for s in slices if not s["pass"] and "resource_error" not in s]
    starved = [s for s in slices if "resource_error" in s]
    code = EXIT_FAIL if failed else EXIT_RESOURCE if starved else EXIT_OK
    return json.dumps({"m": cfg.m, "mode": mode, "slices": slices,
                       "verdict": "pass" if code == EXIT_OK else "fail"}, sort_keys=True), code


def cmd_conjecture(cfg: RunConfig, low_degree: bool = False) -> tuple[str, int]:
    rep = verify_conjecture2(cfg.m, cfg.prime, cfg.seed)
    ok = rep["verdict"] == "pass"
    if low_degree:
        g = random_form(cfg.m, cfg.prime, cfg.seed)
        try:
            rep["low_degree"] = low_degree_member_check(cfg.m, g, cfg.prime)
        except ResourceError as exc:
            rep["low_degree_error"] = str(exc)
            return json.dumps(rep, sort_keys=True), EXIT_RESOURCE
        ok = ok and rep["low_degree"]
    return json.dumps(rep, sort_keys=True), EXIT_OK if ok else EXIT_FAIL


def cmd_det(cfg: RunConfig) -> tuple[str, int]:
    out = []
    for w in cfg.weights:
        dim = len(slice_bases(cfg.m, w, True)[1])
        rec = {"m": cfg.m, "w": w, "dim": dim}
        if dim <= cfg.cap_dim:
            rec["det"] = str(symbolic_det(cfg.m, w, cfg.cap_dim))
        else:
            rec.update(prime=cfg.prime, seed=cfg.seed,
                       det_mod_p=det_mod_p(cfg.m, w, cfg.prime, cfg.seed))
        out.append(rec)
    return json.dumps(out, sort_keys=True), EXIT_OK


# -- entry point ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, required=True)
    common.add_argument("--w", default="all", help="int, a..b, or all")
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv", "md"), default="json")
    common.add_argument("--cap-dim", type=int, default=DEFAULT_SIZE_CAP)
    common.add_argument("--cap-nodes", type=int, default=DEFAULT_CAP)
    common.add_argument("--timing", action="store_true", help="add elapsed_ms to reports")

    p = argparse.ArgumentParser(prog="wforms", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("basis", parents=[common], help="dump R'_w and M'_w")
    sub.add_parser("table", parents=[common], help="phi tables with block and marker columns")
    v = sub.add_parser("verify", parents=[common], help="run an oracle per weight slice")
    v.add_argument("--mode", choices=("phi", "uniqueness", "noncancel", "blocks"), default="phi")
    c = sub.add_parser("conjecture", parents=[common], help="modular determinant certificate")
    c.add_argument("--low-degree", action="store_true", help="also run the ideal membership oracle")
    sub.add_parser("det", parents=[common], help="symbolic (or modular) determinants")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig(
            m=args.m,
            weights=parse_weights(args.w, max(args.m, 2)),
            prime=args.prime,
            seed=args.seed,
            format=args.format,
            cap_dim=args.cap_dim,
            cap_nodes=args.cap_nodes,
            timing=args.timing,
        )
    except UsageError as exc:
        print(f"wforms: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "basis":
        text, code = cmd_basis(cfg)
    elif args.command == "table":
        text, code = cmd_table(cfg)
    elif args.command == "verify":
        text, code = cmd_verify(cfg, args.mode)
    elif args.command == "conjecture":
        text, code = cmd_conjecture(cfg, args.low_degree)
    else:
        text, code = cmd_det(cfg)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
