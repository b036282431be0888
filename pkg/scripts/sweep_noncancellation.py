"""Signed counts of bijections sharing phi's multipliers, per weight slice.

Prints CSV: m, w, w mod 3, tau, n_max, count, signed, parity_uniform, predicted, in_window.
"""

import argparse
import csv
import sys
from dataclasses import dataclass

from wforms.monomials import WeightConstants
from wforms.verification import DEFAULT_CAP, check_noncancellation, predicted_count


@dataclass(frozen=True)
class SweepConfig:
    m_min: int = 2
    m_max: int = 5
    cap: int = DEFAULT_CAP


def sweep(cfg: SweepConfig):
    for m in range(cfg.m_min, cfg.m_max + 1):
        for w in range(6 * m - 8):
            wc = WeightConstants(m, w)
            sc = check_noncancellation(m, w, cfg.cap)
            blocked = w % 3 != 0 and wc.tau >= 0
            yield {
                "m": m, "w": w, "w_mod_3": w % 3, "tau": wc.tau, "n_max": wc.n_max,
                "count": sc.count, "signed": sc.signed, "parity_uniform": sc.parity_uniform,
                "predicted": predicted_count(m, w) if blocked else 1,
                "in_window": blocked and 3 * m - 1 <= w <= 6 * m - 10,
            }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-min", type=int, default=2)
    ap.add_argument("--m-max", type=int, default=5)
    ap.add_argument("--cap", type=int, default=DEFAULT_CAP)
    a = ap.parse_args()
    rows = list(sweep(SweepConfig(a.m_min, a.m_max, a.cap)))
    out = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]), lineterminator="\n")
    out.writeheader()
    out.writerows(rows)
    off = [r for r in rows if r["count"] != r["predicted"]]
    print(f"# slices={len(rows)} count!=predicted: {len(off)}", file=sys.stderr)


if __name__ == "__main__":
    main()
