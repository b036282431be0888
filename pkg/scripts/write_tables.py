"""Write phi tables (Markdown and CSV) for one m and a weight range to a directory."""

import argparse
from pathlib import Path

from wforms.bijection import table_rows
from wforms.cli import render_tables


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=7)
    ap.add_argument("--w", default="18..23")
    ap.add_argument("--out", type=Path, default=Path("tables"))
    a = ap.parse_args()
    lo, _, hi = a.w.partition("..")
    weights = range(int(lo), int(hi or lo) + 1)
    a.out.mkdir(parents=True, exist_ok=True)
    for w in weights:
        tab = [(w, table_rows(a.m, w))]
        for fmt in ("md", "csv"):
            (a.out / f"phi_m{a.m}_w{w}.{fmt}").write_text(render_tables(a.m, tab, fmt) + "\n")
    print(f"wrote {2 * len(weights)} files to {a.out}")


if __name__ == "__main__":
    main()
