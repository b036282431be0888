"""Modular determinant witnesses for every reduced slice, over a range of m and seeds."""

import argparse
import json
import time
from dataclasses import dataclass, field

from wforms.linalg import DEFAULT_PRIME, verify_conjecture2


@dataclass(frozen=True)
class CertifyConfig:
    m_min: int = 2
    m_max: int = 12
    seeds: tuple[int, ...] = (1, 2)
    prime: int = DEFAULT_PRIME


def run(cfg: CertifyConfig) -> list[dict]:
    out = []
    for m in range(cfg.m_min, cfg.m_max + 1):
        for seed in cfg.seeds:
            t0 = time.perf_counter()
            rep = verify_conjecture2(m, cfg.prime, seed)
            out.append({
                "m": m, "seed": seed, "verdict": rep["verdict"], "failures": rep["failures"],
                "max_dim": max(s["dim"] for s in rep["slices"]),
                "seconds": round(time.perf_counter() - t0, 2),
            })
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-min", type=int, default=2)
    ap.add_argument("--m-max", type=int, default=12)
    ap.add_argument("--seeds", type=int, nargs="+", default=[1, 2])
    a = ap.parse_args()
    for rec in run(CertifyConfig(a.m_min, a.m_max, tuple(a.seeds))):
        print(json.dumps(rec))


if __name__ == "__main__":
    main()
