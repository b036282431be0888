"""Symbolic determinants of the reduced matrices, with the phi-term coefficient, for small slices."""

import argparse

from wforms.linalg import gamma_coefficient, symbolic_det
from wforms.monomials import enumerate_basis


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=4)
    ap.add_argument("--cap", type=int, default=7)
    a = ap.parse_args()
    for m in range(2, a.m_max + 1):
        for w in range(6 * m - 8):
            dim = len(enumerate_basis(m, w, "Rprime"))
            if dim > a.cap:
                print(f"m={m} w={w} dim={dim}: skipped")
                continue
            det = symbolic_det(m, w, a.cap)
            names = det.names()
            legend = ", ".join(f"{names[q]}={q}" for q in det.variables)
            print(f"m={m} w={w} dim={dim} gamma={gamma_coefficient(m, w)}: {det}   [{legend}]")


if __name__ == "__main__":
    main()
