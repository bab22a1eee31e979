"""Modular data of dimension q^3 for small primes q.

For q = 2 the non-pointed branch is semion x Ising; for odd q only pointed
data survive.  Run with ``python demos/dimension_q3.py [q ...]`` (default 2 3).
"""
from __future__ import annotations

import sys

from fusionkit.classify import classify_modular_q3


def main(argv=None):
    qs = [int(a) for a in (argv if argv is not None else sys.argv[1:])] or [2, 3]
    for q in qs:
        report = classify_modular_q3(q)
        print(report.to_text())
        print()


if __name__ == "__main__":
    main()
