"""Which integers 1..limit does x^T M x represent over Z^n?

For the Wilson matrix every positive integer should appear, since W = Z^T Z
with Z unimodular turns the form into a sum of four squares.

    python scripts/universality.py --limit 200
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from svfactor.lattice import enumerate_form
from svfactor.matrixio import read_matrix

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class UniversalityConfig:
    matrix: str = str(ROOT / "fixtures" / "wilson.txt")
    limit: int = 100
    show: int = 10


def run(cfg: UniversalityConfig) -> list[int]:
    m = read_matrix(cfg.matrix)
    t0 = time.perf_counter()
    missing = []
    witnesses = {}
    for k in range(1, cfg.limit + 1):
        x = next(enumerate_form(m, k), None)
        if x is None:
            missing.append(k)
        else:
            witnesses[k] = x
    secs = time.perf_counter() - t0
    for k in list(witnesses)[: cfg.show]:
        print(f"{k:4d} = q{witnesses[k]}")
    print(f"represented {len(witnesses)}/{cfg.limit} in {secs:.2f}s")
    if missing:
        print("not represented:", " ".join(map(str, missing)))
    return missing


def main() -> None:
    d = UniversalityConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--matrix", default=d.matrix)
    ap.add_argument("--limit", type=int, default=d.limit)
    ap.add_argument("--show", type=int, default=d.show)
    a = ap.parse_args()
    run(UniversalityConfig(a.matrix, a.limit, a.show))


if __name__ == "__main__":
    main()
