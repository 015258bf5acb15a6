"""Full factorisation run for a symmetric matrix (the Wilson matrix by default).

Prints the weight-balance equation, the solution count, how many solutions
lift to factors, the class count and one representative per class.

    python scripts/wilson_case_study.py
    python scripts/wilson_case_study.py --matrix fixtures/identity4.txt --workers 4
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from svfactor.core import det, format_scalar
from svfactor.factorization import full_factor_search, gram_backtrack_oracle
from svfactor.matrixio import matrix_to_dict, read_matrix
from svfactor.obstruction import solve_gram, weight_balance_gram
from svfactor.svdecomp import decompose

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class CaseStudyConfig:
    matrix: str = str(ROOT / "fixtures" / "wilson.txt")
    workers: int = 1
    integer_oracle: bool = True
    json_out: str | None = None


def run(cfg: CaseStudyConfig) -> dict:
    m = read_matrix(cfg.matrix)
    parts = decompose(m)
    form = weight_balance_gram(m)
    print(f"matrix: {cfg.matrix}")
    print(f"det = {format_scalar(det(m))}, weight = {format_scalar(parts.weight)}")
    print(f"equation: {form}")

    t0 = time.perf_counter()
    sols = solve_gram(form, workers=cfg.workers)
    t_solve = time.perf_counter() - t0
    print(f"obstruction solutions (w >= 0): {len(sols)} in {t_solve:.2f}s")

    classes, stats = full_factor_search(m, workers=cfg.workers, solutions=sols)
    print(f"{stats.summary()} distinct_factors={stats.distinct_factors} in {stats.seconds:.1f}s")
    for c in classes:
        integral = all(f.is_integer for f in c.members)
        print(f"\n# class of {len(c.members)} factors, integer={integral}")
        print(c.canonical)

    result = {
        "config": asdict(cfg),
        "solutions": stats.solutions,
        "fertile": stats.fertile,
        "classes": stats.classes,
        "distinct_factors": stats.distinct_factors,
        "solve_seconds": round(t_solve, 3),
        "pipeline_seconds": round(stats.seconds, 3),
        "representatives": [matrix_to_dict(c.canonical) for c in classes],
    }
    if cfg.integer_oracle:
        reps = gram_backtrack_oracle(m, 1)
        print(f"\ninteger factor classes (column backtracking): {len(reps)}")
        result["integer_classes"] = len(reps)
    if cfg.json_out:
        Path(cfg.json_out).write_text(json.dumps(result, indent=2) + "\n")
    return result


def main() -> None:
    d = CaseStudyConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--matrix", default=d.matrix)
    ap.add_argument("--workers", type=int, default=d.workers)
    ap.add_argument("--no-integer-oracle", action="store_true")
    ap.add_argument("--json-out")
    a = ap.parse_args()
    run(CaseStudyConfig(a.matrix, a.workers, not a.no_integer_oracle, a.json_out))


if __name__ == "__main__":
    main()
