"""Discriminants of random (-1)-quantum Weyl algebras V_n(a).

For each sample, draw integer a_ij uniformly from [lo, hi], compute the
discriminant over k[x_1^2, ..., x_n^2] and report its principal term and the
dominance verdict.
"""

from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass
from typing import Optional

from _config import emit, parse_config

from pbwdisc.center import validate_center
from pbwdisc.discriminant import discriminant
from pbwdisc.presets import v_n
from pbwdisc.suite import random_a_table


@dataclass
class TableConfig:
    """Random V_n discriminant survey."""

    n: int = 3
    samples: int = 5
    seed: int = 7
    lo: int = -3
    hi: int = 3
    workers: int = 1
    out: Optional[str] = None


def main(argv=None):
    cfg = parse_config(TableConfig, argv)
    rng = random.Random(cfg.seed)
    rows = []
    for k in range(cfg.samples):
        a = random_a_table(cfg.n, rng, cfg.lo, cfg.hi)
        spec = v_n(cfg.n, a)
        t0 = time.perf_counter()
        d = discriminant(spec, validate_center(spec, (2,) * cfg.n), cfg.workers)
        dt = time.perf_counter() - t0
        a_text = " ".join(f"a{i + 1}{j + 1}={v}" for (i, j), v in sorted(a.items()))
        print(f"#{k}: {a_text}")
        print(f"    principal {d.principal}; dominating {d.dominating_sufficient}; "
              f"{len(d.raw_det.terms)} terms; {dt:.2f} s")
        rows.append({"a": {f"{i + 1},{j + 1}": v for (i, j), v in a.items()},
                     "principal": str(d.principal), "dominating": d.dominating_sufficient,
                     "discriminant": str(d.raw_det), "seconds": dt})
    emit(rows, cfg.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
