"""Check Omega^2 = unit * D and d = unit * D^(2^(n-1)) for even n.

The direct route expands the 2^n x 2^n determinant; for n=6 that polynomial
is far too large.  Use ``--route compound`` there.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from typing import Optional

from _config import emit, parse_config

from pbwdisc.discriminant import verify_conjecture_412


@dataclass
class ConjectureConfig:
    """Square and discriminant identities for the all-ones (-1)-Weyl algebra."""

    sizes: tuple[int, ...] = (2, 4)
    route: str = "direct"  # "compound" certifies n=6 in about a second
    workers: int = 1
    out: Optional[str] = None


def main(argv=None):
    cfg = parse_config(ConjectureConfig, argv)
    rows = []
    for n in cfg.sizes:
        t0 = time.perf_counter()
        report = verify_conjecture_412(n, workers=cfg.workers, route=cfg.route)
        row = report.summary() | {"n": n, "seconds": round(time.perf_counter() - t0, 3)}
        rows.append(row)
        print(
            f"n={n}: omega^2 matches D: {row['omegaSquareMatchesD']} (unit {row['unit1']}), "
            f"d matches D power: {row['discMatchesDPower']} (unit {row['unit2']}), {row['seconds']} s"
        )
    emit(rows, cfg.out)
    ok = all(r["omegaSquareMatchesD"] and r["discMatchesDPower"] for r in rows)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
