"""Monomial automorphism groups of preset algebras."""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from typing import Optional

from _config import emit, parse_config

from pbwdisc.automorphisms import enumerate_monomial_automorphisms
from pbwdisc.presets import preset


@dataclass
class SurveyConfig:
    algebras: tuple[str, ...] = ("Wn:2", "Wn:3", "Wn:4", "Wn:5", "kminus1:3", "kminus1:4", "Ex5.9:3")
    bound: int = 8
    out: Optional[str] = None


def main(argv=None):
    cfg = parse_config(SurveyConfig, argv, description=__doc__)
    rows = []
    for name in cfg.algebras:
        spec, _ = preset(name)
        t0 = time.perf_counter()
        group = enumerate_monomial_automorphisms(spec, bound=cfg.bound)
        dt = time.perf_counter() - t0
        print(f"{name:>10}  {group.describe():<36} {group.label}  ({dt:.2f} s)")
        rows.append({"algebra": name, **group.summary(), "seconds": dt})
    emit(rows, cfg.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
