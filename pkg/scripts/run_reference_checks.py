"""Run the built-in reference checks and print one line per check."""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Optional

from _config import emit, parse_config

from pbwdisc.suite import run_suite


@dataclass
class SuiteConfig:
    """Reference check runner."""

    workers: int = 1
    only: tuple[str, ...] = ()
    out: Optional[str] = None


def main(argv=None):
    cfg = parse_config(SuiteConfig, argv)
    results = run_suite(workers=cfg.workers, only=list(cfg.only) or None)
    for r in results:
        print(f"{r.line()}  [{r.seconds:.2f} s]")
    failed = [r.name for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    emit([r.summary() | {"seconds": r.seconds} for r in results], cfg.out)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
