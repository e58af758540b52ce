"""Check transducer operations against set-level oracles on random machines."""

import argparse
import time
from dataclasses import dataclass

from sorani_fst.testing import check_algebra_case


@dataclass
class AlgebraConfig:
    cases: int = 250
    first_seed: int = 0
    max_side_len: int = 6


def main(cfg: AlgebraConfig) -> int:
    start = time.perf_counter()
    failing = {}
    for seed in range(cfg.first_seed, cfg.first_seed + cfg.cases):
        problems = check_algebra_case(seed, cfg.max_side_len)
        if problems:
            failing[seed] = problems
            print(f"seed {seed}: {', '.join(problems)}")
    print(f"{cfg.cases} cases, {len(failing)} failing, {time.perf_counter() - start:.2f}s")
    return 1 if failing else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--cases", type=int, default=AlgebraConfig.cases)
    p.add_argument("--first-seed", type=int, default=AlgebraConfig.first_seed)
    p.add_argument("--max-side-len", type=int, default=AlgebraConfig.max_side_len)
    a = p.parse_args()
    raise SystemExit(main(AlgebraConfig(a.cases, a.first_seed, a.max_side_len)))
