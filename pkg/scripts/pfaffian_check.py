"""Random check: top coefficient of u^n/n! equals Pf(A) for integer antisymmetric A."""

import argparse
import random
from dataclasses import dataclass

from swx.exterior import divided_power, pfaffian, top_pairing, two_form


@dataclass(frozen=True)
class Config:
    trials: int = 200
    ranks: tuple[int, ...] = (2, 4, 6, 8)
    bound: int = 5
    seed: int = 0


def random_antisymmetric(rng: random.Random, n: int, bound: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a[i][j] = rng.randint(-bound, bound)
            a[j][i] = -a[i][j]
    return a


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=Config.trials)
    p.add_argument("--seed", type=int, default=Config.seed)
    a = p.parse_args()
    cfg = Config(trials=a.trials, seed=a.seed)
    rng = random.Random(cfg.seed)
    mismatches = 0
    for n in cfg.ranks:
        bad = 0
        for _ in range(cfg.trials):
            m = random_antisymmetric(rng, n, cfg.bound)
            bad += top_pairing(divided_power(two_form(m), n // 2)) != pfaffian(m)
        print(f"rank {n}: {cfg.trials - bad}/{cfg.trials} agree")
        mismatches += bad
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
