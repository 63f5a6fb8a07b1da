"""Survey which degrees of the wall-crossing difference are nonzero, per catalog entry.

For every characteristic class in the box, records the set of degrees carrying a
nonzero component and checks it against the grading window.
"""

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from swx.lattice import enumerate_characteristic
from swx.manifest import catalog_names, load_catalog
from swx.swinv import wall_delta, window


@dataclass(frozen=True)
class Config:
    box: int = 6
    entries: tuple[str, ...] = ()


def survey(name: str, box: int) -> tuple[Counter, int]:
    x = load_catalog(name).model
    support_shapes: Counter = Counter()
    violations = 0
    for c in enumerate_characteristic(x.form, box):
        d = wall_delta(x, c)
        allowed = {r for r in window(x.b1, d.w_c) if (x.b1 - r) % 2 == 0}
        support = tuple(d.degrees())
        violations += not set(support) <= allowed
        support_shapes[support] += 1
    return support_shapes, violations


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--box", type=int, default=Config.box)
    p.add_argument("entries", nargs="*")
    a = p.parse_args()
    cfg = Config(a.box, tuple(a.entries))
    total_bad = 0
    for name in cfg.entries or catalog_names():
        t0 = time.perf_counter()
        shapes, bad = survey(name, cfg.box)
        total_bad += bad
        dt = time.perf_counter() - t0
        print(f"{name}: {sum(shapes.values())} classes in {dt:.2f}s, {bad} outside the window")
        for support, n in sorted(shapes.items()):
            print(f"    degrees {list(support) or '-'}: {n}")
    return 1 if total_bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
