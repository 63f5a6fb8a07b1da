"""Resolved invariants of the P^2 family over a box of characteristic classes.

    python3 scripts/p2_table.py --box 9
    python3 scripts/p2_table.py --entry P2_2P2bar --box 3
"""

import argparse
from dataclasses import dataclass

from swx.lattice import enumerate_characteristic
from swx.manifest import load_catalog
from swx.report import fmt_q
from swx.swinv import p2_discrepancies, psc_catalog_check


@dataclass(frozen=True)
class Config:
    entry: str = "P2"
    box: int = 9
    o1: int = 1


def run(cfg: Config) -> int:
    m = load_catalog(cfg.entry)
    x = m.model
    print(f"{x.name}: b2 = {x.b2}, signature = {x.form.signature}")
    print(f"{'c':>16}  {'w_c':>4}  {'side':>4}  {'plus':>5}  {'minus':>5}  check")
    failures, scalars = 0, {}
    for c in enumerate_characteristic(x.form, cfg.box):
        side = m.vanishing_side(c)
        r = psc_catalog_check(x, c, side, cfg.o1)
        failures += not r.ok
        if x.b2 == 1:
            scalars[c[0]] = (r.plus, r.minus)
        print(f"{str(c):>16}  {r.w_c:>4}  {side:>4}  {fmt_q(r.plus):>5}  {fmt_q(r.minus):>5}  {'ok' if r.ok else 'FAIL'}")
    if x.form.gram == ((1,),) and cfg.o1 == 1:
        for w in p2_discrepancies(scalars):
            print("note:", w)
    print(f"{failures} failing rows")
    return 1 if failures else 0


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--entry", default=Config.entry)
    p.add_argument("--box", type=int, default=Config.box)
    p.add_argument("--o1", type=int, choices=(1, -1), default=Config.o1)
    a = p.parse_args()
    return run(Config(a.entry, a.box, a.o1))


if __name__ == "__main__":
    raise SystemExit(main())
