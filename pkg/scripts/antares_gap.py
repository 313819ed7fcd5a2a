"""Curve-length estimates of the wild circle against the sum of its edge lengths.

Writes one CSV row per depth: depth, estimate, edge-length sum inside G_n,
and the gap estimate - s.
"""

import argparse
import csv
import sys
from dataclasses import dataclass
from fractions import Fraction

from ltop.generators import Antares
from ltop.metric import curve_length


@dataclass
class GapConfig:
    c: Fraction = Fraction(1)
    s: Fraction = Fraction(3, 2)
    depths: tuple[int, ...] = (2, 4, 6, 8, 10, 11)
    refinement: int = 0


def run(cfg: GapConfig, out=sys.stdout) -> list[dict]:
    a = Antares(c=cfg.c, s=cfg.s)
    rows = []
    for n in cfg.depths:
        t = a.truncate(n)
        est = curve_length(t.graph, a.wild_circle_walk(n), refinement=cfg.refinement, cyclic=True)
        thick = sum(t.graph.length(e) for e, k in t.edge_kind.items() if k == "thick")
        rows.append({"depth": n, "estimate": float(est), "thick_in_Gn": float(thick), "gap": float(est - cfg.s)})
    w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--c", type=Fraction, default=GapConfig.c)
    p.add_argument("--s", type=Fraction, default=GapConfig.s)
    p.add_argument("--depths", default="2,4,6,8,10,11")
    p.add_argument("--refinement", type=int, default=0)
    args = p.parse_args(argv)
    cfg = GapConfig(args.c, args.s, tuple(int(x) for x in args.depths.split(",")), args.refinement)
    run(cfg)


if __name__ == "__main__":
    main()
