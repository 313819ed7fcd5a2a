"""Frontier cluster counts of the hyperbolic strip under Floyd lengths.

For each decay the script prints CSV rows (decay, level, eps, clusters,
frontier diameter).  With pow2 the counts keep growing as eps shrinks; with
pow4 the whole frontier collapses into one cluster.
"""

import argparse
import csv
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from ltop.completion import boundary_profile, floyd_lengths
from ltop.generators import HyperbolicStrip


@dataclass
class DichotomyConfig:
    decays: tuple[str, ...] = ("pow2", "pow4")
    levels: tuple[int, ...] = (4, 6, 8)
    depth: int = 14
    eps: list = field(default_factory=lambda: [Fraction(1, 2**k) for k in range(1, 9)])
    linkage: str = "complete"


def run(cfg: DichotomyConfig, out=sys.stdout):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["decay", "level", "eps", "clusters", "frontier_diameter"])
    for decay in cfg.decays:
        fg = floyd_lengths(HyperbolicStrip(), decay, "h0.0")
        bp = boundary_profile(fg, cfg.levels, cfg.depth, cfg.eps, method=cfg.linkage)
        for lp in bp.levels:
            for c in lp.clusterings:
                w.writerow([decay, lp.level, float(c.eps), c.count, f"{lp.diameter:.6g}"])


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--levels", default="4,6,8")
    p.add_argument("--depth", type=int, default=14)
    p.add_argument("--linkage", choices=["complete", "single"], default="complete")
    args = p.parse_args(argv)
    run(DichotomyConfig(levels=tuple(int(x) for x in args.levels.split(",")), depth=args.depth, linkage=args.linkage))


if __name__ == "__main__":
    main()
