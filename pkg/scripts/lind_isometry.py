"""Distances between column ends of the Lind graph against the sample metric.

The sample is a set of random points in the unit square with Euclidean
distances; the error column should be zero up to float rounding at every
depth once both columns exist.
"""

import argparse
import math
import random
from dataclasses import dataclass

from ltop.completion import lind_distances, lind_graph


@dataclass
class LindConfig:
    points: int = 6
    depths: tuple[int, ...] = (6, 9, 12)
    seed: int = 0


def run(cfg: LindConfig):
    rng = random.Random(cfg.seed)
    xy = {f"u{i}": (rng.random(), rng.random()) for i in range(cfg.points)}
    names = list(xy)
    M = [[math.dist(xy[a], xy[b]) for b in names] for a in names]
    lg = lind_graph(names, M)
    print("depth,pairs,max_error")
    for n in cfg.depths:
        dd = lind_distances(lg, n)
        err = max((abs(float(d) - math.dist(xy[u], xy[w])) for (u, w), d in dd.items()), default=0.0)
        print(f"{n},{len(dd)},{err:.3g}")


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--points", type=int, default=6)
    p.add_argument("--depths", default="6,9,12")
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args(argv)
    run(LindConfig(a.points, tuple(int(x) for x in a.depths.split(",")), a.seed))


if __name__ == "__main__":
    main()
