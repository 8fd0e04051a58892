"""Hidden-variable frequencies against Born probabilities over a sweep of relations."""

import argparse
import math
from dataclasses import dataclass

import numpy as np

from csrel import hv


@dataclass
class BornConfig:
    group: str = "su2"
    points: int = 9
    samples: int = 100_000
    seed: int = 2
    workers: int = 1


def sweep(cfg: BornConfig):
    top = math.pi if cfg.group == "su2" else 2.5
    for param in np.linspace(0.0, top, cfg.points):
        est = hv.estimate(cfg.group, float(param), cfg.samples, cfg.seed, cfg.workers)
        p = hv.analytic_probability(cfg.group, float(param))
        sigma = math.sqrt(p * (1 - p) / cfg.samples)
        z = (est.p_hat - p) / sigma if sigma > 0 else 0.0
        yield float(param), est.p_hat, p, z


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--group", choices=hv.GROUPS, default="su2")
    ap.add_argument("--points", type=int, default=9)
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=2)
    ap.add_argument("--workers", type=int, default=1)
    cfg = BornConfig(**vars(ap.parse_args()))
    label = "theta" if cfg.group == "su2" else "|lam|"
    print(f"{label:>8} {'p_hat':>9} {'born':>9} {'z':>7}")
    for param, p_hat, p, z in sweep(cfg):
        print(f"{param:>8.4f} {p_hat:>9.5f} {p:>9.5f} {z:>7.2f}")


if __name__ == "__main__":
    main()
