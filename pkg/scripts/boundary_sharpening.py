"""Two-photon correlations as the squeezing approaches the unit-circle boundary.

Prints the normalized EPR probability along r -> 1, the Richardson limit,
and the boundary profile it should reach; then the overlap of two squeezed
vacua with a fixed phase offset, which falls as r grows.
"""

import argparse
import cmath
from dataclasses import dataclass

from csrel import squeeze
from csrel.squeeze import SqueezeParam


@dataclass
class BoundaryConfig:
    lam_a: complex = 0.6 + 0.2j
    lam_b: complex = -0.3 + 0.5j
    phi: float = 0.8
    phase_offset: float = 0.1


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--lam-a", type=complex, default=0.6 + 0.2j)
    ap.add_argument("--lam-b", type=complex, default=-0.3 + 0.5j)
    ap.add_argument("--phi", type=float, default=0.8)
    ap.add_argument("--phase-offset", type=float, default=0.1)
    cfg = BoundaryConfig(**vars(ap.parse_args()))

    print(f"{'r':>7} {'|amp|^2/beta^2':>15}")
    for r in (0.5, 0.9, 0.99, 0.999, 0.9999):
        p = SqueezeParam.polar(r, cfg.phi)
        amp = squeeze.epr_amplitude(cfg.lam_a, cfg.lam_b, p)
        print(f"{r:>7} {abs(amp) ** 2 / p.beta ** 2:>15.10f}")
    lim = squeeze.richardson_limit(cfg.lam_a, cfg.lam_b, cfg.phi)
    exact = squeeze.boundary_probability(cfg.lam_a, cfg.lam_b, cfg.phi)
    print(f"Richardson limit {lim:.10f}  boundary profile {exact:.10f}")

    print(f"\n{'r':>7} {'|<zeta1|zeta2>|':>16}")
    for r in (0.5, 0.9, 0.99, 0.999):
        a = SqueezeParam.polar(r, cfg.phi)
        b = SqueezeParam(a.zeta * cmath.exp(1j * cfg.phase_offset))
        print(f"{r:>7} {abs(squeeze.squeeze_overlap(a, b)):>16.10f}")


if __name__ == "__main__":
    main()
