"""Minimum singular value and interior coefficient spread of the von Neumann lattice Gram matrix."""

import argparse
from dataclasses import dataclass

from csrel import wh


@dataclass
class LatticeConfig:
    max_half_width: int = 4
    core_radius: int = 1
    fock_check: bool = True


def run(cfg: LatticeConfig) -> list[wh.LatticeProbe]:
    probes = []
    for m in range(cfg.max_half_width + 1):
        w = wh.LatticeWindow(m)
        dim = wh.required_fock_dim(w.max_modulus()) if cfg.fock_check else None
        probes.append(wh.lattice_gram(w, dim, core_radius=cfg.core_radius))
    return probes


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-half-width", type=int, default=4)
    ap.add_argument("--core-radius", type=int, default=1)
    ap.add_argument("--no-fock-check", action="store_true")
    a = ap.parse_args()
    cfg = LatticeConfig(a.max_half_width, a.core_radius, not a.no_fock_check)
    print(f"{'M':>2} {'points':>6} {'min_sv':>10} {'core_spread':>12} {'fock_N':>6} {'oracle_dev':>10}")
    for m, p in enumerate(run(cfg)):
        dev = "-" if p.oracle_deviation is None else f"{p.oracle_deviation:.1e}"
        spread = "-" if p.core_spread is None else f"{p.core_spread:.4f}"
        print(f"{m:>2} {(2 * m + 1) ** 2:>6} {p.min_singular:>10.6f} {spread:>12} "
              f"{p.fock_dim or '-':>6} {dev:>10}")


if __name__ == "__main__":
    main()
