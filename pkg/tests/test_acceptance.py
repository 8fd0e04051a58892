"""Acceptance criteria, one test each, at the stated tolerances and time budgets.

Every test records a ``PASS``/``FAIL`` line; the lines are printed at the end
of the run by the terminal-summary hook in ``conftest.py``.
"""

import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy import stats

from csrel import bell, checks, fock, hv, squeeze, su2, wh
from csrel.core import pairwise_distance

RESULTS: dict[int, str] = {}


def record(n, ok, detail, elapsed=None):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {n:2d}: {detail}"
    if elapsed is not None:
        line += f" ({elapsed:.2f} s)"
    RESULTS[n] = line
    print(line)
    return ok


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_1_glauber_amplitude():
    with Timer() as t:
        err, n = checks.glauber_vacuum_suite(dim=64, n=50)
    ok = err < 1e-9 and n == 50 and t.elapsed < 5
    assert record(1, ok, f"vacuum amplitude max err {err:.2e} < 1e-9 on {n} points, N=64",
                  t.elapsed)


def test_2_composition_cocycle():
    with Timer() as t:
        err, n = checks.composition_suite(dim=64, n=20)
    ok = err < 1e-8 and t.elapsed < 10
    assert record(2, ok, f"operator cocycle max err {err:.2e} < 1e-8 on {n} pairs", t.elapsed)


def test_3_squeezed_vacuum_suite():
    with Timer() as t:
        state_err, _ = checks.squeezed_vacuum_suite(dim=40)
        grid_err, grid_n = checks.epr_grid_suite(dim=40)
        ann = squeeze.annihilator_residual(squeeze.SqueezeParam(0.5), 40)
        ovl_err, _ = checks.squeeze_overlap_suite(dim=40)
    ok = (state_err < 1e-8 and grid_err < 1e-7 and grid_n == 125 and ann < 1e-8
          and ovl_err < 1e-8 and t.elapsed < 60)
    detail = (f"state {state_err:.1e}<1e-8, grid[{grid_n}] {grid_err:.1e}<1e-7, "
              f"annihilator {ann:.1e}<1e-8, overlap {ovl_err:.1e}<1e-8")
    assert record(3, ok, detail, t.elapsed)


def test_4_boundary_limit():
    rng = np.random.default_rng(404)
    with Timer() as t:
        errs = []
        for _ in range(10):
            la, lb = (complex(*rng.uniform(-1, 1, 2)) for _ in range(2))
            phi = rng.uniform(0, 2 * math.pi)
            lim = squeeze.richardson_limit(la, lb, phi, radii=(0.9, 0.99, 0.999))
            errs.append(abs(lim - squeeze.boundary_probability(la, lb, phi)))
    err = max(errs)
    ok = err < 1e-4 and t.elapsed < 10
    assert record(4, ok, f"Richardson limit vs profile max err {err:.2e} < 1e-4 on 10 points",
                  t.elapsed)


HV_SEED = 2
HV_CASES = [("su2", math.pi / 3, 10**5), ("su2", math.pi / 2, 10**5),
            ("su2", 2 * math.pi / 3, 10**5), ("wh", 0.5, 10**5), ("wh", 1.0, 10**5),
            ("wh", 2.0, 10**6)]


def test_5_born_rule():
    with Timer() as t:
        zs = []
        for group, param, n in HV_CASES:
            est = hv.estimate(group, param, n, HV_SEED)
            p = hv.analytic_probability(group, param)
            zs.append((est.p_hat - p) / math.sqrt(p * (1 - p) / n))
    ok = all(abs(z) < 3 for z in zs) and t.elapsed < 30
    detail = "z-scores " + ", ".join(f"{z:+.2f}" for z in zs) + f" all |z| < 3 (seed {HV_SEED})"
    assert record(5, ok, detail, t.elapsed)


def test_6_size_distribution():
    with Timer() as t:
        parts, ok = [], True
        for group in ("su2", "wh"):
            sizes = hv.relation_sizes(group, 10**5, seed=HV_SEED)
            res = stats.kstest(sizes, lambda r: np.clip(r, 0.0, 1.0) ** 2)
            ok &= res.pvalue > 0.01
            parts.append(f"{group} D={res.statistic:.4f} p={res.pvalue:.3f}")
    ok = ok and t.elapsed < 10
    assert record(6, ok, "KS vs r^2 at 1%: " + ", ".join(parts), t.elapsed)


def test_7_bell_suite():
    with Timer() as t:
        q = bell.gauss_legendre_sphere(16)
        defect, c = bell.identity_defect(q)
        state = bell.build_bell(q)
        fid = bell.singlet_fidelity(state)
        grid = [su2.SphereLabel(th, ph) for th, ph in
                zip(np.linspace(0, math.pi, 10), np.linspace(0, 5.5, 10))]
        corr_err = max(abs(bell.bell_correlation(g1, g2, state) - c * su2.su2_amplitude(g1, g2))
                       for g1 in grid for g2 in grid)
        norm_err = abs(bell.bell_norm(q) - bell.measure_norm(q))
    ok = (defect < 1e-12 and fid > 1 - 1e-10 and corr_err < 1e-9 and norm_err < 1e-10
          and t.elapsed < 5)
    detail = (f"defect {defect:.1e}<1e-12 (16x32), 1-fidelity {1 - fid:.1e}<1e-10, "
              f"correlation {corr_err:.1e}<1e-9, norm {norm_err:.1e}<1e-10")
    assert record(7, ok, detail, t.elapsed)


def test_8_metric_axioms():
    rng = np.random.default_rng(808)
    with Timer() as t:
        worst_sym, worst_tri = 0.0, -math.inf
        for group in (su2.SU2(), wh.WH(1), wh.WH(2)):
            for _ in range(1000):
                x, y, z = group.sample(rng), group.sample(rng), group.sample(rng)
                dxy, dyx = pairwise_distance(group, x, y), pairwise_distance(group, y, x)
                worst_sym = max(worst_sym, abs(dxy - dyx))
                dxz, dyz = pairwise_distance(group, x, z), pairwise_distance(group, y, z)
                worst_tri = max(worst_tri, dxz - dxy - dyz)
    ok = worst_sym == 0.0 and worst_tri <= 1e-12 and t.elapsed < 5
    detail = (f"symmetry max |d(x,y)-d(y,x)| = {worst_sym:g}, worst triangle excess "
              f"{worst_tri:.2e} <= 1e-12, 1000 triples each for SU(2), WH(1), WH(2)")
    assert record(8, ok, detail, t.elapsed)


def test_9_lattice_probe():
    with Timer() as t:
        mins, spreads, dims, devs = [], [], [], []
        for m in (1, 2, 3):
            w = wh.LatticeWindow(m)
            dim = max(100, wh.required_fock_dim(w.max_modulus()))
            probe = wh.lattice_gram(w, dim)
            mins.append(probe.min_singular)
            spreads.append(probe.core_spread)
            dims.append(dim)
            devs.append(probe.oracle_deviation)
    ok = mins[0] > mins[1] > mins[2] and max(devs) < 1e-10 and t.elapsed < 60
    detail = ("min singular " + " > ".join(f"{v:.4f}" for v in mins)
              + "; interior spread " + ", ".join(f"{v:.3f}" for v in spreads)
              + f"; Fock N={dims}, oracle dev {max(devs):.1e}")
    assert record(9, ok, detail, t.elapsed)


CLI_COMMANDS = [
    ["amp", "su2", "--theta", "1.1", "--phi", "0.4"],
    ["amp", "wh", "--lam", "0.5,-0.2", "--lam", "1,0"],
    ["hv", "su2", "--theta", "1.2", "--samples", "200000"],
    ["hv", "wh", "--lam", "0.8,0.3", "--samples", "200000"],
    ["squeeze-scan", "--zeta", "0.4,0.2", "--grid=-1:1:4", "--grid-imag=-0.5:0.5:2"],
    ["bell", "--grid-order", "16"],
    ["lattice", "--window", "2"],
    ["oracle-check"],
]


def _cli(argv, threads):
    env = {k: v for k, v in os.environ.items() if not k.startswith("CSREL_")}
    env["PYTHONHASHSEED"] = "random"
    out = subprocess.run([sys.executable, "-m", "csrel.cli", *argv, "--threads", str(threads)],
                         capture_output=True, env=env, check=False)
    return out.returncode, out.stdout


@pytest.mark.slow
def test_10_determinism():
    with Timer() as t:
        bad = []
        for argv in CLI_COMMANDS:
            runs = [_cli(argv, 1), _cli(argv, 1), _cli(argv, 4)]
            if any(code != 0 for code, _ in runs) or len({out for _, out in runs}) != 1:
                bad.append(" ".join(argv[:2]))
    ok = not bad
    detail = (f"{len(CLI_COMMANDS)} commands byte-identical over 2 runs and threads 1/4"
              if ok else f"non-identical: {bad}")
    assert record(10, ok, detail, t.elapsed)
