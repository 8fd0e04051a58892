"""Closed form versus truncated-Fock brute force, suite by suite."""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import fock, squeeze, wh
from .core import NormalizationError

CHECK_SEED = 7


@dataclass
class SuiteResult:
    name: str
    passed: bool
    max_error: float | None
    tol: float
    cases: int = 0
    error: str | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def random_disc(rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
    """``n`` points uniform in the complex disc ``|z| <= radius``."""
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    return r * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, n))


def glauber_vacuum_suite(dim: int = fock.DEFAULT_DIM, n: int = 50):
    lams = random_disc(np.random.default_rng(CHECK_SEED), n, 2.0)
    errs = [abs(fock.displacement(z, dim)[0, 0] - wh.vacuum_amplitude(z)) for z in lams]
    return max(errs), n


def composition_suite(dim: int = fock.DEFAULT_DIM, n: int = 20):
    """``U(l1) U(l2) = e^{i Im(l2^* l1)} U(l1 + l2)`` on the lower half of the space."""
    rng = np.random.default_rng(CHECK_SEED + 1)
    l1s, l2s = random_disc(rng, n, 1.0), random_disc(rng, n, 1.0)
    keep = dim // 2
    errs = []
    for l1, l2 in zip(l1s, l2s):
        lhs = fock.displacement(l1, dim) @ fock.displacement(l2, dim)
        rhs = cmath.exp(1j * wh.symplectic(l1, l2)) * fock.displacement(l1 + l2, dim)
        errs.append(np.max(np.abs(lhs - rhs)[:keep, :keep]))
    return float(max(errs)), n


def glauber_overlap_suite(dim: int = fock.DEFAULT_DIM, n: int = 20):
    rng = np.random.default_rng(CHECK_SEED + 2)
    l1s, l2s = random_disc(rng, n, 2.0), random_disc(rng, n, 2.0)
    errs = [abs(fock.inner(fock.displaced_vacuum(a, dim), fock.displaced_vacuum(b, dim))
                - wh.glauber_overlap(a, b)) for a, b in zip(l1s, l2s)]
    return max(errs), n


def expm_routes_suite(n: int = 20, size: int = 12):
    rng = np.random.default_rng(CHECK_SEED + 3)
    errs = []
    for _ in range(n):
        m = (rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))) / 2
        a, b = fock.expm(m), fock.expm_taylor(m)
        errs.append(np.max(np.abs(a - b)) / np.max(np.abs(a)))
    return float(max(errs)), n


SQUEEZE_XIS = (0.3, 0.5 * cmath.exp(1j), 0.7j, -0.7)


def squeezed_vacuum_suite(dim: int = fock.DEFAULT_DIM_TWO_MODE, tail_tol: float = 1e-8):
    errs = []
    for xi in SQUEEZE_XIS:
        oracle = fock.squeeze_vacuum_oracle(xi, dim, tail_tol)
        closed = squeeze.squeezed_vacuum(squeeze.normal_order(xi), dim, tail_tol)
        errs.append(np.max(np.abs(oracle - closed)))
    return float(max(errs)), len(SQUEEZE_XIS)


def epr_grid(n: int = 5):
    """``n**3`` points: ``|zeta| <= 0.6`` and ``|lam_a|, |lam_b| <= 1`` with mixed phases."""
    zetas = [cmath.rect(0.6 * k / (n - 1), 0.7 * k) for k in range(n)]
    lams = [cmath.rect(k / (n - 1), 1.3 * k + 0.2) for k in range(n)]
    return [(z, la, lb) for z in zetas for la in lams for lb in lams[::-1]]


def xi_of_zeta(zeta: complex) -> complex:
    r = abs(zeta)
    return 0j if r == 0 else zeta / r * math.atanh(r)


def epr_grid_suite(dim: int = fock.DEFAULT_DIM_TWO_MODE, tail_tol: float = 1e-8):
    """Closed-form amplitude against ``<lam_a, lam_b|`` applied to the brute-force state."""
    errs = []
    grid = epr_grid()
    states = {}
    for zeta, la, lb in grid:
        if zeta not in states:
            states[zeta] = fock.squeeze_vacuum_oracle(xi_of_zeta(zeta), dim, tail_tol)
        bra = np.kron(fock.displaced_vacuum(la, dim), fock.displaced_vacuum(lb, dim))
        closed = squeeze.epr_amplitude(la, lb, squeeze.SqueezeParam(zeta))
        errs.append(abs(fock.inner(bra, states[zeta]) - closed))
    return float(max(errs)), len(grid)


def annihilator_suite(dim: int = fock.DEFAULT_DIM_TWO_MODE):
    return squeeze.annihilator_residual(squeeze.SqueezeParam(0.5), dim), 1


OVERLAP_PAIRS = ((0.3, 0.5j), (0j, 0.5), (0.4 - 0.2j, -0.1 + 0.5j), (0.55, 0.55))


def squeeze_overlap_suite(dim: int = fock.DEFAULT_DIM_TWO_MODE, tail_tol: float = 1e-8):
    errs = []
    for z1, z2 in OVERLAP_PAIRS:
        v1 = fock.squeeze_vacuum_oracle(xi_of_zeta(z1), dim, tail_tol)
        v2 = fock.squeeze_vacuum_oracle(xi_of_zeta(z2), dim, tail_tol)
        closed = squeeze.squeeze_overlap(squeeze.SqueezeParam(z1), squeeze.SqueezeParam(z2))
        errs.append(abs(fock.inner(v1, v2) - closed))
    return float(max(errs)), len(OVERLAP_PAIRS)


def bogoliubov_suite(dim: int = fock.DEFAULT_DIM_TWO_MODE):
    fit = squeeze.fit_bogoliubov(0.5, (1.0, 0.0), dim)
    map_err = max(abs(a - b) for a, b in zip(fit.lam_fit, fit.lam_map))
    return max(fit.deviation, map_err), 1


def suites(dim: int, dim_two: int) -> list[tuple[str, float, Callable]]:
    return [
        ("glauber_vacuum", 1e-9, lambda: glauber_vacuum_suite(dim)),
        ("composition_law", 1e-8, lambda: composition_suite(dim)),
        ("glauber_overlap", 1e-9, lambda: glauber_overlap_suite(dim)),
        ("expm_second_route", 1e-11, expm_routes_suite),
        ("squeezed_vacuum", 1e-8, lambda: squeezed_vacuum_suite(dim_two)),
        ("epr_amplitude_grid", 1e-7, lambda: epr_grid_suite(dim_two)),
        ("annihilator_residual", 1e-8, lambda: annihilator_suite(dim_two)),
        ("squeeze_overlap", 1e-8, lambda: squeeze_overlap_suite(dim_two)),
        ("bogoliubov_automorphism", 1e-6, lambda: bogoliubov_suite(dim_two)),
    ]


def run_all(dim: int = fock.DEFAULT_DIM, dim_two: int = fock.DEFAULT_DIM_TWO_MODE,
            only: list[str] | None = None) -> list[SuiteResult]:
    results = []
    for name, tol, fn in suites(dim, dim_two):
        if only and name not in only:
            continue
        try:
            err, cases = fn()
            results.append(SuiteResult(name, bool(err < tol), float(err), tol, cases))
        except (fock.TruncationError, NormalizationError, ValueError) as exc:
            results.append(SuiteResult(name, False, None, tol, 0, f"{type(exc).__name__}: {exc}"))
    return results
