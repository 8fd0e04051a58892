"""Two-mode squeezing: the two-photon laser and its distorted vacuum.

Conjugation conventions are pinned to the truncated-Fock oracle.  Detector
states are ``<lam| = <0|U(lam)^dag``, so ``<lam|n> = e^{-|lam|^2/2} conj(lam)^n /
sqrt(n!)`` and the two-mode amplitude is

    <lam_a, lam_b|zeta> = beta exp(-(|lam_a|^2 + |lam_b|^2)/2 + zeta conj(lam_a) conj(lam_b)).

Its ``|zeta| -> 1`` profile is therefore ``exp(-|lam_a - e^{i phi} conj(lam_b)|^2)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import fock

TWO_PI = 2.0 * math.pi
# |zeta| at or beyond this is treated as the (unattainable) boundary
BOUNDARY_MARGIN = 1e-9
RICHARDSON_RADII = (0.9, 0.99, 0.999)


@dataclass(frozen=True)
class SqueezeParam:
    zeta: complex
    beta: float = float("nan")

    def __post_init__(self):
        z = complex(self.zeta)
        if not (cmath.isfinite(z) and abs(z) < 1.0 - BOUNDARY_MARGIN):
            raise ValueError(f"|zeta| = {abs(z)!r} is not inside the open unit disc")
        object.__setattr__(self, "zeta", z)
        r = abs(z)
        object.__setattr__(self, "beta", math.sqrt((1.0 - r) * (1.0 + r)))

    @classmethod
    def polar(cls, r: float, phi: float) -> "SqueezeParam":
        return cls(cmath.rect(r, phi))


@dataclass(frozen=True)
class PhasePair:
    """Phases ``k_a . x_a`` and ``k_b . x_b`` picked up by the two modes."""

    phase_a: float
    phase_b: float

    def __post_init__(self):
        object.__setattr__(self, "phase_a", float(self.phase_a) % TWO_PI)
        object.__setattr__(self, "phase_b", float(self.phase_b) % TWO_PI)


def normal_order(xi: complex) -> SqueezeParam:
    """``zeta = e^{i arg xi} tanh|xi|`` of the normal-ordered squeeze operator."""
    xi = complex(xi)
    if not cmath.isfinite(xi):
        raise ValueError(f"non-finite xi {xi!r}")
    r = abs(xi)
    if r == 0.0:
        return SqueezeParam(0j)
    return SqueezeParam(xi / r * math.tanh(r))


def squeezed_vacuum(p: SqueezeParam, dim: int = fock.DEFAULT_DIM_TWO_MODE,
                    tail_tol: float = fock.SQUEEZE_TAIL_TOL) -> np.ndarray:
    """``beta sum_n zeta^n |n, n>`` in the row-major two-mode basis."""
    tail = fock.squeeze_tail(abs(p.zeta), dim)
    if not tail < tail_tol:
        raise fock.TruncationError(
            f"squeezed vacuum |zeta|={abs(p.zeta):.3g} at N={dim}: tail {tail:.3e}"
        )
    psi = np.zeros((dim, dim), dtype=complex)
    n = np.arange(dim)
    psi[n, n] = p.beta * p.zeta**n
    return psi.ravel()


def epr_amplitude(lam_a: complex, lam_b: complex, p: SqueezeParam) -> complex:
    """Amplitude between the two-mode detector ``<lam_a, lam_b|`` and ``|zeta>``."""
    ca, cb = np.conj(lam_a), np.conj(lam_b)
    expo = -0.5 * (abs(lam_a) ** 2 + abs(lam_b) ** 2) + p.zeta * ca * cb
    return complex(p.beta * np.exp(expo))


def correlation_profile(lam_a: complex, lam_b: complex, zeta: complex) -> float:
    """``|epr_amplitude|^2 / beta^2``, defined for any ``zeta`` including the boundary."""
    expo = -(abs(lam_a) ** 2 + abs(lam_b) ** 2) + 2.0 * (zeta * np.conj(lam_a * lam_b)).real
    return float(np.exp(expo))


def boundary_probability(lam_a: complex, lam_b: complex, phi: float) -> float:
    """Limiting profile ``exp(-|lam_a - e^{i phi} conj(lam_b)|^2)`` as ``zeta -> e^{i phi}``.

    The vanishing prefactor ``beta^2`` is excluded.
    """
    return float(math.exp(-abs(lam_a - cmath.exp(1j * phi) * np.conj(lam_b)) ** 2))


def richardson_limit(lam_a: complex, lam_b: complex, phi: float,
                     radii=RICHARDSON_RADII) -> float:
    """Extrapolate ``|epr_amplitude|^2 / beta^2`` along ``zeta = r e^{i phi}`` to ``r = 1``.

    Each ratio is formed from the amplitude at an interior ``r``; the values
    are then extrapolated polynomially in ``h = 1 - r`` to ``h = 0``.
    """
    hs, vals = [], []
    for r in radii:
        p = SqueezeParam.polar(r, phi)
        vals.append(abs(epr_amplitude(lam_a, lam_b, p)) ** 2 / p.beta**2)
        hs.append(1.0 - r)
    # Neville's scheme evaluated at h = 0
    t = list(vals)
    k = len(hs)
    for level in range(1, k):
        for i in range(k - level):
            j = i + level
            t[i] = (hs[j] * t[i] - hs[i] * t[i + 1]) / (hs[j] - hs[i])
    return float(t[0])


def squeeze_overlap(p1: SqueezeParam, p2: SqueezeParam) -> complex:
    """``<zeta_1|zeta_2> = beta_1 beta_2 / (1 - conj(zeta_1) zeta_2)``."""
    return complex(p1.beta * p2.beta / (1.0 - np.conj(p1.zeta) * p2.zeta))


def _apply_modes(op_a, op_b, psi: np.ndarray) -> np.ndarray:
    """``(op_a (x) op_b) psi`` for ``psi`` stored as a ``(N, N)`` matrix."""
    out = psi
    if op_a is not None:
        out = op_a @ out
    if op_b is not None:
        out = out @ op_b.T
    return out


def annihilator_residual(p: SqueezeParam, dim: int = fock.DEFAULT_DIM_TWO_MODE,
                         tail_tol: float = fock.SQUEEZE_TAIL_TOL) -> float:
    """Largest of ``||(a - zeta b^dag)|zeta>||`` and ``||(b - zeta a^dag)|zeta>||``.

    Components on the top truncation level of either mode are dropped.
    """
    psi = squeezed_vacuum(p, dim, tail_tol).reshape(dim, dim)
    a, ad = fock.ladder_ops(dim)
    ra = _apply_modes(a, None, psi) - p.zeta * _apply_modes(None, ad, psi)
    rb = _apply_modes(None, a, psi) - p.zeta * _apply_modes(ad, None, psi)
    keep = slice(0, dim - 1)
    return float(max(np.linalg.norm(ra[keep, keep]), np.linalg.norm(rb[keep, keep])))


def translate_zeta(p: SqueezeParam, phases: PhasePair) -> SqueezeParam:
    """Effect of a space-time translation: ``zeta -> zeta e^{i(phase_a + phase_b)}``."""
    return SqueezeParam(p.zeta * cmath.exp(1j * (phases.phase_a + phases.phase_b)))


def bogoliubov_map(xi: complex, lam_a: complex, lam_b: complex) -> tuple[complex, complex]:
    """Displacement ``lam'`` with ``D(xi) U(lam) D(xi)^{-1} = U(lam')``.

    Conjugation by the squeeze operator mixes each mode's displacement with
    the conjugate of the other's through ``cosh|xi|`` and ``e^{i arg xi} sinh|xi|``.
    """
    r = abs(xi)
    c = math.cosh(r)
    s = cmath.exp(1j * cmath.phase(xi)) * math.sinh(r) if r else 0j
    return (c * lam_a + s * np.conj(lam_b), c * lam_b + s * np.conj(lam_a))


@dataclass
class BogoliubovFit:
    lam_fit: tuple[complex, complex]
    lam_map: tuple[complex, complex]
    phase: float
    deviation: float


def fit_bogoliubov(xi: complex, lam: tuple[complex, complex],
                   dim: int = fock.DEFAULT_DIM_TWO_MODE, keep: int = 4,
                   tail_tol: float = 1e-8) -> BogoliubovFit:
    """Conjugate ``U(lam)`` by the truncated squeeze operator and fit a displacement.

    The transformed operator is applied to the basis states with occupations
    below ``keep``.  ``lam'`` and a global phase are read off its action on
    the vacuum, and ``e^{i phase} U(lam')`` is then compared column by column
    on the rows with occupations below ``dim // 2``.
    """
    lam_a, lam_b = complex(lam[0]), complex(lam[1])
    fock._check_tail(fock.squeeze_tail(math.tanh(abs(xi)), dim), tail_tol,
                     f"squeeze({xi}) at N={dim}")
    act, norm = fock.squeeze_action(xi, dim)
    neg = lambda v: -act(v)  # noqa: E731
    cols = fock.low_levels(dim, keep, 2)
    block = np.zeros((dim * dim, len(cols)), dtype=complex)
    block[cols, np.arange(len(cols))] = 1.0

    da = fock.displacement(lam_a, dim, tail_tol)
    db = fock.displacement(lam_b, dim, tail_tol)

    def displace(v, ua, ub):
        psi = v.T.reshape(-1, dim, dim)
        return (ua @ psi @ ub.T).reshape(v.shape[1], dim * dim).T

    t = fock.expm_apply(neg, block, norm=norm)
    t = displace(t, da, db)
    t = fock.expm_apply(act, t, norm=norm)

    vac = t[:, 0]
    amp00 = vac[0]
    # |1,0> sits at index dim and |0,1> at index 1 in the row-major basis
    lam_fit = (vac[dim] / amp00, vac[1] / amp00)
    phase = cmath.phase(amp00)
    ref = displace(block, fock.displacement(lam_fit[0], dim, tail_tol),
                   fock.displacement(lam_fit[1], dim, tail_tol)) * cmath.exp(1j * phase)
    rows = fock.low_levels(dim, dim // 2, 2)
    deviation = float(np.max(np.abs(t[rows] - ref[rows])))
    return BogoliubovFit(lam_fit, bogoliubov_map(xi, lam_a, lam_b), phase, deviation)


def bogoliubov_check(xi: complex, lam: tuple[complex, complex],
                     dim: int = fock.DEFAULT_DIM_TWO_MODE, tail_tol: float = 1e-8) -> float:
    """Max deviation of ``D(xi) U(lam) D(xi)^{-1}`` from the best-fit displacement."""
    return fit_bogoliubov(xi, lam, dim, tail_tol=tail_tol).deviation
