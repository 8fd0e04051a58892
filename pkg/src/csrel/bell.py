"""Generalized Bell state on the sphere.

The state ``sum_j w_j |g_j> (x) |g_j*>`` is built from a quadrature of the
area measure, normalized to total weight 2 so that the spin-1/2 resolution of
identity holds with unit constant.  ``*`` is time reversal
``(c0, c1) -> (-conj(c1), conj(c0))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .su2 import SphereLabel, spinor_of

TOTAL_MEASURE = 2.0
SINGLET = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / math.sqrt(2.0)
# time reversal acts as TIME_REVERSAL @ conj(spinor)
TIME_REVERSAL = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)


class QuadratureError(ValueError):
    """The quadrature does not resolve the identity well enough."""


@dataclass(frozen=True)
class SphereQuadrature:
    theta: np.ndarray
    phi: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if len(self.weights) == 0:
            raise QuadratureError("empty quadrature")
        if np.any(np.asarray(self.weights) <= 0):
            raise QuadratureError("quadrature weights must be positive")

    @property
    def nodes(self) -> list[SphereLabel]:
        return [SphereLabel(t, p) for t, p in zip(self.theta, self.phi)]

    def spinors(self) -> np.ndarray:
        """Rows are the coherent-state spinors at the nodes."""
        half = 0.5 * np.asarray(self.theta)
        return np.stack([np.cos(half) + 0j, np.exp(1j * np.asarray(self.phi)) * np.sin(half)],
                        axis=1)

    def scaled(self, factor: float) -> "SphereQuadrature":
        return SphereQuadrature(self.theta, self.phi, np.asarray(self.weights) * factor)


def gauss_legendre_sphere(order: int, total: float = TOTAL_MEASURE) -> SphereQuadrature:
    """``order`` Gauss-Legendre nodes in ``cos(theta)`` times ``2 order`` equispaced ``phi``."""
    if order < 1:
        raise ValueError("order must be positive")
    x, wx = np.polynomial.legendre.leggauss(order)
    nphi = 2 * order
    phi = 2.0 * math.pi * np.arange(nphi) / nphi
    theta = np.arccos(x)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    # Legendre weights sum to 2 and the phi rule to 2 pi; rescale to ``total``
    w = np.outer(wx, np.full(nphi, 2.0 * math.pi / nphi)) * total / (4.0 * math.pi)
    return SphereQuadrature(tt.ravel(), pp.ravel(), w.ravel())


def single_node(label: SphereLabel, weight: float = TOTAL_MEASURE) -> SphereQuadrature:
    return SphereQuadrature(np.array([label.theta]), np.array([label.phi]), np.array([weight]))


def frame_operator(q: SphereQuadrature) -> np.ndarray:
    """``sum_j w_j |g_j><g_j|``."""
    s = q.spinors()
    return (s.T * q.weights) @ s.conj()


def identity_defect(q: SphereQuadrature) -> tuple[float, float]:
    """Distance of the frame operator from the nearest multiple of the identity.

    Returns ``(defect, c)`` where ``c`` minimizes the max-norm distance
    ``|frame - c I|``: the mean of the diagonal.
    """
    f = frame_operator(q)
    d0, d1 = f[0, 0].real, f[1, 1].real
    c = 0.5 * (d0 + d1)
    defect = max(abs(f[0, 1]), abs(f[1, 0]), 0.5 * abs(d0 - d1),
                 abs(f[0, 0].imag), abs(f[1, 1].imag))
    return float(defect), float(c)


def conjugate_spinor(s: np.ndarray) -> np.ndarray:
    """Time reversal ``(c0, c1) -> (-conj(c1), conj(c0))``; acts on the last axis."""
    s = np.asarray(s, dtype=complex)
    return np.stack([-np.conj(s[..., 1]), np.conj(s[..., 0])], axis=-1)


def conjugate_operator(u: np.ndarray) -> np.ndarray:
    """``T U T^{-1}`` for the anti-unitary time reversal ``T``."""
    return TIME_REVERSAL @ np.conj(u) @ TIME_REVERSAL.conj().T


def build_bell(q: SphereQuadrature, tol: float = 1e-8) -> np.ndarray:
    """Unnormalized ``sum_j w_j |g_j> (x) |g_j*>`` over the basis ``|00>, |01>, |10>, |11>``."""
    defect, _ = identity_defect(q)
    if not defect < tol:
        raise QuadratureError(f"identity defect {defect:.3e} exceeds {tol:.1e}")
    s = q.spinors()
    sc = conjugate_spinor(s)
    return np.einsum("j,ja,jb->ab", np.asarray(q.weights, dtype=float), s, sc).ravel()


def normalized(state: np.ndarray) -> np.ndarray:
    return state / np.linalg.norm(state)


def singlet_fidelity(state: np.ndarray) -> float:
    return float(abs(np.vdot(SINGLET, normalized(state))) ** 2)


def bell_correlation(g1: SphereLabel, g2: SphereLabel, state: np.ndarray) -> complex:
    """``(<g1| (x) <g2*|)`` applied to a two-spin state."""
    bra = np.kron(spinor_of(g1), conjugate_spinor(spinor_of(g2)))
    return complex(np.vdot(bra, state))


def bell_norm(q: SphereQuadrature, tol: float = 1e-8) -> float:
    """Squared norm of the unnormalized Bell state."""
    state = build_bell(q, tol)
    return float(np.vdot(state, state).real)


def measure_norm(q: SphereQuadrature) -> float:
    """``c * sum_j w_j``, the norm the measure predicts for the Bell state."""
    _, c = identity_defect(q)
    return float(c * np.sum(q.weights))


def apply_pair(u: np.ndarray, state: np.ndarray) -> np.ndarray:
    """Act with ``(h, h*)``: ``U`` on the first spin and ``T U T^{-1}`` on the second."""
    return np.kron(u, conjugate_operator(u)) @ state
