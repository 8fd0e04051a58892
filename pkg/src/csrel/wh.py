"""Weyl-Heisenberg (Glauber) coherent states.

Group elements are ``e^{i theta} U(lam)`` with ``lam`` a complex vector, one
entry per mode.  They multiply as

    U(lam1) U(lam2) = e^{i Im(lam2^* . lam1)} U(lam1 + lam2),

and the Fock vacuum gives the reference amplitude ``exp(-|lam|^2 / 2)``.
Detector states are duals of system states, so ``<lam1|lam2>`` is the
reference amplitude of ``g(lam1)^{-1} g(lam2)``, cocycle phase included.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import fock
from .core import CoherenceGroup

TWO_PI = 2.0 * math.pi
LATTICE_SPACING = math.sqrt(math.pi)


def as_modes(lam) -> np.ndarray:
    return np.atleast_1d(np.asarray(lam, dtype=complex))


def symplectic(lam1, lam2) -> float:
    """``Im(lam2^* . lam1)``, the phase in the composition law."""
    return float(np.vdot(as_modes(lam2), as_modes(lam1)).imag)


@dataclass(frozen=True)
class WHElement:
    theta: float
    lam: tuple = field(default=(0j,))

    def __post_init__(self):
        lam = tuple(complex(z) for z in as_modes(self.lam))
        if not all(math.isfinite(z.real) and math.isfinite(z.imag) for z in lam):
            raise ValueError(f"non-finite displacement {self.lam}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "theta", float(self.theta) % TWO_PI)

    @property
    def modes(self) -> int:
        return len(self.lam)

    @property
    def vec(self) -> np.ndarray:
        return np.array(self.lam, dtype=complex)

    @classmethod
    def identity(cls, modes: int = 1) -> "WHElement":
        return cls(0.0, (0j,) * modes)

    def order_key(self) -> tuple:
        return (self.theta,) + tuple(x for z in self.lam for x in (z.real, z.imag))


def _check_modes(g1: WHElement, g2: WHElement) -> None:
    if g1.modes != g2.modes:
        raise ValueError(f"mode mismatch: {g1.modes} vs {g2.modes}")


def wh_compose(g1: WHElement, g2: WHElement) -> WHElement:
    _check_modes(g1, g2)
    phase = g1.theta + g2.theta + symplectic(g1.vec, g2.vec)
    return WHElement(phase, g1.vec + g2.vec)


def wh_inverse(g: WHElement) -> WHElement:
    return WHElement(-g.theta, -g.vec)


def vacuum_amplitude(lam) -> float:
    """``<0|U(lam)|0> = exp(-|lam|^2 / 2)``."""
    v = as_modes(lam)
    return math.exp(-0.5 * float(np.vdot(v, v).real))


def element_amplitude(g: WHElement) -> complex:
    """``<0| e^{i theta} U(lam) |0>``."""
    return complex(np.exp(1j * g.theta) * vacuum_amplitude(g.vec))


def _as_element(label) -> WHElement:
    if isinstance(label, WHElement):
        return label
    return WHElement(0.0, as_modes(label))


def glauber_overlap(lam1, lam2) -> complex:
    """``<lam1|lam2>`` between Glauber states, computed in the group."""
    g1, g2 = _as_element(lam1), _as_element(lam2)
    _check_modes(g1, g2)
    return element_amplitude(wh_compose(wh_inverse(g1), g2))


def glauber_overlap_matrix(bras: np.ndarray, kets: np.ndarray) -> np.ndarray:
    """Single-mode overlaps ``<bras[j]|kets[k]>`` for arrays of displacements."""
    b = np.asarray(bras, dtype=complex)[:, None]
    k = np.asarray(kets, dtype=complex)[None, :]
    return np.exp(-0.5 * (abs(b) ** 2 + abs(k) ** 2) + np.conj(b) * k)


def sample_maxwellian(rng: np.random.Generator, modes: int = 1,
                      size: int | None = None) -> np.ndarray:
    """Complex Gaussian with density ``exp(-|mu|^2) / pi`` per component."""
    shape = (modes,) if size is None else (size, modes)
    scale = math.sqrt(0.5)
    return rng.normal(0.0, scale, shape) + 1j * rng.normal(0.0, scale, shape)


class WH(CoherenceGroup):
    """The ``modes``-mode Weyl-Heisenberg group with the Fock vacuum reference."""

    name = "wh"

    def __init__(self, modes: int = 1):
        self.modes = modes

    def element_of(self, label) -> WHElement:
        return _as_element(label)

    def compose(self, g1, g2):
        return wh_compose(g1, g2)

    def inverse(self, g):
        return wh_inverse(g)

    def reference_amplitude(self, g) -> complex:
        return element_amplitude(g)

    def sample(self, rng):
        return WHElement(0.0, sample_maxwellian(rng, self.modes))

    def owns(self, label) -> bool:
        if isinstance(label, WHElement):
            return label.modes == self.modes
        try:
            return as_modes(label).shape == (self.modes,)
        except (TypeError, ValueError):
            return False


@dataclass(frozen=True)
class LatticeWindow:
    """Square window ``(n + i m) * spacing`` with ``|n|, |m| <= half_width``."""

    half_width: int
    spacing: float = LATTICE_SPACING

    def __post_init__(self):
        if self.half_width < 0:
            raise ValueError("half_width must be non-negative")

    @property
    def indices(self) -> tuple[np.ndarray, np.ndarray]:
        r = np.arange(-self.half_width, self.half_width + 1)
        n, m = np.meshgrid(r, r, indexing="ij")
        return n.ravel(), m.ravel()

    @property
    def points(self) -> np.ndarray:
        n, m = self.indices
        return (n + 1j * m) * self.spacing

    def max_modulus(self) -> float:
        return math.sqrt(2.0) * self.half_width * self.spacing


@dataclass
class LatticeProbe:
    window: LatticeWindow
    gram: np.ndarray
    singular_values: np.ndarray
    null_coeff_moduli: np.ndarray
    core_spread: float
    fock_dim: int | None = None
    tail_bound: float | None = None
    oracle_deviation: float | None = None

    @property
    def min_singular(self) -> float:
        return float(self.singular_values[-1])


def required_fock_dim(max_modulus: float, tol: float = fock.DISPLACEMENT_TAIL_TOL,
                      start: int = 2) -> int:
    """Smallest cutoff past the Poisson peak whose first dropped amplitude is below ``tol``."""
    n = max(start, int(math.ceil(max_modulus**2)) + 1)
    while fock.coherent_tail(max_modulus, n) >= tol:
        n += 1
    return n


def core_spread(window: LatticeWindow, moduli: np.ndarray, core_radius: int = 1) -> float:
    """Relative spread ``(max - min) / mean`` of ``moduli`` on the central block."""
    n, m = window.indices
    core = (np.abs(n) <= core_radius) & (np.abs(m) <= core_radius)
    vals = moduli[core]
    return float((vals.max() - vals.min()) / vals.mean())


def lattice_gram(window: LatticeWindow, fock_dim: int | None = None,
                 tail_tol: float = fock.DISPLACEMENT_TAIL_TOL,
                 core_radius: int = 1) -> LatticeProbe:
    """Gram matrix of the Glauber states on a lattice window and its smallest singular pair.

    The Gram matrix is assembled from closed-form overlaps.  When ``fock_dim``
    is given the same matrix is rebuilt from truncated Fock vectors and the
    largest entrywise deviation is recorded; that check raises
    :class:`~csrel.fock.TruncationError` if the cutoff is too small.
    """
    pts = window.points
    gram = glauber_overlap_matrix(pts, pts)
    # Hermitian PSD: eigh gives the singular system directly and in a stable order
    evals, evecs = np.linalg.eigh(gram)
    svals = np.clip(evals[::-1], 0.0, None)
    null_vec = evecs[:, 0]
    moduli = np.abs(null_vec)
    probe = LatticeProbe(window, gram, svals, moduli, core_spread(window, moduli, core_radius))
    if fock_dim is not None:
        tail = fock.coherent_tail(window.max_modulus(), fock_dim)
        probe.fock_dim = fock_dim
        probe.tail_bound = tail
        if not tail < tail_tol:
            raise fock.TruncationError(
                f"lattice half_width {window.half_width} at N={fock_dim}: "
                f"tail bound {tail:.3e} is not below {tail_tol:.1e}"
            )
        vecs = np.stack([fock.displacement(z, fock_dim, tail_tol)[:, 0] for z in pts], axis=1)
        probe.oracle_deviation = float(np.max(np.abs(vecs.conj().T @ vecs - gram)))
    return probe

