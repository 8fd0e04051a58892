"""Spin-1/2 coherent states on the sphere SU(2)/U(1).

The reference state is the north pole ``(1, 0)``.  The state with label
``(theta, phi)`` is produced by the rotation through ``theta`` about the axis
``(-sin phi, cos phi, 0)``, so that

    |theta, phi> = (cos(theta/2), e^{i phi} sin(theta/2)).

Only moduli of amplitudes are observable, so this phase convention is a
choice, fixed here for reproducibility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import CoherenceGroup

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SphereLabel:
    """Point on the sphere; ``phi`` is dropped at the poles."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        if not (0.0 <= theta <= math.pi) or not math.isfinite(float(self.phi)):
            raise ValueError(f"invalid sphere label ({self.theta}, {self.phi})")
        phi = float(self.phi) % TWO_PI
        if theta in (0.0, math.pi):
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    def order_key(self) -> tuple:
        return (self.theta, self.phi)

    def unit_vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi),
                         math.cos(self.theta)])

    @classmethod
    def from_vector(cls, v) -> "SphereLabel":
        x, y, z = np.asarray(v, dtype=float) / np.linalg.norm(v)
        return cls(math.acos(min(1.0, max(-1.0, z))), math.atan2(y, x))


NORTH = SphereLabel(0.0, 0.0)
SOUTH = SphereLabel(math.pi, 0.0)


def spinor_of(label: SphereLabel) -> np.ndarray:
    half = 0.5 * label.theta
    return np.array([math.cos(half), np.exp(1j * label.phi) * math.sin(half)])


def rotation_of(label: SphereLabel) -> np.ndarray:
    """SU(2) coset representative taking the north pole to ``label``."""
    c = math.cos(0.5 * label.theta)
    s = math.sin(0.5 * label.theta)
    e = np.exp(1j * label.phi)
    return np.array([[c, -np.conj(e) * s], [e * s, c]])


def su2_amplitude(detector: SphereLabel, system: SphereLabel) -> complex:
    """``<detector|system>`` for spin-1/2 coherent states."""
    return complex(np.vdot(spinor_of(detector), spinor_of(system)))


def relative_angle(x: SphereLabel, y: SphereLabel) -> float:
    d = float(np.dot(x.unit_vector(), y.unit_vector()))
    return math.acos(min(1.0, max(-1.0, d)))


def chord_size(detector: SphereLabel, system: SphereLabel) -> float:
    """Relation size ``sin(Theta/2)``, half the chord between the two points."""
    # half the Euclidean chord avoids the acos round trip
    chord = np.linalg.norm(detector.unit_vector() - system.unit_vector())
    return min(1.0, 0.5 * float(chord))


def sample_uniform_sphere(rng: np.random.Generator, size: int | None = None):
    """Area-uniform labels: ``cos(theta)`` and ``phi`` uniform."""
    if size is None:
        u, phi = rng.uniform(-1.0, 1.0), rng.uniform(0.0, TWO_PI)
        return SphereLabel(math.acos(u), phi)
    u = rng.uniform(-1.0, 1.0, size)
    phi = rng.uniform(0.0, TWO_PI, size)
    return np.arccos(u), phi


def sample_su2(rng: np.random.Generator) -> np.ndarray:
    """Haar-random SU(2) matrix from a uniform unit quaternion."""
    q = rng.standard_normal(4)
    q /= np.linalg.norm(q)
    a, b = q[0] + 1j * q[3], q[2] + 1j * q[1]
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]])


def rotate(u: np.ndarray, label: SphereLabel) -> SphereLabel:
    """Label of the state ``u|label>`` (the U(1) phase it picks up is dropped)."""
    s = u @ spinor_of(label)
    # Bloch vector of the rotated spinor
    x = 2.0 * (np.conj(s[0]) * s[1]).real
    y = 2.0 * (np.conj(s[0]) * s[1]).imag
    z = abs(s[0]) ** 2 - abs(s[1]) ** 2
    return SphereLabel.from_vector([x, y, z])


class SU2(CoherenceGroup):
    """SU(2) with the north-pole reference state; elements are 2x2 matrices."""

    name = "su2"

    def element_of(self, label: SphereLabel) -> np.ndarray:
        return rotation_of(label)

    def compose(self, g1, g2):
        return g1 @ g2

    def inverse(self, g):
        return g.conj().T

    def reference_amplitude(self, g) -> complex:
        return complex(g[0, 0])

    def sample(self, rng):
        return sample_uniform_sphere(rng)

    def owns(self, label) -> bool:
        return isinstance(label, SphereLabel)

