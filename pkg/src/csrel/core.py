"""Relation algebra shared by every coherence group.

A detector label ``x`` and a system label ``y`` are related by the group
element ``g = x^{-1} y``.  Everything observable is a function of the
reference amplitude ``f(g) = <0|U(g)|0>``: the probability ``|f|^2`` that the
relation holds and the relation size ``sqrt(1 - |f|^2)``, which is a metric
distance between the two labels.
"""

from __future__ import annotations

import abc
import math
from typing import Any

import numpy as np

# Overshoot beyond this is treated as broken upstream normalization.
AMPLITUDE_TOL = 1e-9


class NormalizationError(ValueError):
    """An amplitude modulus exceeded one by more than rounding can explain."""


class GroupMismatchError(TypeError):
    """Two labels belong to different coherence groups."""


def _modulus(amp: complex, tol: float) -> float:
    m = abs(complex(amp))
    if not math.isfinite(m):
        raise NormalizationError(f"non-finite amplitude {amp!r}")
    if m > 1.0 + tol:
        raise NormalizationError(
            f"|amplitude| = {m!r} exceeds 1 by {m - 1.0:.3e} (tolerance {tol:.1e})"
        )
    return min(m, 1.0)


def probability_of(amp: complex, tol: float = AMPLITUDE_TOL) -> float:
    """Probability ``|amp|^2`` that a relation holds.

    Moduli in ``(1, 1 + tol]`` are clamped to 1; anything larger raises
    :class:`NormalizationError`.
    """
    return _modulus(amp, tol) ** 2


def relation_size(amp: complex, tol: float = AMPLITUDE_TOL) -> float:
    """Size ``sqrt(1 - |amp|^2)`` of the relation with amplitude ``amp``."""
    m = _modulus(amp, tol)
    # (1 - m)(1 + m) keeps precision when m is close to 1
    return math.sqrt(max((1.0 - m) * (1.0 + m), 0.0))


class CoherenceGroup(abc.ABC):
    """A locally compact group acting irreducibly, with a fixed reference state.

    Subclasses fix the coset-representative convention through
    :meth:`element_of`; the remaining methods are the bare group operations.
    The detector reference is taken to be the dual of the system reference.
    """

    name: str = "abstract"

    @abc.abstractmethod
    def element_of(self, label: Any) -> Any:
        """Group element representing ``label``."""

    @abc.abstractmethod
    def compose(self, g1: Any, g2: Any) -> Any: ...

    @abc.abstractmethod
    def inverse(self, g: Any) -> Any: ...

    @abc.abstractmethod
    def reference_amplitude(self, g: Any) -> complex:
        """``<0|U(g)|0>``."""

    @abc.abstractmethod
    def sample(self, rng: np.random.Generator) -> Any:
        """Random label drawn from the invariant measure (or its Maxwellian stand-in)."""

    @abc.abstractmethod
    def owns(self, label: Any) -> bool:
        """Whether ``label`` is a valid label for this group."""

    def relation(self, detector: Any, system: Any) -> Any:
        """The element ``g = g_detector^{-1} g_system`` relating the two labels."""
        for lab in (detector, system):
            if not self.owns(lab):
                raise GroupMismatchError(
                    f"{type(lab).__name__} is not a {self.name} label"
                )
        return self.compose(
            self.inverse(self.element_of(detector)), self.element_of(system)
        )

    def amplitude(self, detector: Any, system: Any) -> complex:
        return self.reference_amplitude(self.relation(detector, system))


def pairwise_distance(group: CoherenceGroup, x: Any, y: Any) -> float:
    """Metric distance ``sqrt(1 - |<x|y>|^2)`` between two coherent states."""
    # both orders give conjugate amplitudes, so the modulus is order-free;
    # evaluating on a canonical order makes symmetry bit-exact
    a, b = (x, y) if _order_key(x) <= _order_key(y) else (y, x)
    return relation_size(group.amplitude(a, b))


def _order_key(label: Any) -> tuple:
    if hasattr(label, "order_key"):
        return label.order_key()
    return tuple(np.ravel(np.asarray(label, dtype=complex)).view(float))
