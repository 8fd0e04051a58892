"""Relational hidden variable.

A test of the relation ``g`` throws a random relation ``h`` and reports that
``g`` holds when ``s(g) < s(h)``.  With ``P(s(h) < r) = r^2`` the frequency of
success is ``1 - s(g)^2``, the Born probability.  For SU(2) ``h`` is uniform
over the sphere; for Weyl-Heisenberg it is Maxwellian.

Randomness comes from ``numpy.random.SeedSequence``: ``n`` trials are cut into
fixed-size chunks, chunk ``k`` draws from the ``k``-th spawned child, and the
counts are summed.  The result depends on the seed and ``n`` only, never on
how many worker threads run the chunks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import su2, wh

CHUNK = 1 << 16
GROUPS = ("su2", "wh")


@dataclass(frozen=True)
class HvEstimate:
    group: str
    p_hat: float
    n: int
    hits: int
    stderr: float
    seed: int

    def as_dict(self) -> dict:
        return asdict(self)


def su2_size_of_angle(theta: float) -> float:
    """Size ``sin(theta/2)`` of a relation at relative angle ``theta``."""
    return math.sin(0.5 * theta)


def su2_sizes(rng: np.random.Generator, n: int) -> np.ndarray:
    """Sizes ``sin(theta_h / 2)`` of ``n`` area-uniform relations."""
    theta, _ = su2.sample_uniform_sphere(rng, n)
    return np.sin(0.5 * theta)


def wh_sizes(rng: np.random.Generator, n: int) -> np.ndarray:
    """Sizes ``sqrt(1 - exp(-|mu|^2))`` of ``n`` Maxwellian relations."""
    mu = wh.sample_maxwellian(rng, 1, n)[:, 0]
    return np.sqrt(-np.expm1(-np.abs(mu) ** 2))


def hv_trial_su2(g_size: float, rng: np.random.Generator) -> bool:
    h = su2.sample_uniform_sphere(rng)
    return bool(g_size < math.sin(0.5 * h.theta))


def hv_trial_wh(lam: complex, rng: np.random.Generator) -> bool:
    mu = wh.sample_maxwellian(rng, 1)[0]
    return bool(abs(lam) < abs(mu))


def analytic_probability(group: str, param) -> float:
    if group == "su2":
        return math.cos(0.5 * float(param)) ** 2
    if group == "wh":
        return math.exp(-abs(complex(param)) ** 2)
    raise ValueError(f"unknown group {group!r}")


def _chunk_hits(group: str, param, seq: np.random.SeedSequence, size: int) -> int:
    rng = np.random.Generator(np.random.PCG64(seq))
    if group == "su2":
        return int(np.count_nonzero(su2_size_of_angle(param) < su2_sizes(rng, size)))
    # holds iff |lam| < |mu|, i.e. s(lam) < s(mu)
    mu = wh.sample_maxwellian(rng, 1, size)[:, 0]
    return int(np.count_nonzero(abs(complex(param)) < np.abs(mu)))


def _chunks(n: int) -> list[int]:
    full, rest = divmod(n, CHUNK)
    return [CHUNK] * full + ([rest] if rest else [])


def _validate(group: str, param) -> None:
    if group == "su2":
        theta = float(param)
        if not 0.0 <= theta <= math.pi:
            raise ValueError(f"relative angle must lie in [0, pi], got {theta}")
    elif group == "wh":
        z = complex(param)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise ValueError(f"non-finite displacement {param!r}")
    else:
        raise ValueError(f"unknown group {group!r}; expected one of {GROUPS}")


def estimate(group: str, param, n: int, seed: int, workers: int = 1) -> HvEstimate:
    """Frequency with which relation ``param`` holds over ``n`` random throws.

    ``param`` is the relative angle for ``su2`` and the displacement for ``wh``.
    """
    if n < 1:
        raise ValueError("need at least one trial")
    _validate(group, param)
    sizes = _chunks(n)
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = list(zip(seqs, sizes))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(lambda job: _chunk_hits(group, param, *job), jobs))
    else:
        hits = sum(_chunk_hits(group, param, s, k) for s, k in jobs)
    p_hat = hits / n
    return HvEstimate(group, p_hat, n, hits, math.sqrt(p_hat * (1.0 - p_hat) / n), seed)


def relation_sizes(group: str, n: int, seed: int) -> np.ndarray:
    """``n`` sizes of random relations, for checking the ``r^2`` distribution law."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    if group == "su2":
        return su2_sizes(rng, n)
    if group == "wh":
        return wh_sizes(rng, n)
    raise ValueError(f"unknown group {group!r}")
