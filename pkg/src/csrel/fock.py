"""Truncated Fock-space brute force.

This is the independent oracle every closed-form amplitude is checked
against.  States are dense complex ``ndarray`` vectors, operators dense
complex matrices.  Two-mode objects use the row-major basis
``|n_a, n_b> -> n_a * N + n_b`` so that mode ``a`` is the left Kronecker factor.

Exponentials are taken of the truncated generators, never of closed forms.
The truncation breaks the canonical commutator only on the top level, and
each entry point checks a tail bound before trusting the result.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.linalg

DEFAULT_DIM = 64
DEFAULT_DIM_TWO_MODE = 40
DISPLACEMENT_TAIL_TOL = 1e-14
SQUEEZE_TAIL_TOL = 1e-12


class TruncationError(ValueError):
    """The Fock cutoff is too small for the requested accuracy."""


def ladder_ops(dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Annihilation and creation matrices on ``span{|0>, ..., |dim-1>}``."""
    if dim < 2:
        raise ValueError(f"Fock dimension must be at least 2, got {dim}")
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)
    return a, a.conj().T


def two_mode_ladder_ops(dim: int) -> tuple[np.ndarray, np.ndarray]:
    """``a`` and ``b`` on the ``dim**2`` two-mode space."""
    a1, _ = ladder_ops(dim)
    eye = np.eye(dim)
    return np.kron(a1, eye), np.kron(eye, a1)


def vacuum(dim: int, modes: int = 1) -> np.ndarray:
    v = np.zeros(dim**modes, dtype=complex)
    v[0] = 1.0
    return v


def basis_state(dim: int, *levels: int) -> np.ndarray:
    v = np.zeros(dim ** len(levels), dtype=complex)
    idx = 0
    for n in levels:
        idx = idx * dim + n
    v[idx] = 1.0
    return v


def expm(m: np.ndarray) -> np.ndarray:
    """Matrix exponential (Pade scaling and squaring)."""
    m = np.asarray(m)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix exponential of a non-finite matrix")
    return scipy.linalg.expm(m)


def _taylor_terms(theta: float, rtol: float) -> int:
    """Smallest K with sum_{k>K} theta^k/k! <= rtol, for theta <= 1."""
    term, k = 1.0, 0
    while True:
        k += 1
        term *= theta / k
        # the tail after term k is bounded by term * theta/(k+1) / (1 - theta/(k+2))
        if term * theta / (k + 1) / (1.0 - theta / (k + 2)) <= rtol:
            return k


def expm_taylor(m: np.ndarray, rtol: float = 2**-56) -> np.ndarray:
    """Matrix exponential by truncated Taylor series with scaling and squaring.

    The number of terms is chosen from an explicit remainder bound, so this
    is an independent second route against :func:`expm`.
    """
    m = np.asarray(m, dtype=complex)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix exponential of a non-finite matrix")
    norm = np.linalg.norm(m, 1)
    s = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    x = m / 2.0**s
    n_terms = _taylor_terms(min(norm / 2.0**s, 0.5), rtol)
    out = np.eye(m.shape[0], dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    for k in range(1, n_terms + 1):
        term = term @ x / k
        out = out + term
    for _ in range(s):
        out = out @ out
    return out


def expm_apply(m, v: np.ndarray, rtol: float = 1e-15, norm: float | None = None) -> np.ndarray:
    """``expm(m) @ v`` without forming the exponential.

    ``m`` is a matrix, or a callable applying it together with an upper
    bound ``norm`` on its 1-norm.  The exponential is split into ``s`` steps
    with ``norm / s <= 1`` and each step's Taylor series is summed until the
    newest term is negligible.  ``v`` may be a vector or a block of columns.
    """
    if callable(m):
        if norm is None:
            raise ValueError("a callable operator needs an explicit norm bound")
        act = m
    else:
        mat = np.asarray(m, dtype=complex)
        norm = np.linalg.norm(mat, 1)
        act = mat.__matmul__
    out = np.array(v, dtype=complex)
    if norm == 0.0:
        return out
    steps = max(1, math.ceil(norm))
    for _ in range(steps):
        term = out
        acc = out.copy()
        k = 0
        while True:
            k += 1
            term = act(term) / (k * steps)
            acc += term
            if np.linalg.norm(term) <= rtol * np.linalg.norm(acc):
                break
            if k > 200:
                raise RuntimeError("Taylor action failed to converge")
        out = acc
    return out


def coherent_tail(lam: complex, dim: int) -> float:
    """``exp(-|lam|^2/2) |lam|^dim / sqrt(dim!)``, the first dropped Fock amplitude."""
    r = abs(lam)
    if r == 0.0:
        return 0.0
    log_t = -0.5 * r * r + dim * math.log(r) - 0.5 * math.lgamma(dim + 1)
    return math.exp(log_t)


def squeeze_tail(zeta_modulus: float, dim: int) -> float:
    """Norm ``|zeta|^dim`` of the two-mode squeezed vacuum beyond the cutoff."""
    return float(zeta_modulus) ** dim


def _check_tail(tail: float, tol: float, what: str) -> None:
    if not tail < tol:
        raise TruncationError(f"{what}: tail bound {tail:.3e} is not below {tol:.1e}")


def displacement_generator(lam: complex, dim: int) -> np.ndarray:
    a, ad = ladder_ops(dim)
    return lam * ad - np.conj(lam) * a


def displacement(lam: complex, dim: int = DEFAULT_DIM,
                 tail_tol: float = DISPLACEMENT_TAIL_TOL) -> np.ndarray:
    """Truncated ``U(lam) = exp(lam a^dag - lam^* a)``."""
    _check_tail(coherent_tail(lam, dim), tail_tol, f"displacement({lam}) at N={dim}")
    return expm(displacement_generator(lam, dim))


def displaced_vacuum(lam, dim: int = DEFAULT_DIM,
                     tail_tol: float = DISPLACEMENT_TAIL_TOL) -> np.ndarray:
    """``U(lam)|0>`` for one mode, or the tensor product for a vector ``lam``."""
    lams = np.atleast_1d(np.asarray(lam, dtype=complex))
    out = np.ones(1, dtype=complex)
    for z in lams:
        _check_tail(coherent_tail(z, dim), tail_tol, f"displaced vacuum({z}) at N={dim}")
        out = np.kron(out, expm_apply(displacement_generator(z, dim), vacuum(dim)))
    return out


def squeeze_generator(xi: complex, dim: int) -> np.ndarray:
    a1, ad1 = ladder_ops(dim)
    # a^dag b^dag = ad1 (x) ad1 and a b = a1 (x) a1 in the row-major basis
    return xi * np.kron(ad1, ad1) - np.conj(xi) * np.kron(a1, a1)


def two_mode_squeeze_op(xi: complex, dim: int = DEFAULT_DIM_TWO_MODE,
                        tail_tol: float = SQUEEZE_TAIL_TOL) -> np.ndarray:
    """Truncated ``exp(xi a^dag b^dag - xi^* a b)`` on the ``dim**2`` space."""
    _check_tail(squeeze_tail(math.tanh(abs(xi)), dim), tail_tol,
                f"two-mode squeeze({xi}) at N={dim}")
    return expm(squeeze_generator(xi, dim))


def squeeze_action(xi: complex, dim: int):
    """Callable applying the squeeze generator, plus a bound on its 1-norm.

    Columns of length ``dim**2`` are reshaped to ``(dim, dim)`` matrices so the
    generator acts as ``xi A^dag Psi A^dag^T - xi^* A Psi A^T`` without the
    ``dim**2``-square matrix.
    """
    a1, ad1 = ladder_ops(dim)
    cxi = np.conj(xi)

    def act(v: np.ndarray) -> np.ndarray:
        cols = v.reshape(dim * dim, -1)
        psi = cols.T.reshape(-1, dim, dim)
        out = xi * (ad1 @ psi @ ad1.T) - cxi * (a1 @ psi @ a1.T)
        return out.reshape(cols.shape[1], dim * dim).T.reshape(v.shape)

    # column sums of the generator are at most |xi| ((n+1) + n) for n < dim
    return act, 2.0 * abs(xi) * dim


def squeeze_vacuum_oracle(xi: complex, dim: int = DEFAULT_DIM_TWO_MODE,
                          tail_tol: float = SQUEEZE_TAIL_TOL) -> np.ndarray:
    """Brute-force ``exp(xi a^dag b^dag - xi^* a b)|0,0>``."""
    _check_tail(squeeze_tail(math.tanh(abs(xi)), dim), tail_tol,
                f"two-mode squeeze({xi}) at N={dim}")
    act, norm = squeeze_action(xi, dim)
    return expm_apply(act, vacuum(dim, 2), norm=norm)


def low_levels(dim: int, keep: int, modes: int = 1) -> np.ndarray:
    """Indices of basis states whose every mode occupation is below ``keep``."""
    grids = np.meshgrid(*([np.arange(dim)] * modes), indexing="ij")
    mask = np.ones([dim] * modes, dtype=bool)
    for g in grids:
        mask &= g < keep
    return np.flatnonzero(mask.ravel())


def unitarity_defect(u: np.ndarray, dim: int | None = None, keep: int | None = None,
                     modes: int = 1) -> float:
    """``max |U^dag U - I|`` on basis states with all occupations below ``keep``."""
    d = u.conj().T @ u - np.eye(u.shape[0])
    if keep is not None:
        idx = low_levels(dim, keep, modes)
        d = d[np.ix_(idx, idx)]
    return float(np.max(np.abs(d)))


def inner(bra_state: np.ndarray, ket_state: np.ndarray) -> complex:
    """``<bra_state|ket_state>`` (the first argument is conjugated)."""
    return complex(np.vdot(bra_state, ket_state))
