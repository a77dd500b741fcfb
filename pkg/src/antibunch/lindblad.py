"""Master-equation numerics: Liouvillian construction, steady states, photon
statistics, and delayed correlations via the quantum regression theorem.

The density matrix evolves as

    drho/dt = -i [H, rho] + (kappa/2) D[a] rho + sum_j (gamma_j/2) D[sigma_j] rho

with D[q] rho = 2 q rho q† - q†q rho - rho q†q and sigma_j = |g><r| on atom j.
The factor-2 convention makes the photon-number decay rate exactly kappa.

Superoperators act on column-stacked density matrices: vec(A X B) =
(B^T kron A) vec(X), so element (i, j) of rho sits at position j*D + i.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (DegenerateSteadyStateError, IllConditionedError,
                     UndefinedCorrelationError)
from .model import SystemParams, hamiltonian_full, hamiltonian_reduced
from .qcore import HilbertSpace, annihilation, atomic_sigma, number_op

HAMILTONIANS = {
    "reduced": hamiltonian_reduced,   # both atoms at antinodes, uniform coupling
    "full": hamiltonian_full,         # position-dependent couplings g cos(2 pi x_j)
}


def spre(op: np.ndarray) -> np.ndarray:
    """Superoperator of left multiplication: vec(op rho)."""
    d = op.shape[0]
    return np.kron(np.eye(d, dtype=complex), op)


def spost(op: np.ndarray) -> np.ndarray:
    """Superoperator of right multiplication: vec(rho op)."""
    d = op.shape[0]
    return np.kron(op.T, np.eye(d, dtype=complex))


def dissipator(op: np.ndarray, rate: float) -> np.ndarray:
    """(rate/2) (2 q . q† - q†q . - . q†q) as a matrix on vectorized states."""
    qdq = op.conj().T @ op
    return 0.5 * rate * (2.0 * np.kron(op.conj(), op) - spre(qdq) - spost(qdq))


def vectorize(rho: np.ndarray) -> np.ndarray:
    return rho.reshape(-1, order="F")


def unvectorize(v: np.ndarray) -> np.ndarray:
    d = int(round(np.sqrt(v.size)))
    return v.reshape((d, d), order="F")


@dataclass(frozen=True)
class Liouvillian:
    """Generator of the dissipative evolution on the vectorized state space."""

    space: HilbertSpace
    params: SystemParams
    data: np.ndarray = field(repr=False)
    hamiltonian: str = "reduced"


def build_liouvillian(space: HilbertSpace, params: SystemParams,
                      hamiltonian: str = "reduced",
                      gamma_2: float | None = None) -> Liouvillian:
    """Assemble the generator for the chosen Hamiltonian variant.

    ``gamma_2`` overrides the decay rate of the second atom; by default both
    atoms decay at ``params.gamma``.
    """
    try:
        h = HAMILTONIANS[hamiltonian](space, params)
    except KeyError:
        raise ValueError(f"hamiltonian must be one of {sorted(HAMILTONIANS)}, "
                         f"got {hamiltonian!r}") from None
    rates = (params.gamma, params.gamma if gamma_2 is None else gamma_2)
    lmat = -1j * (spre(h) - spost(h))
    lmat = lmat + dissipator(annihilation(space), params.kappa)
    for atom, rate in zip((1, 2), rates):
        lmat = lmat + dissipator(atomic_sigma(space, atom, "g", "r"), rate)
    return Liouvillian(space=space, params=params, data=lmat, hamiltonian=hamiltonian)


def _trace_row(d: int) -> np.ndarray:
    row = np.zeros(d * d, dtype=complex)
    row[np.arange(d) * (d + 1)] = 1.0
    return row


def _kernel_diagnostics(lmat: np.ndarray) -> None:
    """Raise the appropriate error after a failed or suspect steady-state solve."""
    sv = scipy.linalg.svdvals(lmat)
    smallest, second = sv[-1], sv[-2]
    if second <= 1e3 * smallest:
        raise DegenerateSteadyStateError(
            f"Liouvillian kernel is not one-dimensional "
            f"(two smallest singular values {smallest:.3e}, {second:.3e})")
    raise IllConditionedError(
        f"steady-state solve unreliable (singular values down to {smallest:.3e}, "
        f"largest {sv[0]:.3e})")


def steady_state(liouv: Liouvillian, *, check_kernel: bool = False,
                 residual_tol: float = 1e-10) -> np.ndarray:
    """Unique stationary density matrix.

    Solves the generator with one population row replaced by the trace
    functional.  ``check_kernel`` requests an upfront singular-value check of
    kernel uniqueness; otherwise diagnostics run only when the solve fails
    its residual or state-validity postconditions.
    """
    d = liouv.space.total_dim
    if check_kernel:
        sv = scipy.linalg.svdvals(liouv.data)
        if sv[-2] <= 1e3 * sv[-1]:
            raise DegenerateSteadyStateError(
                f"Liouvillian kernel is not one-dimensional "
                f"(two smallest singular values {sv[-1]:.3e}, {sv[-2]:.3e})")
    bordered = liouv.data.copy()
    bordered[0, :] = _trace_row(d)
    rhs = np.zeros(d * d, dtype=complex)
    rhs[0] = 1.0
    try:
        v = scipy.linalg.solve(bordered, rhs)
    except (scipy.linalg.LinAlgError, ValueError):
        _kernel_diagnostics(liouv.data)

    residual = float(np.max(np.abs(liouv.data @ v)))
    rho = unvectorize(v)
    rho = 0.5 * (rho + rho.conj().T)          # round-off symmetrization
    rho = rho / np.trace(rho).real
    lo = float(np.linalg.eigvalsh(rho).min())
    if residual > residual_tol or lo < -1e-8:
        _kernel_diagnostics(liouv.data)
    return rho


def mean_photon(space: HilbertSpace, rho: np.ndarray) -> float:
    """<a†a> in the given state."""
    return float(np.trace(rho @ number_op(space)).real)


def g2_zero(space: HilbertSpace, rho: np.ndarray) -> float:
    """Equal-time second-order correlation <a†a†aa> / <a†a>^2."""
    a = annihilation(space)
    n = a.conj().T @ a
    nbar = float(np.trace(rho @ n).real)
    if nbar <= 1e-14:
        raise UndefinedCorrelationError(f"mean photon number {nbar:.3e} too small for g2")
    coincidence = np.trace(rho @ (a.conj().T @ a.conj().T @ a @ a)).real
    return float(coincidence) / nbar**2


def propagate(liouv: Liouvillian, rho0: np.ndarray, t: float) -> np.ndarray:
    """exp(L t) applied to rho0 (scaling-and-squaring on the vectorized state)."""
    if t < 0:
        raise ValueError(f"propagation time must be non-negative, got {t}")
    if t == 0.0:
        return rho0.copy()
    v = scipy.linalg.expm(liouv.data * t) @ vectorize(rho0)
    return unvectorize(v)


@dataclass(frozen=True)
class CorrelationTrace:
    """Delayed second-order correlation sampled on a time grid."""

    tau: np.ndarray
    values: np.ndarray
    params: SystemParams

    def g2_zero(self) -> float:
        return float(self.values[0]) if self.tau[0] == 0.0 else float("nan")


def g2_tau(liouv: Liouvillian, tau_grid: np.ndarray) -> CorrelationTrace:
    """g2(tau) = <a†(0) a†(tau) a(tau) a(0)> / <a†a>^2 by propagating the
    photon-subtracted steady state through the regression identity.

    ``tau_grid`` must be sorted and non-negative.  Uniform grids reuse a single
    propagator for all increments.
    """
    tau = np.asarray(tau_grid, dtype=float)
    if tau.ndim != 1 or tau.size == 0:
        raise ValueError("tau_grid must be a non-empty 1-D array")
    if tau[0] < 0 or np.any(np.diff(tau) <= 0):
        raise ValueError("tau_grid must be strictly increasing and non-negative")

    space = liouv.space
    a = annihilation(space)
    n = a.conj().T @ a
    rho_ss = steady_state(liouv)
    nbar = float(np.trace(rho_ss @ n).real)
    if nbar <= 1e-14:
        raise UndefinedCorrelationError(f"mean photon number {nbar:.3e} too small for g2")

    seed = a @ rho_ss @ a.conj().T            # unnormalized conditional state
    v = vectorize(seed)
    norm = nbar**2

    values = np.empty_like(tau)
    propagators: dict[float, np.ndarray] = {}
    t_now = 0.0
    for i, t in enumerate(tau):
        step = t - t_now
        if step > 0:
            key = round(step, 15)
            if key not in propagators:
                propagators[key] = scipy.linalg.expm(liouv.data * step)
            v = propagators[key] @ v
            t_now = t
        values[i] = np.trace(n @ unvectorize(v)).real / norm
    return CorrelationTrace(tau=tau, values=values, params=liouv.params)


@dataclass(frozen=True)
class ConvergedG2:
    """g2(0) with the Fock cutoff escalated until truncation no longer matters."""

    value: float
    mean_photon: float
    cutoff: int
    converged: bool


def g2_zero_converged(params: SystemParams, *, hamiltonian: str = "reduced",
                      start_cutoff: int = 5, rel_tol: float = 0.01,
                      max_cutoff: int = 12) -> ConvergedG2:
    """Compute g2(0) at increasing Fock cutoffs (start, start+2, ...) until the
    value changes by less than ``rel_tol`` relative, or the next step would
    exceed ``max_cutoff``."""

    def at_cutoff(n: int) -> tuple[float, float]:
        liouv = build_liouvillian(HilbertSpace(n), params, hamiltonian)
        rho = steady_state(liouv)
        return g2_zero(liouv.space, rho), mean_photon(liouv.space, rho)

    cutoff = start_cutoff
    value, nbar = at_cutoff(cutoff)
    while cutoff + 2 <= max_cutoff:
        nxt_value, nxt_nbar = at_cutoff(cutoff + 2)
        cutoff += 2
        converged = abs(nxt_value - value) <= rel_tol * abs(nxt_value)
        value, nbar = nxt_value, nxt_nbar
        if converged:
            return ConvergedG2(value, nbar, cutoff, True)
    return ConvergedG2(value, nbar, cutoff, False)


__all__ = [
    "Liouvillian", "CorrelationTrace", "ConvergedG2", "HAMILTONIANS",
    "spre", "spost", "dissipator", "vectorize", "unvectorize",
    "build_liouvillian", "steady_state", "mean_photon", "g2_zero",
    "propagate", "g2_tau", "g2_zero_converged",
]
