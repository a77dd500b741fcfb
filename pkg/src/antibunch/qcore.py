"""Dense operator algebra on the composite space of two two-level atoms and one cavity mode.

Operators, kets, and density matrices are plain complex numpy arrays on the
composite space; :class:`HilbertSpace` carries the dimensions and the basis
bookkeeping.  The basis is ordered atom1 (x) atom2 (x) cavity, so the state
|a1 a2, n> sits at index ``a1*2*(N+1) + a2*(N+1) + n`` with g -> 0, r -> 1
and N the Fock cutoff.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ATOM_LEVELS = {"g": 0, "r": 1}

# fixed slot order used by embed()
SLOT_ATOM1, SLOT_ATOM2, SLOT_CAVITY = 0, 1, 2


@dataclass(frozen=True)
class HilbertSpace:
    """Two two-level atoms and a bosonic mode truncated at photon number ``fock_cutoff``.

    Two-photon coincidence observables need at least the two-photon sector,
    hence ``fock_cutoff >= 2``.
    """

    fock_cutoff: int

    def __post_init__(self):
        if not isinstance(self.fock_cutoff, (int, np.integer)):
            raise TypeError("fock_cutoff must be an integer")
        if self.fock_cutoff < 2:
            raise ValueError(f"fock_cutoff must be >= 2, got {self.fock_cutoff}")

    @property
    def atom_dims(self) -> tuple[int, int]:
        return (2, 2)

    @property
    def fock_dim(self) -> int:
        return self.fock_cutoff + 1

    @property
    def total_dim(self) -> int:
        return 4 * self.fock_dim

    def index(self, atom1: str, atom2: str, n: int) -> int:
        """Basis index of |atom1 atom2, n> with atom labels 'g' or 'r'."""
        a1, a2 = _level(atom1), _level(atom2)
        if not 0 <= n <= self.fock_cutoff:
            raise ValueError(f"photon number {n} outside [0, {self.fock_cutoff}]")
        return a1 * 2 * self.fock_dim + a2 * self.fock_dim + n

    def basis_ket(self, atom1: str, atom2: str, n: int) -> np.ndarray:
        ket = np.zeros(self.total_dim, dtype=complex)
        ket[self.index(atom1, atom2, n)] = 1.0
        return ket


def _level(label: str) -> int:
    try:
        return ATOM_LEVELS[label]
    except KeyError:
        raise ValueError(f"atom level must be 'g' or 'r', got {label!r}") from None


def identity(space: HilbertSpace) -> np.ndarray:
    return np.eye(space.total_dim, dtype=complex)


def embed(space: HilbertSpace, local_op: np.ndarray, slot: int) -> np.ndarray:
    """Lift a single-subsystem operator to the composite space.

    ``slot`` indexes the fixed tensor order (0 = atom1, 1 = atom2, 2 = cavity).
    """
    local_op = np.asarray(local_op, dtype=complex)
    dims = (2, 2, space.fock_dim)
    if slot not in (SLOT_ATOM1, SLOT_ATOM2, SLOT_CAVITY):
        raise ValueError(f"slot must be 0, 1, or 2, got {slot}")
    want = dims[slot]
    if local_op.shape != (want, want):
        raise ValueError(
            f"local operator shape {local_op.shape} does not match slot dimension {want}")
    factors = [np.eye(d, dtype=complex) for d in dims]
    factors[slot] = local_op
    return np.kron(np.kron(factors[0], factors[1]), factors[2])


def annihilation(space: HilbertSpace) -> np.ndarray:
    """Cavity annihilation operator a on the composite space."""
    a = np.zeros((space.fock_dim, space.fock_dim), dtype=complex)
    ns = np.arange(1, space.fock_dim)
    a[ns - 1, ns] = np.sqrt(ns)
    return embed(space, a, SLOT_CAVITY)


def number_op(space: HilbertSpace) -> np.ndarray:
    """Photon number operator a†a."""
    a = annihilation(space)
    return a.conj().T @ a


def atomic_sigma(space: HilbertSpace, atom: int, upper: str, lower: str) -> np.ndarray:
    """|upper><lower| on the given atom (1 or 2), identity elsewhere."""
    if atom not in (1, 2):
        raise ValueError(f"atom must be 1 or 2, got {atom}")
    op = np.zeros((2, 2), dtype=complex)
    op[_level(upper), _level(lower)] = 1.0
    return embed(space, op, atom - 1)


def expect(op: np.ndarray, rho: np.ndarray) -> complex:
    """Tr[rho op]; raises on dimension mismatch."""
    op = np.asarray(op)
    rho = np.asarray(rho)
    if op.shape != rho.shape or op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError(f"shape mismatch: op {op.shape} vs rho {rho.shape}")
    return complex(np.trace(rho @ op))


def assert_density_matrix(rho: np.ndarray, *, herm_tol: float = 1e-10,
                          trace_tol: float = 1e-10, eig_floor: float = -1e-8) -> None:
    """Validate Hermiticity, unit trace, and positivity up to the given tolerances."""
    dev_h = np.max(np.abs(rho - rho.conj().T))
    if dev_h > herm_tol:
        raise ValueError(f"not Hermitian: max deviation {dev_h:.3e}")
    dev_t = abs(np.trace(rho) - 1.0)
    if dev_t > trace_tol:
        raise ValueError(f"trace differs from 1 by {dev_t:.3e}")
    lo = float(np.linalg.eigvalsh((rho + rho.conj().T) / 2).min())
    if lo < eig_floor:
        raise ValueError(f"negative eigenvalue {lo:.3e} below floor {eig_floor:.1e}")
