"""Physical model: drive schemes, system parameters, and Hamiltonians.

All rates and detunings are in units of the cavity linewidth kappa unless a
config mapping says otherwise (see :func:`params_from_mapping`).  Atom
positions x1, x2 are in units of the cavity wavelength, entering through the
mode profile cos(2 pi x).

Hamiltonian (rotating frame of the drive laser):

    H = -delta_a (s1_rr + s2_rr) - delta_c a†a
        + sum_j g cos(2 pi x_j) (sj_rg a + sj_gr a†)
        + V s1_rr s2_rr + H_d

with H_d = epsilon (a + a†) for a cavity drive and
H_d = epsilon sum_j (sj_rg + sj_gr) for an atom drive.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .qcore import HilbertSpace, annihilation, atomic_sigma

TWO_PI = 2.0 * math.pi


class Drive(str, enum.Enum):
    ATOM = "atom"
    CAVITY = "cavity"


class PotentialKind(str, enum.Enum):
    VAN_DER_WAALS = "van_der_waals"   # C6 / d^6
    DIPOLE_DIPOLE = "dipole_dipole"   # C3 / d^3


@dataclass(frozen=True)
class RydbergPotential:
    """Interaction-law descriptor: coefficient in GHz * um^power.

    The coefficient is quoted as an ordinary frequency; the returned coupling
    is reported in angular-frequency convention (units of 2 pi x MHz), which is
    how linewidths and couplings are tabulated for these systems.
    """

    kind: PotentialKind
    coefficient: float

    @property
    def power(self) -> int:
        return 6 if self.kind is PotentialKind.VAN_DER_WAALS else 3


# 87Rb |62 D_3/2>: C6 = 730 GHz um^6, and the reference cavity-QED rates
# (g, kappa) = 2 pi x (7.8, 2.5) MHz, gamma = 2 pi x 0.4 kHz.
RB87_62D32_VDW = RydbergPotential(PotentialKind.VAN_DER_WAALS, 730.0)
REFERENCE_KAPPA_2PI_MHZ = 2.5
REFERENCE_G_2PI_MHZ = 7.8
REFERENCE_GAMMA_2PI_MHZ = 4e-4


def rydberg_coupling_from_distance(distance_um: float, potential: RydbergPotential) -> float:
    """Rydberg coupling V at the given interatomic distance, in 2 pi x MHz.

    The power-law coefficient is an ordinary frequency in GHz * um^power, so
    the value is converted to MHz and divided by 2 pi to express it in the
    angular convention used for all other rates.
    """
    if distance_um <= 0:
        raise ValueError(f"distance must be positive, got {distance_um}")
    ordinary_mhz = potential.coefficient / distance_um ** potential.power * 1e3
    return ordinary_mhz / TWO_PI


@dataclass(frozen=True)
class SystemParams:
    """Parameter record for one operating point.

    delta_a : float   laser-atom detuning
    delta_c : float   laser-cavity detuning
    g       : float   cavity-atom coupling at an antinode (>= 0)
    V       : float   Rydberg-Rydberg coupling
    epsilon : float   pump amplitude (>= 0)
    gamma   : float   atomic decay rate (>= 0)
    drive   : Drive   which subsystem the pump addresses
    kappa   : float   cavity decay rate (> 0); 1.0 fixes kappa units
    x1, x2  : float   atom positions in wavelength units
    """

    delta_a: float
    delta_c: float
    g: float
    V: float
    epsilon: float
    gamma: float
    drive: Drive
    kappa: float = 1.0
    x1: float = 0.0
    x2: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "drive", Drive(self.drive))
        for name in ("delta_a", "delta_c", "g", "V", "epsilon", "gamma", "kappa", "x1", "x2"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
        if self.kappa <= 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        for name in ("g", "epsilon", "gamma"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative, got {getattr(self, name)}")

    def couplings(self) -> tuple[float, float]:
        """Position-dependent couplings g_j = g cos(2 pi x_j)."""
        return (self.g * math.cos(TWO_PI * self.x1),
                self.g * math.cos(TWO_PI * self.x2))

    def with_values(self, **updates) -> "SystemParams":
        return replace(self, **updates)


FREQUENCY_FIELDS = ("delta_a", "delta_c", "g", "V", "epsilon", "gamma", "kappa")


def params_from_mapping(mapping: dict) -> SystemParams:
    """Build SystemParams from a flat mapping with a ``units`` tag.

    units = "kappa":   values are already in units of kappa (kappa itself may
                       be any positive number but is conventionally 1).
    units = "2pi_mhz": frequency-like values are in 2 pi x MHz and are divided
                       by kappa on load, after which kappa = 1.
    Positions x1, x2 are wavelength fractions in both conventions.
    """
    data = dict(mapping)
    units = data.pop("units", "kappa")
    if units not in ("kappa", "2pi_mhz"):
        raise ValueError(f"units must be 'kappa' or '2pi_mhz', got {units!r}")
    try:
        drive = Drive(data.pop("drive"))
    except KeyError:
        raise ValueError("missing required key 'drive'") from None
    known = set(FREQUENCY_FIELDS) | {"x1", "x2"}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown parameter keys: {sorted(unknown)}")
    missing = {"delta_a", "delta_c", "g", "V", "epsilon", "gamma"} - set(data)
    if missing:
        raise ValueError(f"missing required parameter keys: {sorted(missing)}")
    values = {k: float(v) for k, v in data.items()}
    if units == "2pi_mhz":
        kappa = values.get("kappa")
        if kappa is None or kappa <= 0:
            raise ValueError("units '2pi_mhz' requires a positive 'kappa' entry")
        for name in FREQUENCY_FIELDS:
            if name in values:
                values[name] = values[name] / kappa
        values["kappa"] = 1.0
    return SystemParams(drive=drive, **values)


def drive_hamiltonian(space: HilbertSpace, params: SystemParams) -> np.ndarray:
    """Pump term: epsilon (a + a†) or epsilon sum_j (sj_rg + sj_gr)."""
    if params.drive is Drive.CAVITY:
        a = annihilation(space)
        return params.epsilon * (a + a.conj().T)
    s1 = atomic_sigma(space, 1, "r", "g")
    s2 = atomic_sigma(space, 2, "r", "g")
    return params.epsilon * (s1 + s1.conj().T + s2 + s2.conj().T)


def _bare_hamiltonian(space: HilbertSpace, params: SystemParams) -> np.ndarray:
    a = annihilation(space)
    s1_rr = atomic_sigma(space, 1, "r", "r")
    s2_rr = atomic_sigma(space, 2, "r", "r")
    return (-params.delta_a * (s1_rr + s2_rr)
            - params.delta_c * (a.conj().T @ a)
            + params.V * (s1_rr @ s2_rr))


def hamiltonian_full(space: HilbertSpace, params: SystemParams) -> np.ndarray:
    """Position-dependent Hamiltonian with couplings g cos(2 pi x_j)."""
    a = annihilation(space)
    g1, g2 = params.couplings()
    h = _bare_hamiltonian(space, params)
    for atom, gj in ((1, g1), (2, g2)):
        s_rg = atomic_sigma(space, atom, "r", "g")
        term = gj * (s_rg @ a)
        h = h + term + term.conj().T
    return h + drive_hamiltonian(space, params)


def hamiltonian_reduced(space: HilbertSpace, params: SystemParams) -> np.ndarray:
    """Hamiltonian with both atoms at antinodes (interatomic distance an
    integer number of wavelengths), where only the symmetric collective state
    couples to the cavity."""
    a = annihilation(space)
    h = _bare_hamiltonian(space, params)
    for atom in (1, 2):
        s_rg = atomic_sigma(space, atom, "r", "g")
        term = params.g * (s_rg @ a)
        h = h + term + term.conj().T
    return h + drive_hamiltonian(space, params)


def collective_decomposition(space: HilbertSpace, params: SystemParams
                             ) -> tuple[np.ndarray, np.ndarray]:
    """Interaction split H_I = H_plus + H_minus over symmetric/antisymmetric
    collective raising operators D±† = (s1_rg ± s2_rg)/sqrt(2).

    H± = (g/sqrt(2)) (cos(2 pi x1) ± cos(2 pi x2)) (a D±† + a† D±);
    H_minus vanishes when the interatomic distance is a whole number of
    wavelengths.
    """
    a = annihilation(space)
    g1, g2 = params.couplings()
    s1 = atomic_sigma(space, 1, "r", "g")
    s2 = atomic_sigma(space, 2, "r", "g")
    out = []
    for sign in (+1.0, -1.0):
        d_dag = (s1 + sign * s2) / math.sqrt(2.0)
        amp = params.g * (math.cos(TWO_PI * params.x1)
                          + sign * math.cos(TWO_PI * params.x2)) / math.sqrt(2.0)
        term = amp * (a @ d_dag)
        out.append(term + term.conj().T)
    return out[0], out[1]


def effective_nonhermitian(space: HilbertSpace, params: SystemParams) -> np.ndarray:
    """Reduced Hamiltonian with decay folded in as anti-Hermitian terms:
    H_eff = H_r - i kappa a†a / 2 - i gamma (s1_rr + s2_rr)/2.

    The atomic lowering operator is |g><r|, so its dagger-product is the
    Rydberg projector.
    """
    a = annihilation(space)
    s1_rr = atomic_sigma(space, 1, "r", "r")
    s2_rr = atomic_sigma(space, 2, "r", "r")
    return (hamiltonian_reduced(space, params)
            - 0.5j * params.kappa * (a.conj().T @ a)
            - 0.5j * params.gamma * (s1_rr + s2_rr))


__all__ = [
    "Drive", "PotentialKind", "RydbergPotential", "SystemParams",
    "RB87_62D32_VDW", "REFERENCE_KAPPA_2PI_MHZ", "REFERENCE_G_2PI_MHZ",
    "REFERENCE_GAMMA_2PI_MHZ",
    "rydberg_coupling_from_distance", "params_from_mapping",
    "drive_hamiltonian", "hamiltonian_full", "hamiltonian_reduced",
    "collective_decomposition", "effective_nonhermitian",
]
