"""Parameter records, unit handling, and Hamiltonian construction."""
import math

import numpy as np
import pytest

from antibunch.model import (
    RB87_62D32_VDW,
    REFERENCE_G_2PI_MHZ,
    REFERENCE_GAMMA_2PI_MHZ,
    REFERENCE_KAPPA_2PI_MHZ,
    Drive,
    PotentialKind,
    RydbergPotential,
    SystemParams,
    collective_decomposition,
    drive_hamiltonian,
    effective_nonhermitian,
    hamiltonian_full,
    hamiltonian_reduced,
    params_from_mapping,
    rydberg_coupling_from_distance,
)
from antibunch.qcore import HilbertSpace, annihilation, atomic_sigma


def random_params(rng, drive="atom"):
    return SystemParams(
        delta_a=rng.uniform(-10, 10),
        delta_c=rng.uniform(-10, 10),
        g=rng.uniform(0, 4),
        V=rng.uniform(0, 20),
        epsilon=rng.uniform(0, 0.5),
        gamma=rng.uniform(0, 2),
        drive=drive,
        x1=rng.uniform(-1, 1),
        x2=rng.uniform(-1, 1),
    )


def test_hamiltonians_hermitian():
    rng = np.random.default_rng(11)
    space = HilbertSpace(fock_cutoff=3)
    for _ in range(10):
        for drive in ("atom", "cavity"):
            p = random_params(rng, drive)
            for build in (hamiltonian_full, hamiltonian_reduced, drive_hamiltonian):
                h = build(space, p)
                assert np.max(np.abs(h - h.conj().T)) < 1e-12


def test_all_zero_parameters_give_zero_hamiltonian():
    space = HilbertSpace(fock_cutoff=2)
    p = SystemParams(delta_a=0, delta_c=0, g=0, V=0, epsilon=0, gamma=0, drive="atom")
    np.testing.assert_array_equal(hamiltonian_reduced(space, p), 0.0)
    np.testing.assert_array_equal(hamiltonian_full(space, p), 0.0)


def test_diagonal_terms():
    space = HilbertSpace(fock_cutoff=2)
    p = SystemParams(delta_a=1.5, delta_c=0.25, g=0, V=7.0, epsilon=0, gamma=0,
                     drive="atom")
    h = hamiltonian_reduced(space, p)
    # diagonal in the bare basis when g = eps = 0
    assert np.max(np.abs(h - np.diag(np.diag(h)))) == 0.0
    idx = space.index
    assert h[idx("g", "g", 1), idx("g", "g", 1)] == pytest.approx(-0.25)
    assert h[idx("r", "g", 0), idx("r", "g", 0)] == pytest.approx(-1.5)
    # two excited atoms pick up both detunings and the interaction shift
    assert h[idx("r", "r", 2), idx("r", "r", 2)] == pytest.approx(-2 * 1.5 - 2 * 0.25 + 7.0)


def test_drive_hamiltonian_structure():
    space = HilbertSpace(fock_cutoff=2)
    a = annihilation(space)
    pc = SystemParams(0, 0, 1.0, 0, 0.3, 0, drive="cavity")
    np.testing.assert_allclose(drive_hamiltonian(space, pc), 0.3 * (a + a.conj().T))
    pa = pc.with_values(drive="atom")
    s1 = atomic_sigma(space, 1, "r", "g")
    s2 = atomic_sigma(space, 2, "r", "g")
    want = 0.3 * (s1 + s1.conj().T + s2 + s2.conj().T)
    np.testing.assert_allclose(drive_hamiltonian(space, pa), want)


def test_collective_decomposition_reassembles_coupling():
    rng = np.random.default_rng(23)
    space = HilbertSpace(fock_cutoff=2)
    for _ in range(6):
        p = random_params(rng)
        h_plus, h_minus = collective_decomposition(space, p)
        coupling = (hamiltonian_full(space, p)
                    - hamiltonian_full(space, p.with_values(g=0.0)))
        np.testing.assert_allclose(h_plus + h_minus, coupling, atol=1e-12)


def test_antisymmetric_channel_closes_at_integer_spacing():
    space = HilbertSpace(fock_cutoff=2)
    for n in range(6):
        p = SystemParams(1.0, 2.0, 3.12, 1.0, 0.1, 0.5, drive="atom", x1=0.0, x2=float(n))
        _, h_minus = collective_decomposition(space, p)
        assert np.linalg.norm(h_minus) == 0.0
    # half-integer spacing instead closes the symmetric channel
    p = SystemParams(1.0, 2.0, 3.12, 1.0, 0.1, 0.5, drive="atom", x1=0.0, x2=0.5)
    h_plus, h_minus = collective_decomposition(space, p)
    assert np.linalg.norm(h_plus) < 1e-12
    assert np.linalg.norm(h_minus) > 1.0


def test_reduced_equals_full_at_antinodes():
    space = HilbertSpace(fock_cutoff=3)
    p = SystemParams(0.7, -1.2, 2.0, 3.0, 0.2, 0.1, drive="cavity", x1=0.0, x2=1.0)
    np.testing.assert_allclose(hamiltonian_full(space, p),
                               hamiltonian_reduced(space, p), atol=1e-12)


def test_couplings_follow_mode_profile():
    p = SystemParams(0, 0, 2.0, 0, 0, 0, drive="atom", x1=0.0, x2=0.25)
    g1, g2 = p.couplings()
    assert g1 == pytest.approx(2.0)
    assert abs(g2) < 1e-15
    p2 = p.with_values(x2=0.5)
    assert p2.couplings()[1] == pytest.approx(-2.0)


def test_effective_nonhermitian_split():
    space = HilbertSpace(fock_cutoff=2)
    p = SystemParams(1.0, -2.0, 3.12, 5.0, 0.4, 0.02, drive="atom", kappa=1.3)
    h_eff = effective_nonhermitian(space, p)
    herm = (h_eff + h_eff.conj().T) / 2
    anti = (h_eff - h_eff.conj().T) / 2j
    np.testing.assert_allclose(herm, hamiltonian_reduced(space, p), atol=1e-13)
    a = annihilation(space)
    proj = (atomic_sigma(space, 1, "r", "r") + atomic_sigma(space, 2, "r", "r"))
    want = -0.5 * p.kappa * (a.conj().T @ a) - 0.5 * p.gamma * proj
    np.testing.assert_allclose(anti, want, atol=1e-13)


def test_params_validation():
    with pytest.raises(ValueError):
        SystemParams(0, 0, -1.0, 0, 0, 0, drive="atom")
    with pytest.raises(ValueError):
        SystemParams(0, 0, 0, 0, -0.1, 0, drive="atom")
    with pytest.raises(ValueError):
        SystemParams(0, 0, 0, 0, 0, -0.1, drive="atom")
    with pytest.raises(ValueError):
        SystemParams(0, 0, 0, 0, 0, 0, drive="atom", kappa=0.0)
    with pytest.raises(ValueError):
        SystemParams(math.nan, 0, 0, 0, 0, 0, drive="atom")
    with pytest.raises(ValueError):
        SystemParams(0, 0, 0, 0, 0, 0, drive="sideways")
    p = SystemParams(0, 0, 0, 0, 0, 0, drive="cavity")
    assert p.drive is Drive.CAVITY
    assert p.kappa == 1.0


def test_with_values_returns_updated_copy():
    p = SystemParams(1, 2, 3, 4, 0.1, 0.2, drive="atom")
    q = p.with_values(delta_a=-1.0, epsilon=0.5)
    assert q.delta_a == -1.0 and q.epsilon == 0.5 and q.delta_c == 2.0
    assert p.delta_a == 1.0  # original untouched


def test_params_from_mapping_kappa_units():
    p = params_from_mapping({
        "units": "kappa", "drive": "atom",
        "delta_a": 1.95, "delta_c": 10.0, "g": 3.12, "V": 13.9,
        "epsilon": 0.4, "gamma": 1.6e-4,
    })
    assert p.g == 3.12 and p.kappa == 1.0


def test_params_from_mapping_2pi_mhz_units():
    p = params_from_mapping({
        "units": "2pi_mhz", "drive": "atom",
        "kappa": REFERENCE_KAPPA_2PI_MHZ,
        "g": REFERENCE_G_2PI_MHZ,
        "gamma": REFERENCE_GAMMA_2PI_MHZ,
        "delta_a": 25.0, "delta_c": 5.0, "V": 0.0, "epsilon": 1.0,
    })
    assert p.kappa == 1.0
    assert p.g == pytest.approx(3.12)
    assert p.gamma == pytest.approx(1.6e-4)
    assert p.delta_a == pytest.approx(10.0)
    assert p.epsilon == pytest.approx(0.4)


def test_params_from_mapping_rejections():
    base = {"drive": "atom", "delta_a": 0, "delta_c": 0, "g": 1,
            "V": 0, "epsilon": 0, "gamma": 0}
    with pytest.raises(ValueError):
        params_from_mapping({**base, "units": "hz"})
    with pytest.raises(ValueError):
        params_from_mapping({**base, "bogus": 1.0})
    with pytest.raises(ValueError):
        params_from_mapping({k: v for k, v in base.items() if k != "gamma"})
    with pytest.raises(ValueError):
        params_from_mapping({k: v for k, v in base.items() if k != "drive"})
    with pytest.raises(ValueError):
        params_from_mapping({**base, "units": "2pi_mhz"})  # needs kappa


def test_vdw_coupling_endpoints():
    v4 = rydberg_coupling_from_distance(4.0, RB87_62D32_VDW)
    v15 = rydberg_coupling_from_distance(15.0, RB87_62D32_VDW)
    assert v4 == pytest.approx(28.3651, rel=1e-3)
    assert v15 == pytest.approx(0.0102, rel=5e-3)
    # d^-6 law: doubling the distance costs a factor 64
    assert v4 / rydberg_coupling_from_distance(8.0, RB87_62D32_VDW) == pytest.approx(64.0)
    with pytest.raises(ValueError):
        rydberg_coupling_from_distance(0.0, RB87_62D32_VDW)
    with pytest.raises(ValueError):
        rydberg_coupling_from_distance(-1.0, RB87_62D32_VDW)


def test_dipole_dipole_power_law():
    pot = RydbergPotential(PotentialKind.DIPOLE_DIPOLE, 1.0)
    assert pot.power == 3
    ratio = (rydberg_coupling_from_distance(1.0, pot)
             / rydberg_coupling_from_distance(2.0, pot))
    assert ratio == pytest.approx(8.0)
