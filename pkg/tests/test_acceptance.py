"""Acceptance suite: one test per headline capability, each printing a single
PASS/FAIL line with the measured numbers.

Three checks are currently expected to fail, and are left failing on purpose;
they encode literal target bands that the implemented equations do not reach
at the stated pump strengths.  README.md ("Validation status") carries the
quantitative analysis.  The assertions are kept strict rather than loosened:
the printed measurements are the deliverable.
"""
import math
import time
from fractions import Fraction

import numpy as np

from antibunch.errors import SingularPointError
from antibunch.lindblad import build_liouvillian, g2_zero, steady_state
from antibunch.model import (
    RB87_62D32_VDW,
    SystemParams,
    collective_decomposition,
    drive_hamiltonian,
    hamiltonian_full,
    hamiltonian_reduced,
    rydberg_coupling_from_distance,
)
from antibunch.qcore import HilbertSpace
from antibunch.sweep import figure_preset, run_sweep
from antibunch.weakdrive import (
    g2_analytic_atom_driven,
    g2_numerator_factors_atom_driven,
    optimal_g_cavity_driven,
)

COMBINED_OPTIMUM = SystemParams(delta_a=1.95, delta_c=10.0, g=3.12, V=13.9,
                                epsilon=0.4, gamma=1.6e-4, drive="atom")


def _report(n, name, ok, details):
    print(f"criterion {n} ({name}): {'PASS' if ok else 'FAIL'} - {details}")
    return details


def _numeric_g2(params, cutoff):
    space = HilbertSpace(cutoff)
    return g2_zero(space, steady_state(build_liouvillian(space, params)))


def test_criterion_1_combined_blockade_optimum():
    t0 = time.time()
    g2 = _numeric_g2(COMBINED_OPTIMUM, cutoff=5)
    elapsed = time.time() - t0
    in_band = 1e-6 <= g2 <= 1e-5
    fast = elapsed < 10.0
    details = (f"numeric g2(0) = {g2:.6e}, target band [1e-06, 1e-05], "
               f"runtime {elapsed:.2f} s")
    _report(1, "combined-blockade optimum", in_band and fast, details)
    assert fast, details
    assert in_band, details


def test_criterion_2_cavity_driven_dip():
    t0 = time.time()
    res = run_sweep(figure_preset("fig8a"))
    elapsed = time.time() - t0
    g2 = res.observables["g2_0_numeric"]
    gs = res.axis1_values
    assert res.axis2_values[0] == 0.0 and res.axis2_values[-1] == 0.3

    g_root = optimal_g_cavity_driven(0.01, 1.0, 1.0)
    i_min = int(np.argmin(g2[:, 0]))
    location_ok = abs(gs[i_min] - g_root) <= 0.02
    depth = g2[i_min, 0]
    depth_v3 = float(g2[:, -1].min())
    depth_ok = depth * 1e3 <= depth_v3
    fast = elapsed < 30.0
    details = (f"min at g = {gs[i_min]:.3f} (root {g_root:.5f}), "
               f"depth {depth:.3e} vs {depth_v3:.3e} at V=0.3 "
               f"(ratio {depth_v3 / depth:.0f}, need >= 1000), "
               f"runtime {elapsed:.1f} s")
    _report(2, "cavity-driven dip", location_ok and depth_ok and fast, details)
    assert fast, details
    assert location_ok, details
    assert depth_ok, details


def test_criterion_3_optimal_zero_surfaces():
    # exact-arithmetic clause: the factored numerator vanishes identically
    rng = np.random.default_rng(12)
    algebra_ok = True
    for _ in range(100):
        dc = Fraction(int(rng.integers(1, 500)), int(rng.integers(1, 50)))
        if rng.random() < 0.5:
            dc = -dc
        V = Fraction(int(rng.integers(0, 700)), int(rng.integers(1, 50)))
        g = Fraction(int(rng.integers(1, 150)), int(rng.integers(1, 40)))
        _, f2 = g2_numerator_factors_atom_driven((V - dc) / 2, dc, V, g)
        f1, _ = g2_numerator_factors_atom_driven(2 * g ** 2 / dc, dc, V, g)
        algebra_ok = algebra_ok and f1 == 0 and f2 == 0

    # numeric clause: master-equation g2(0) on the interference surface
    rng = np.random.default_rng(333)
    worst = 0.0
    worst_at = None
    for _ in range(12):
        dc = float(rng.uniform(5, 15) * rng.choice([-1, 1]))
        V = float(rng.uniform(0, 20))
        g = float(rng.uniform(2, 4))
        p = SystemParams((V - dc) / 2, dc, g, V, 0.01, 1.6e-4, drive="atom")
        g2 = _numeric_g2(p, cutoff=5)
        if g2 > worst:
            worst, worst_at = g2, (dc, V, g)
    numeric_ok = worst < 1e-3
    details = (f"factored numerator exactly zero on both surfaces: {algebra_ok}; "
               f"numeric worst g2(0) on interference surface = {worst:.3e} "
               f"at (delta_c, V, g) = {worst_at}, need < 1e-3")
    _report(3, "optimal zero surfaces", algebra_ok and numeric_ok, details)
    assert algebra_ok, details
    assert numeric_ok, details


def test_criterion_4_analytic_numeric_agreement():
    rng = np.random.default_rng(20260815)
    worst = 0.0
    n = 0
    while n < 20:
        dc = float(rng.uniform(5, 12) * rng.choice([-1, 1]))
        da = float(rng.uniform(5, 12) * rng.choice([-1, 1]))
        V = float(rng.uniform(0, 10))
        g = float(rng.uniform(1, 4))
        p = SystemParams(da, dc, g, V, 0.005, 1.6e-4, drive="atom")
        try:
            analytic = g2_analytic_atom_driven(p)
        except SingularPointError:
            continue   # resonance pole; draw again
        numeric = _numeric_g2(p, cutoff=5)
        worst = max(worst, abs(numeric - analytic) / analytic)
        n += 1
    ok = worst < 0.05
    details = f"20 large-detuning draws, worst relative difference {worst:.2e} (< 5%)"
    _report(4, "analytic-numeric agreement", ok, details)
    assert ok, details


def test_criterion_5_coherent_light_control():
    rng = np.random.default_rng(77)
    space = HilbertSpace(8)
    worst = 0.0
    for _ in range(5):
        p = SystemParams(float(rng.uniform(-10, 10)), float(rng.uniform(-10, 10)),
                         0.0, 0.0, 0.05, float(rng.uniform(0.1, 1.0)),
                         drive="cavity")
        g2 = g2_zero(space, steady_state(build_liouvillian(space, p)))
        worst = max(worst, abs(g2 - 1.0))
    ok = worst < 1e-3
    details = f"g = 0 cavity drive, worst |g2(0) - 1| = {worst:.2e} over 5 draws"
    _report(5, "coherent-light control", ok, details)
    assert ok, details


def _dominant_period(tau, vals):
    v = vals - vals.mean()
    amps = np.abs(np.fft.rfft(v))
    freqs = np.fft.rfftfreq(tau.size, d=tau[1] - tau[0])
    return 1.0 / freqs[1 + int(np.argmax(amps[1:]))]


def test_criterion_6_delayed_correlation():
    traces = {}
    ok = True
    notes = []
    for name in ("fig9a", "fig9b"):
        res = run_sweep(figure_preset(name))
        tau = res.axis1_values
        vals = res.observables["g2_tau"][:, 0]
        traces[name] = (tau, vals)
        start_small = vals[0] < 1e-2
        antibunched = bool(np.all(vals[1:] > vals[0]))
        tail = float(np.max(np.abs(vals[tau >= 35.0] - 1.0)))
        ok = ok and start_small and antibunched and tail < 0.05
        notes.append(f"{name}: g2(0)={vals[0]:.2e}, g2(tau)>g2(0) for tau>0: "
                     f"{antibunched}, tail max|g2-1|={tail:.3f}")
    p_a = _dominant_period(*traces["fig9a"])
    p_b = _dominant_period(*traces["fig9b"])
    periods_differ = max(p_a, p_b) / min(p_a, p_b) > 1.5
    ok = ok and periods_differ
    notes.append(f"oscillation periods {p_a:.2f} vs {p_b:.2f} (pump-dependent)")
    details = "; ".join(notes)
    _report(6, "delayed correlation", ok, details)
    assert ok, details


def test_criterion_7_structural_invariants():
    rng = np.random.default_rng(2)
    space = HilbertSpace(3)
    herm_dev = 0.0
    for _ in range(10):
        p = SystemParams(rng.uniform(-10, 10), rng.uniform(-10, 10),
                         rng.uniform(0, 4), rng.uniform(0, 20),
                         rng.uniform(0, 0.5), rng.uniform(0, 1),
                         drive=("atom", "cavity")[int(rng.integers(2))],
                         x1=rng.uniform(-1, 1), x2=rng.uniform(-1, 1))
        for build in (hamiltonian_full, hamiltonian_reduced, drive_hamiltonian):
            h = build(space, p)
            herm_dev = max(herm_dev, float(np.max(np.abs(h - h.conj().T))))
    herm_ok = herm_dev < 1e-12

    hm_norm = 0.0
    for n in range(6):
        p = SystemParams(1.0, 2.0, 3.12, 1.0, 0.1, 0.5, drive="atom",
                         x1=0.0, x2=float(n))
        hm_norm = max(hm_norm, float(np.linalg.norm(collective_decomposition(space, p)[1])))
    hm_ok = hm_norm == 0.0

    spectrum_ok = True
    trace_ok = True
    for p in (COMBINED_OPTIMUM.with_values(epsilon=0.1, gamma=0.05),
              SystemParams(0.0, 0.0, 0.71, 0.0, 0.01, 1.0, drive="cavity")):
        liouv = build_liouvillian(space, p)
        d = space.total_dim
        tr = np.zeros(d * d, dtype=complex)
        tr[np.arange(d) * (d + 1)] = 1.0
        trace_ok = trace_ok and float(np.max(np.abs(tr @ liouv.data))) < 1e-10
        eig = np.linalg.eigvals(liouv.data)
        near_zero = np.abs(eig) < 1e-10
        spectrum_ok = (spectrum_ok and int(near_zero.sum()) == 1
                       and bool(np.all(eig[~near_zero].real < 0)))

    pos_ok = True
    trunc_worst = 0.0
    for p in (COMBINED_OPTIMUM,
              SystemParams(0.0, 0.0, 0.71, 0.0, 0.01, 1.0, drive="cavity")):
        vals = {}
        for cutoff in (5, 7):
            sp = HilbertSpace(cutoff)
            rho = steady_state(build_liouvillian(sp, p))
            pos_ok = pos_ok and float(np.linalg.eigvalsh(rho).min()) >= -1e-8
            vals[cutoff] = g2_zero(sp, rho)
        trunc_worst = max(trunc_worst, abs(vals[7] - vals[5]) / abs(vals[7]))
    trunc_ok = trunc_worst < 0.01

    ok = herm_ok and hm_ok and trace_ok and spectrum_ok and pos_ok and trunc_ok
    details = (f"hermiticity dev {herm_dev:.1e}; |H_minus| at integer spacings "
               f"{hm_norm:.1e}; trace-preserving and left-half-plane spectrum: "
               f"{trace_ok and spectrum_ok}; steady states positive: {pos_ok}; "
               f"truncation drift {trunc_worst:.1e} (< 1%)")
    _report(7, "structural invariants", ok, details)
    assert ok, details


def test_criterion_8_vdw_endpoints():
    v4 = rydberg_coupling_from_distance(4.0, RB87_62D32_VDW)
    v15 = rydberg_coupling_from_distance(15.0, RB87_62D32_VDW)
    close_ok = abs(v4 - 28.33) / 28.33 < 0.01
    far_ok = abs(v15 - 0.0102) / 0.0102 < 0.05
    details = (f"V(4 um) = 2pi x {v4:.4f} MHz (target 28.33, within 1%); "
               f"V(15 um) = 2pi x {v15:.5f} MHz (target 0.0102, within 5%)")
    _report(8, "van der Waals endpoints", close_ok and far_ok, details)
    assert close_ok, details
    assert far_ok, details
