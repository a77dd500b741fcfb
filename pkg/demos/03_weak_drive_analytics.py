"""Closed-form photon statistics in the weak-drive regime.

Truncating the state at two excitations gives linear equations for the
stationary amplitudes; their ratio fixes g2(0) without ever building a
density matrix.  The same algebra locates the detunings where the two-photon
amplitude interferes to zero.
"""
from antibunch.model import SystemParams
from antibunch.weakdrive import (
    g2_analytic_atom_driven,
    g2_from_amplitudes,
    optimal_detunings_atom_driven,
    optimal_g_cavity_driven,
    steady_amplitudes_atom_driven,
    steady_amplitudes_cavity_driven,
    upb_pb_intersection_curve,
)

params = SystemParams(delta_a=1.95, delta_c=10.0, g=3.12, V=13.9,
                      epsilon=0.01, gamma=1.6e-4, drive="atom")

amps = steady_amplitudes_atom_driven(params)
print("stationary amplitudes at the working point:")
print(f"  c_gg1 = {amps.c_gg1:.6e}")
print(f"  c_gg2 = {amps.c_gg2:.6e}")
print(f"  c_rr0 = {amps.c_rr0:.6e}")
print(f"  hierarchy holds: {amps.hierarchy_ok()}")
print(f"  g2(0) from amplitudes = {g2_from_amplitudes(amps):.6e}")
print(f"  g2(0), pump-free form = {g2_analytic_atom_driven(params):.6e}")

# Two independent ways to suppress the two-photon amplitude:
#   upb: destructive interference of the direct and exchange pathways
#   pb : the Rydberg-shifted two-excitation ladder is pushed off resonance
opt = optimal_detunings_atom_driven(delta_c=10.0, V=13.9, g=3.12)
print("\noptimal laser detunings at (delta_c=10, V=13.9, g=3.12):")
print(f"  interference condition : delta_a = {opt.upb:.5f}")
print(f"  anharmonicity condition: delta_a = {opt.pb:.5f}")

v_star = upb_pb_intersection_curve(10.0, 3.12)
print(f"both conditions coincide at V = {v_star:.5f}")

print("\ng2(0) walking delta_a through the interference point:")
for da in (1.0, 1.5, 1.95, 2.4, 3.0):
    g2 = g2_analytic_atom_driven(params.with_values(delta_a=da))
    marker = "  <- optimal" if abs(da - opt.upb) < 1e-9 else ""
    print(f"  delta_a = {da:4.2f}: g2 = {g2:.3e}{marker}")

# Cavity drive at zero detuning: the dip sits at a g set by pump and decay.
cav = SystemParams(0.0, 0.0, 0.5, 0.0, 0.01, 1.0, drive="cavity")
g_star = optimal_g_cavity_driven(epsilon=0.01, kappa=1.0, gamma=1.0)
print(f"\ncavity drive, V = 0: two-photon amplitude zero at g = {g_star:.5f}")
for g in (0.5, g_star, 1.0):
    a = steady_amplitudes_cavity_driven(cav.with_values(g=g))
    print(f"  g = {g:.5f}: |c_gg2| = {abs(a.c_gg2):.3e}, g2 = {g2_from_amplitudes(a):.3e}")
