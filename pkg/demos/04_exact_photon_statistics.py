"""Steady state of the full master equation and its photon statistics.

The Liouvillian is a dense superoperator; the steady state comes from a
bordered linear solve with the trace condition replacing one row.  g2(0)
needs no time evolution, only steady-state moments.
"""
import numpy as np

from antibunch.lindblad import (
    build_liouvillian,
    g2_zero,
    g2_zero_converged,
    mean_photon,
    steady_state,
)
from antibunch.model import SystemParams
from antibunch.qcore import HilbertSpace, assert_density_matrix
from antibunch.weakdrive import g2_analytic_atom_driven

params = SystemParams(delta_a=1.95, delta_c=10.0, g=3.12, V=13.9,
                      epsilon=0.4, gamma=1.6e-4, drive="atom")

space = HilbertSpace(5)
liouv = build_liouvillian(space, params)
print(f"superoperator is {liouv.data.shape[0]} x {liouv.data.shape[1]}")

rho = steady_state(liouv, check_kernel=True)
assert_density_matrix(rho)
print(f"steady state: trace = {np.trace(rho).real:.12f}, "
      f"min eigenvalue = {np.linalg.eigvalsh(rho).min():.2e}")
print(f"mean photon number = {mean_photon(space, rho):.6e}")
print(f"g2(0) = {g2_zero(space, rho):.6e}")

# At strong pumping the weak-drive formula is only a guide; reducing epsilon
# walks the exact answer onto the analytic curve.
print("\npump dependence vs the weak-drive closed form:")
print(f"  analytic limit: {g2_analytic_atom_driven(params):.4e}")
for eps in (0.4, 0.2, 0.1, 0.05, 0.01):
    p = params.with_values(epsilon=eps)
    sp = HilbertSpace(5)
    val = g2_zero(sp, steady_state(build_liouvillian(sp, p)))
    print(f"  epsilon = {eps:4.2f}: g2(0) = {val:.4e}")

# The cutoff escalation loop certifies that truncation is converged.
res = g2_zero_converged(params, rel_tol=1e-6)
print(f"\nconverged g2(0) = {res.value:.6e} at cutoff {res.cutoff} "
      f"(converged: {res.converged}, nbar = {res.mean_photon:.4e})")
