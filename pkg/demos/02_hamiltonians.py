"""Hamiltonian builders: full position-dependent model, the reduced form at a
field antinode, and the split into bright/dark collective channels."""
import numpy as np

from antibunch.model import (
    RB87_62D32_VDW,
    SystemParams,
    collective_decomposition,
    hamiltonian_full,
    hamiltonian_reduced,
    rydberg_coupling_from_distance,
)
from antibunch.qcore import HilbertSpace

space = HilbertSpace(3)
params = SystemParams(delta_a=1.95, delta_c=10.0, g=3.12, V=13.9,
                      epsilon=0.4, gamma=1.6e-4, drive="atom")

h_full = hamiltonian_full(space, params)
h_red = hamiltonian_reduced(space, params)
print("hermitian:", np.allclose(h_full, h_full.conj().T),
      np.allclose(h_red, h_red.conj().T))
print("full == reduced at default positions (antinodes):",
      np.allclose(h_full, h_red))

# Move atom 2 half a wavelength off the antinode: its coupling flips sign,
# which swaps weight between the symmetric and antisymmetric channels.
shifted = params.with_values(x2=0.5)
h_plus, h_minus = collective_decomposition(space, shifted)
print("\nat x2 = 0.5: |H_plus| =", f"{np.linalg.norm(h_plus):.4f}",
      " |H_minus| =", f"{np.linalg.norm(h_minus):.4f}")
for x2 in (0.0, 0.25, 0.5):
    hp, hm = collective_decomposition(space, params.with_values(x2=x2))
    print(f"  x2 = {x2:4.2f}: bright channel {np.linalg.norm(hp):7.4f}, "
          f"dark channel {np.linalg.norm(hm):7.4f}")

# Integer spacings put both atoms back on antinodes, so the dark channel
# closes exactly (not just numerically).
norms = [np.linalg.norm(collective_decomposition(space, params.with_values(x2=float(k)))[1])
         for k in range(4)]
print("\n|H_minus| at integer x2:", norms)

# The Rydberg interaction strength comes from the pair distance.  Values in
# units of 2*pi MHz for the 62D3/2 van der Waals curve.
print("\nV(d) for a few distances:")
for d in (3.0, 4.0, 6.0, 10.0, 15.0):
    v = rydberg_coupling_from_distance(d, RB87_62D32_VDW)
    print(f"  d = {d:5.1f} um -> V = 2pi x {v:10.5f} MHz")
