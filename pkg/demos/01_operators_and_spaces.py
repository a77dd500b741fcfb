"""Tour of the composite Hilbert space and the operator constructors.

Two two-level atoms (ground g, Rydberg r) share a cavity mode truncated at a
finite photon number.  Ordering is atom1 x atom2 x cavity.
"""
import numpy as np

from antibunch.qcore import (
    SLOT_CAVITY,
    HilbertSpace,
    annihilation,
    atomic_sigma,
    embed,
    expect,
    number_op,
)

space = HilbertSpace(fock_cutoff=3)
print(f"fock cutoff {space.fock_cutoff} -> total dimension {space.total_dim}")
print("index of |g g, n=0> :", space.index("g", "g", 0))
print("index of |r g, n=2> :", space.index("r", "g", 2))
print("index of |r r, n=3> :", space.index("r", "r", 3))

# The annihilation operator only touches the cavity slot.  Check one matrix
# element by hand: <gg,1| a |gg,2> = sqrt(2).
a = annihilation(space)
bra = space.basis_ket("g", "g", 1)
ket = space.basis_ket("g", "g", 2)
print("\n<gg,1| a |gg,2> =", (bra.conj() @ a @ ket).real, "(expect sqrt(2) =", np.sqrt(2), ")")

# a†a agrees with the dedicated number operator, and the commutator [a, a†]
# is the identity except in the top Fock level where truncation bites.
n_op = number_op(space)
print("a†a == number_op:", np.array_equal(a.conj().T @ a, n_op))
comm = a @ a.conj().T - a.conj().T @ a
defect = comm - np.eye(space.total_dim)
print("commutator defect lives only in the top Fock level:",
      np.count_nonzero(defect), "nonzero entries, each =",
      defect[space.index("g", "g", 3), space.index("g", "g", 3)].real)

# Atomic raising/lowering on either atom, embedded in the full space.
sig1 = atomic_sigma(space, 1, "g", "r")   # |g><r| on atom 1
sig2 = atomic_sigma(space, 2, "g", "r")
state = space.basis_ket("r", "r", 0)
print("\nsigma1 |rr,0> lands on |gr,0>:",
      np.argmax(np.abs(sig1 @ state)) == space.index("g", "r", 0))
print("operators on different slots commute:",
      np.allclose(sig1 @ sig2, sig2 @ sig1))

# embed() places any local matrix in a chosen slot.
parity = np.diag([(-1.0) ** k for k in range(space.fock_cutoff + 1)])
big_parity = embed(space, parity, SLOT_CAVITY)
rho = np.outer(state, state.conj())
print("\ncavity parity expectation in |rr,0>:", expect(big_parity, rho).real)
