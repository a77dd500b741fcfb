"""Photon antibunching in a driven cavity coupled to two Rydberg-blockaded atoms.

The package has four layers:

* :mod:`antibunch.qcore` - Hilbert-space bookkeeping and operators for
  two two-level atoms plus a truncated cavity mode.
* :mod:`antibunch.model` - system parameters, Hamiltonians, the collective
  mode decomposition, and unit helpers (including the van der Waals
  distance-to-coupling conversion).
* :mod:`antibunch.weakdrive` - closed-form weak-drive amplitudes, the
  analytic g2(0), and the optimal-detuning formulas for both blockade
  mechanisms.
* :mod:`antibunch.lindblad` - exact master-equation numerics: steady states,
  photon statistics, and delayed correlations g2(tau).

:mod:`antibunch.sweep` and :mod:`antibunch.cli` wrap these in parameter-grid
sweeps with deterministic CSV/JSON export (`antibunch sweep` on the command
line).
"""

__version__ = "0.1.0"

from .errors import (AntibunchError, ConfigError, ConvergenceError,
                     DegenerateSteadyStateError, IllConditionedError,
                     SingularPointError, UndefinedCorrelationError)
from .qcore import HilbertSpace, annihilation, atomic_sigma, embed, expect, number_op
from .model import (Drive, RydbergPotential, PotentialKind, SystemParams,
                    RB87_62D32_VDW, collective_decomposition,
                    drive_hamiltonian, effective_nonhermitian,
                    hamiltonian_full, hamiltonian_reduced, params_from_mapping,
                    rydberg_coupling_from_distance)
from .weakdrive import (AmplitudeSet, OptimalDetunings, g2_analytic_atom_driven,
                        g2_analytic_cavity_driven, g2_from_amplitudes,
                        g2_numerator_factors_atom_driven, integrate_amplitudes,
                        optimal_detunings_atom_driven, optimal_g_cavity_driven,
                        steady_amplitudes_atom_driven,
                        steady_amplitudes_cavity_driven,
                        upb_pb_intersection_curve)
from .lindblad import (ConvergedG2, CorrelationTrace, Liouvillian,
                       build_liouvillian, g2_tau, g2_zero, g2_zero_converged,
                       mean_photon, propagate, steady_state)
from .sweep import (Axis, Constraint, GridResult, SweepSpec, export,
                    figure_preset, load_config, run_sweep)

__all__ = [
    "__version__",
    # errors
    "AntibunchError", "ConfigError", "ConvergenceError",
    "DegenerateSteadyStateError", "IllConditionedError", "SingularPointError",
    "UndefinedCorrelationError",
    # quantum core
    "HilbertSpace", "annihilation", "atomic_sigma", "embed", "expect", "number_op",
    # model
    "Drive", "RydbergPotential", "PotentialKind", "SystemParams", "RB87_62D32_VDW",
    "collective_decomposition", "drive_hamiltonian", "effective_nonhermitian",
    "hamiltonian_full", "hamiltonian_reduced", "params_from_mapping",
    "rydberg_coupling_from_distance",
    # weak drive
    "AmplitudeSet", "OptimalDetunings", "g2_analytic_atom_driven",
    "g2_analytic_cavity_driven", "g2_from_amplitudes",
    "g2_numerator_factors_atom_driven", "integrate_amplitudes",
    "optimal_detunings_atom_driven", "optimal_g_cavity_driven",
    "steady_amplitudes_atom_driven", "steady_amplitudes_cavity_driven",
    "upb_pb_intersection_curve",
    # master equation
    "ConvergedG2", "CorrelationTrace", "Liouvillian", "build_liouvillian",
    "g2_tau", "g2_zero", "g2_zero_converged", "mean_photon", "propagate",
    "steady_state",
    # sweeps
    "Axis", "Constraint", "GridResult", "SweepSpec", "export", "figure_preset",
    "load_config", "run_sweep",
]
