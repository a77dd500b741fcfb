"""Weak-drive amplitude expansion and closed-form photon statistics.

Under weak pumping the system stays in the six lowest states
{|gg,0>, |gg,1>, |gg,2>, |+,0>, |+,1>, |rr,0>}, where |+> is the symmetric
collective atomic state.  With c_gg0 pinned to 1, the non-Hermitian evolution
closes on five amplitudes ordered (c_gg1, c_gg2, c_p0, c_p1, c_rr0).

Atom drive: the stationary amplitudes follow the excitation hierarchy
c_gg0 >> {c_gg1, c_p0} >> {c_gg2, c_p1, c_rr0}, solved order by order:

    c_gg1 = -8 g eps / M
    c_gg2 = 16 sqrt2 g^2 eps^2 B / (M Q)

    M = 8 g^2 - 2i kappa da - 2i gamma dc - 4 da dc + kappa gamma
    B = kappa + 2 gamma - 2i (2 da + dc - V)

and Q the second-order denominator polynomial below.  In the large-detuning
limit |B|^2 |M|^2 -> 64 (2g^2 - da dc)^2 (2 da + dc - V)^2, whose factors give
the two optimal antibunching surfaces: da = (V - dc)/2 (pathway interference)
and da = 2 g^2 / dc (level anharmonicity).

Cavity drive (da = dc = 0): the stationary five-state system is solved exactly;
its two-photon amplitude vanishes on V = 0, 4 eps^2 - 4 g^2 + kappa gamma
+ gamma^2 = 0, giving the optimal coupling g = sqrt(eps^2 + (kappa gamma
+ gamma^2)/4).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConvergenceError, SingularPointError, UndefinedCorrelationError
from .model import Drive, SystemParams

SQRT2 = math.sqrt(2.0)

# a denominator counts as a pole when it is this small relative to the sum of
# the magnitudes of its own terms
_SINGULAR_RTOL = 1e-12


@dataclass(frozen=True)
class AmplitudeSet:
    """Stationary (or instantaneous) amplitudes of the six-state expansion."""

    c_gg0: complex
    c_gg1: complex
    c_gg2: complex
    c_p0: complex
    c_p1: complex
    c_rr0: complex

    def hierarchy_ok(self, margin: float = 1.0) -> bool:
        """True when each excitation order is no larger than the one below it."""
        zeroth = abs(self.c_gg0)
        first = max(abs(self.c_gg1), abs(self.c_p0))
        second = max(abs(self.c_gg2), abs(self.c_p1), abs(self.c_rr0))
        return first <= margin * zeroth and second <= margin * max(first, 1e-300)


def _require_drive(params: SystemParams, drive: Drive) -> None:
    if params.drive is not drive:
        raise ValueError(f"expected {drive.value}-driven parameters, got {params.drive.value}")


def _require_zero_detunings(params: SystemParams) -> None:
    scale = max(params.kappa, params.g, params.gamma, 1e-30)
    if abs(params.delta_a) > 1e-12 * scale or abs(params.delta_c) > 1e-12 * scale:
        raise ValueError("cavity-driven closed forms hold at delta_a = delta_c = 0; "
                         f"got delta_a={params.delta_a}, delta_c={params.delta_c}")


def _checked(value: complex, terms: tuple, what: str) -> complex:
    scale = sum(abs(t) for t in terms)
    if abs(value) <= _SINGULAR_RTOL * scale or scale == 0.0:
        raise SingularPointError(f"{what} vanishes at this parameter point")
    return value


def first_order_denominator(params: SystemParams) -> complex:
    """M; its zeros are the poles of the one-excitation amplitudes."""
    da, dc, V = params.delta_a, params.delta_c, params.V
    g, k, y = params.g, params.kappa, params.gamma
    terms = (8 * g**2, -2j * k * da, -2j * y * dc, -4 * da * dc, k * y)
    return _checked(sum(terms), terms, "first-order denominator M")


def second_order_denominator(params: SystemParams) -> complex:
    """Q; its zeros are the poles of the two-excitation amplitudes.

    Q equals -2i times the determinant of the stationary two-excitation block,
    collected here as an explicit polynomial.
    """
    da, dc, V = params.delta_a, params.delta_c, params.V
    g, k, y = params.g, params.kappa, params.gamma
    terms = (
        4 * g**2 * k, 8 * g**2 * y, k**2 * y, k * y**2,
        -4 * k * da**2, -8 * da * dc * (k + y), 2 * k * da * V,
        -4 * y * dc**2, 2 * dc * V * (2 * k + y),
        1j * (8 * da**2 * dc), 1j * (8 * da * dc**2), -1j * (4 * da * dc * V),
        -1j * (16 * g**2 * da), -1j * (2 * k**2 * da), -1j * (4 * k * y * da),
        -1j * (4 * dc**2 * V), -1j * (8 * g**2 * dc), -1j * (4 * k * y * dc),
        -1j * (2 * y**2 * dc), 1j * (8 * g**2 * V), 1j * (k**2 * V), 1j * (k * y * V),
    )
    return _checked(sum(terms), terms, "second-order denominator Q")


def interference_bracket(params: SystemParams) -> complex:
    """B = kappa + 2 gamma - 2i (2 delta_a + delta_c - V), the numerator of c_gg2."""
    return (params.kappa + 2 * params.gamma
            - 2j * (2 * params.delta_a + params.delta_c - params.V))


def steady_amplitudes_atom_driven(params: SystemParams) -> AmplitudeSet:
    """Stationary amplitudes of the atom-driven hierarchy, order by order.

    First order gives (c_gg1, c_p0); second order is sourced by them and gives
    (c_gg2, c_p1, c_rr0) by back-substitution.
    """
    _require_drive(params, Drive.ATOM)
    da, dc, V = params.delta_a, params.delta_c, params.V
    g, k, y, eps = params.g, params.kappa, params.gamma, params.epsilon

    m = first_order_denominator(params)
    c_gg1 = -8 * g * eps / m
    c_p0 = -4 * SQRT2 * eps * (dc + 0.5j * k) / m

    q = second_order_denominator(params)
    b = interference_bracket(params)
    c_gg2 = 16 * SQRT2 * g**2 * eps**2 * b / (m * q)
    c_p1 = 8 * SQRT2 * g * eps**2 * (2 * dc + 1j * k) * b / (m * q)
    rr_den = _checked(2 * da - V + 1j * y, (2 * da, V, y), "two-atom resonance denominator")
    c_rr0 = (SQRT2 * g * c_p1 + SQRT2 * eps * c_p0) / rr_den
    return AmplitudeSet(1.0, c_gg1, c_gg2, c_p0, c_p1, c_rr0)


def _cavity_system(params: SystemParams) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient matrix F and source s of the cavity-driven stationary
    relations F y + s = 0, y = (c_gg1, c_gg2, c_p0, c_p1, c_rr0)."""
    g, k, y_, eps, V = params.g, params.kappa, params.gamma, params.epsilon, params.V
    f = np.array([
        [-0.5j * k, SQRT2 * eps, SQRT2 * g, 0, 0],
        [SQRT2 * eps, -1j * k, 0, 2 * g, 0],
        [SQRT2 * g, 0, -0.5j * y_, eps, 0],
        [0, 2 * g, eps, -0.5j * (y_ + k), SQRT2 * g],
        [0, 0, 0, SQRT2 * g, V - 1j * y_],
    ], dtype=complex)
    s = np.array([eps, 0, 0, 0, 0], dtype=complex)
    return f, s


def steady_amplitudes_cavity_driven(params: SystemParams) -> AmplitudeSet:
    """Exact stationary amplitudes of the cavity-driven five-state system."""
    _require_drive(params, Drive.CAVITY)
    _require_zero_detunings(params)
    f, s = _cavity_system(params)
    try:
        y = np.linalg.solve(f, -s)
    except np.linalg.LinAlgError as exc:
        raise SingularPointError(f"stationary system is singular: {exc}") from exc
    return AmplitudeSet(1.0, *y)


def g2_from_amplitudes(amps: AmplitudeSet) -> float:
    """g2(0) of the truncated expansion: 2 |c_gg2|^2 / |c_gg1|^4."""
    c1 = abs(amps.c_gg1)
    if c1 < 1e-150:
        raise UndefinedCorrelationError("one-photon amplitude vanishes; g2 is 0/0")
    return 2.0 * abs(amps.c_gg2) ** 2 / c1**4


def g2_analytic_atom_driven(params: SystemParams) -> float:
    """Closed-form g2(0) = |B|^2 |M|^2 / (4 |Q|^2) for the atom-driven scheme.

    The pump amplitude cancels exactly, but a nonzero pump and coupling are
    required for the one-photon amplitude to exist at all.
    """
    _require_drive(params, Drive.ATOM)
    if params.g == 0.0 or params.epsilon == 0.0:
        raise UndefinedCorrelationError("no cavity field at g = 0 or epsilon = 0")
    m = first_order_denominator(params)
    q = second_order_denominator(params)
    b = interference_bracket(params)
    return abs(b) ** 2 * abs(m) ** 2 / (4.0 * abs(q) ** 2)


def g2_analytic_cavity_driven(params: SystemParams) -> float:
    """g2(0) from the exact stationary cavity-driven amplitudes."""
    if params.epsilon == 0.0:
        raise UndefinedCorrelationError("no cavity field at epsilon = 0")
    return g2_from_amplitudes(steady_amplitudes_cavity_driven(params))


def g2_numerator_factors_atom_driven(delta_a: float, delta_c: float, V: float,
                                     g: float) -> tuple[float, float]:
    """Factors (2g^2 - da dc, 2 da + dc - V) of the large-detuning g2 numerator
    16 f1^2 f2^2; each optimal surface zeroes one factor.

    Integer coefficients only, so exact inputs (e.g. Fraction) stay exact."""
    return 2 * g**2 - delta_a * delta_c, 2 * delta_a + delta_c - V


class OptimalDetunings(NamedTuple):
    upb: float   # pathway-interference condition delta_a = (V - delta_c)/2
    pb: float    # anharmonicity condition delta_a = 2 g^2 / delta_c


def optimal_detunings_atom_driven(delta_c: float, V: float, g: float) -> OptimalDetunings:
    """Laser-atom detunings that zero each numerator factor at fixed (delta_c, V, g)."""
    if delta_c == 0.0:
        raise ValueError("anharmonicity branch diverges at delta_c = 0")
    return OptimalDetunings(upb=0.5 * (V - delta_c), pb=2.0 * g**2 / delta_c)


def upb_pb_intersection_curve(delta_c, g):
    """Rydberg coupling V = delta_c + 4 g^2 / delta_c where both optimal
    surfaces meet; accepts scalars or arrays."""
    delta_c = np.asarray(delta_c, dtype=float)
    if np.any(delta_c == 0.0):
        raise ValueError("curve diverges at delta_c = 0")
    out = delta_c + 4.0 * np.asarray(g, dtype=float) ** 2 / delta_c
    return float(out) if out.ndim == 0 else out


def optimal_g_cavity_driven(epsilon: float, kappa: float, gamma: float) -> float:
    """Coupling that zeroes the cavity-driven two-photon amplitude at V = 0:
    g = sqrt(eps^2 + (kappa gamma + gamma^2)/4)."""
    if epsilon < 0 or kappa <= 0 or gamma < 0:
        raise ValueError("need epsilon >= 0, kappa > 0, gamma >= 0")
    return math.sqrt(epsilon**2 + 0.25 * (kappa * gamma + gamma**2))


def _atom_system(params: SystemParams) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient matrix F and source s of the full atom-driven relations
    i dy/dt = F y + s, y = (c_gg1, c_gg2, c_p0, c_p1, c_rr0)."""
    da, dc, V = params.delta_a, params.delta_c, params.V
    g, k, y_, eps = params.g, params.kappa, params.gamma, params.epsilon
    f = np.array([
        [-(dc + 0.5j * k), 0, SQRT2 * g, SQRT2 * eps, 0],
        [0, -(2 * dc + 1j * k), 0, 2 * g, 0],
        [SQRT2 * g, 0, -(da + 0.5j * y_), 0, SQRT2 * eps],
        [SQRT2 * eps, 2 * g, 0, -(da + dc + 0.5j * (y_ + k)), SQRT2 * g],
        [0, 0, SQRT2 * eps, SQRT2 * g, -2 * da + V - 1j * y_],
    ], dtype=complex)
    s = np.array([0, 0, SQRT2 * eps, 0, 0], dtype=complex)
    return f, s


def integrate_amplitudes(params: SystemParams, t_final: float,
                         dt: float | None = None) -> AmplitudeSet:
    """Evolve the five amplitudes from vacuum to ``t_final`` under the full
    six-state equations of motion (c_gg0 held at 1).

    Raises ConvergenceError when the end point is not stationary to a relative
    rate of change below 1e-8 per unit time.
    """
    if t_final <= 0:
        raise ValueError(f"t_final must be positive, got {t_final}")
    if params.drive is Drive.ATOM:
        f, s = _atom_system(params)
    else:
        _require_zero_detunings(params)
        f, s = _cavity_system(params)

    def rhs(_t, y):
        return -1j * (f @ y + s)

    sol = solve_ivp(rhs, (0.0, t_final), np.zeros(5, dtype=complex),
                    method="DOP853", rtol=1e-10, atol=1e-13,
                    max_step=dt if dt is not None else np.inf)
    if not sol.success:
        raise ConvergenceError(f"integrator failed: {sol.message}", residual=math.inf)
    y = sol.y[:, -1]
    rate = float(np.linalg.norm(rhs(t_final, y)))
    residual = rate / max(float(np.linalg.norm(y)), 1e-300)
    if residual >= 1e-8:
        raise ConvergenceError(
            f"amplitudes still changing at t_final={t_final} "
            f"(relative rate {residual:.2e} per unit time)", residual=residual)
    return AmplitudeSet(1.0, *y)


__all__ = [
    "AmplitudeSet", "OptimalDetunings",
    "first_order_denominator", "second_order_denominator", "interference_bracket",
    "steady_amplitudes_atom_driven", "steady_amplitudes_cavity_driven",
    "g2_from_amplitudes", "g2_analytic_atom_driven", "g2_analytic_cavity_driven",
    "g2_numerator_factors_atom_driven", "optimal_detunings_atom_driven",
    "upb_pb_intersection_curve", "optimal_g_cavity_driven", "integrate_amplitudes",
]
