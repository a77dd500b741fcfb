"""Grid sweeps over system parameters with deterministic CSV/JSON export.

A sweep walks a 1-D or 2-D parameter grid, evaluates the requested photon
statistics at every point with the chosen engine, and records per-point
failures as flags instead of aborting.  Axis values may bind a dependent
parameter through a constraint (affine expression or the named "pb_optimal"
form).  A "tau" axis switches to a delayed-correlation trace at fixed
parameters.
"""
from __future__ import annotations

import csv
import json
import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .errors import (ConfigError, ConvergenceError, DegenerateSteadyStateError,
                     IllConditionedError, SingularPointError,
                     UndefinedCorrelationError)
from .lindblad import (build_liouvillian, g2_tau, g2_zero, g2_zero_converged,
                       mean_photon, steady_state)
from .model import FREQUENCY_FIELDS, Drive, SystemParams, params_from_mapping
from .qcore import HilbertSpace
from .weakdrive import g2_analytic_atom_driven, g2_analytic_cavity_driven

ENGINES = ("lindblad", "weakdrive", "both")
OBSERVABLES = ("g2_0_numeric", "g2_0_analytic", "mean_photon", "g2_tau")
RATIO_COLUMN = "g2_log10_ratio"

# parameters that may label an axis; "tau" selects the correlation-trace path
AXIS_PARAMS = FREQUENCY_FIELDS + ("x1", "x2", "tau")

_ENGINE_OBSERVABLES = {
    "lindblad": ("g2_0_numeric", "mean_photon", "g2_tau"),
    "weakdrive": ("g2_0_analytic",),
    "both": ("g2_0_numeric", "g2_0_analytic", "mean_photon"),
}
_DEFAULT_OBSERVABLES = {
    "lindblad": ("g2_0_numeric",),
    "weakdrive": ("g2_0_analytic",),
    "both": ("g2_0_numeric", "g2_0_analytic"),
}

FLAG_SINGULAR = "singular"
FLAG_UNDEFINED = "undefined"
FLAG_NON_CONVERGED = "non_converged"
FLAG_NUMERICAL = "numerical_error"


@dataclass(frozen=True)
class Axis:
    """Uniform grid over one parameter."""

    param: str
    start: float
    stop: float
    steps: int

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class Constraint:
    """Binds a dependent parameter at every grid point.

    ``expression`` is an affine form over parameter names, e.g.
    "0.5*V - 0.5*delta_c"; alternatively ``form="pb_optimal"`` binds the
    photon-blockade resonance delta_a = 2 g^2 / delta_c, which is not affine.
    """

    param: str
    expression: str | None = None
    form: str | None = None


@dataclass(frozen=True)
class SweepSpec:
    base: SystemParams
    axis1: Axis
    axis2: Axis | None = None
    observables: tuple[str, ...] = ()
    engine: str = "lindblad"
    fock: int | str = "auto"
    constraints: tuple[Constraint, ...] = ()


@dataclass(frozen=True)
class GridResult:
    spec: SweepSpec
    axis1_values: np.ndarray
    axis2_values: np.ndarray | None
    observables: dict[str, np.ndarray] = field(repr=False)   # each (n1, n2)
    flags: np.ndarray = field(repr=False)                    # (n1, n2) of str
    metadata: dict = field(default_factory=dict)

    @property
    def n_points(self) -> int:
        return int(self.flags.size)

    @property
    def n_flagged(self) -> int:
        return int(np.count_nonzero(self.flags != ""))


# --- affine constraint expressions ------------------------------------------

_TERM_RE = re.compile(
    r"^(?:(?P<coef>[0-9.eE+-]+)\s*\*\s*(?P<name1>[A-Za-z_]\w*)"
    r"|(?P<name2>[A-Za-z_]\w*)\s*\*\s*(?P<coef2>[0-9.eE+-]+)"
    r"|(?P<name3>[A-Za-z_]\w*)"
    r"|(?P<const>[0-9.eE+-]+))$")


def parse_affine(expression: str) -> tuple[float, dict[str, float]]:
    """Split "c0 + c1*p1 - p2 ..." into (constant, {param: coefficient}).

    Only sums of constants and scaled parameter names are accepted; anything
    else (products of parameters, division, functions) is a config error.
    """
    text = expression.replace("-", "+-").replace("e+-", "e-").replace("E+-", "E-")
    constant = 0.0
    coeffs: dict[str, float] = {}
    for raw in text.split("+"):
        term = raw.strip()
        if not term:
            continue
        sign = 1.0
        while term.startswith("-"):
            sign = -sign
            term = term[1:].strip()
        m = _TERM_RE.match(term)
        if m is None:
            raise ConfigError(f"cannot parse affine term {raw.strip()!r} "
                              f"in constraint expression {expression!r}")
        try:
            if m.group("const") is not None:
                constant += sign * float(m.group("const"))
            elif m.group("name3") is not None:
                name = m.group("name3")
                coeffs[name] = coeffs.get(name, 0.0) + sign
            else:
                name = m.group("name1") or m.group("name2")
                coef = float(m.group("coef") or m.group("coef2"))
                coeffs[name] = coeffs.get(name, 0.0) + sign * coef
        except ValueError:
            raise ConfigError(f"bad numeric literal in term {raw.strip()!r} "
                              f"of {expression!r}") from None
    return constant, coeffs


def _apply_constraints(params: SystemParams,
                       constraints: tuple[Constraint, ...]) -> SystemParams:
    for c in constraints:
        if c.form == "pb_optimal":
            if params.delta_c == 0.0:
                raise SingularPointError("pb_optimal constraint undefined at delta_c = 0")
            value = 2.0 * params.g**2 / params.delta_c
        else:
            constant, coeffs = parse_affine(c.expression)
            value = constant + sum(coef * getattr(params, name)
                                   for name, coef in coeffs.items())
        params = params.with_values(**{c.param: value})
    return params


# --- validation ---------------------------------------------------------------

def validate_spec(spec: SweepSpec) -> None:
    """Reject a malformed spec before any computation."""
    if spec.engine not in ENGINES:
        raise ConfigError(f"engine must be one of {ENGINES}, got {spec.engine!r}")
    axes = [spec.axis1] + ([spec.axis2] if spec.axis2 is not None else [])
    for ax in axes:
        if ax.param not in AXIS_PARAMS:
            raise ConfigError(f"unknown axis parameter {ax.param!r}; "
                              f"expected one of {AXIS_PARAMS}")
        if ax.steps < 2:
            raise ConfigError(f"axis {ax.param!r} needs steps >= 2, got {ax.steps}")
        if not (math.isfinite(ax.start) and math.isfinite(ax.stop)):
            raise ConfigError(f"axis {ax.param!r} has non-finite bounds")
        if ax.stop <= ax.start:
            raise ConfigError(f"axis {ax.param!r} needs stop > start")
    if spec.axis2 is not None and spec.axis1.param == spec.axis2.param:
        raise ConfigError(f"axis parameters must be distinct, both {spec.axis1.param!r}")

    if not spec.observables:
        raise ConfigError("observables must not be empty")
    allowed = _ENGINE_OBSERVABLES[spec.engine]
    for obs in spec.observables:
        if obs not in OBSERVABLES:
            raise ConfigError(f"unknown observable {obs!r}; expected one of {OBSERVABLES}")
        if obs not in allowed:
            raise ConfigError(f"observable {obs!r} is not available with "
                              f"engine {spec.engine!r} (allowed: {allowed})")

    if isinstance(spec.fock, str):
        if spec.fock != "auto":
            raise ConfigError(f"fock must be an integer >= 2 or 'auto', got {spec.fock!r}")
    elif not isinstance(spec.fock, int) or isinstance(spec.fock, bool) or spec.fock < 2:
        raise ConfigError(f"fock must be an integer >= 2 or 'auto', got {spec.fock!r}")

    axis_params = {ax.param for ax in axes}
    for c in spec.constraints:
        if c.param not in FREQUENCY_FIELDS + ("x1", "x2"):
            raise ConfigError(f"constraint binds unknown parameter {c.param!r}")
        if c.param in axis_params:
            raise ConfigError(f"constraint on {c.param!r} collides with an axis")
        if (c.expression is None) == (c.form is None):
            raise ConfigError("constraint needs exactly one of expression/form")
        if c.form is not None and c.form != "pb_optimal":
            raise ConfigError(f"unknown constraint form {c.form!r}")
        if c.expression is not None:
            _, coeffs = parse_affine(c.expression)
            for name in coeffs:
                if name not in FREQUENCY_FIELDS + ("x1", "x2"):
                    raise ConfigError(f"constraint expression references "
                                      f"unknown parameter {name!r}")

    tau_axes = [ax for ax in axes if ax.param == "tau"]
    if tau_axes:
        if spec.axis2 is not None:
            raise ConfigError("a tau axis cannot be combined with a second axis")
        if spec.axis1.start < 0:
            raise ConfigError("tau axis must start at tau >= 0")
        if spec.observables != ("g2_tau",):
            raise ConfigError("a tau axis supports exactly the g2_tau observable")
        if spec.engine != "lindblad":
            raise ConfigError("g2_tau traces require the lindblad engine")
        if spec.constraints:
            raise ConfigError("constraints are not supported on tau traces")
    elif "g2_tau" in spec.observables:
        raise ConfigError("g2_tau requires a tau axis")

    if spec.engine in ("weakdrive", "both") and spec.base.drive is Drive.CAVITY:
        # closed forms exist only at zero detunings under cavity drive
        touched = axis_params | {c.param for c in spec.constraints}
        if ({"delta_a", "delta_c"} & touched
                or spec.base.delta_a != 0.0 or spec.base.delta_c != 0.0):
            raise ConfigError("cavity-driven weak-drive analytics require "
                              "delta_a = delta_c = 0 (fixed, not swept)")


# --- point evaluation ---------------------------------------------------------

def _point_params(spec: SweepSpec, v1: float, v2: float | None) -> SystemParams:
    updates = {spec.axis1.param: float(v1)}
    if spec.axis2 is not None:
        updates[spec.axis2.param] = float(v2)
    return _apply_constraints(spec.base.with_values(**updates), spec.constraints)


def _analytic_g2(params: SystemParams) -> float:
    if params.drive is Drive.ATOM:
        return g2_analytic_atom_driven(params)
    return g2_analytic_cavity_driven(params)


def _evaluate_point(task: tuple[SweepSpec, float, float | None]) -> tuple[dict, str]:
    """One grid point -> ({observable: value}, flag). Pure; safe to fork."""
    spec, v1, v2 = task
    values = {obs: float("nan") for obs in spec.observables}
    try:
        params = _point_params(spec, v1, v2)
        if spec.engine in ("lindblad", "both"):
            if spec.fock == "auto":
                res = g2_zero_converged(params)
                if not res.converged:
                    raise ConvergenceError(
                        f"g2 not converged in Fock cutoff at {params}", float("nan"))
                g2n, nbar = res.value, res.mean_photon
            else:
                liouv = build_liouvillian(HilbertSpace(spec.fock), params)
                rho = steady_state(liouv)
                g2n = g2_zero(liouv.space, rho)
                nbar = mean_photon(liouv.space, rho)
            if "g2_0_numeric" in values:
                values["g2_0_numeric"] = g2n
            if "mean_photon" in values:
                values["mean_photon"] = nbar
        if spec.engine in ("weakdrive", "both"):
            values["g2_0_analytic"] = _analytic_g2(params)
    except SingularPointError:
        return values, FLAG_SINGULAR
    except UndefinedCorrelationError:
        return values, FLAG_UNDEFINED
    except ConvergenceError:
        return values, FLAG_NON_CONVERGED
    except (DegenerateSteadyStateError, IllConditionedError,
            np.linalg.LinAlgError, FloatingPointError, ValueError):
        return values, FLAG_NUMERICAL
    return values, ""


def _run_tau_trace(spec: SweepSpec) -> GridResult:
    tau = spec.axis1.grid()
    columns = {"g2_tau": np.full((tau.size, 1), np.nan)}
    flags = np.full((tau.size, 1), "", dtype=object)
    try:
        cutoff = 5 if spec.fock == "auto" else spec.fock
        liouv = build_liouvillian(HilbertSpace(cutoff), spec.base)
        columns["g2_tau"][:, 0] = g2_tau(liouv, tau).values
    except UndefinedCorrelationError:
        flags[:, 0] = FLAG_UNDEFINED
    except (DegenerateSteadyStateError, IllConditionedError, np.linalg.LinAlgError):
        flags[:, 0] = FLAG_NUMERICAL
    return GridResult(spec=spec, axis1_values=tau, axis2_values=None,
                      observables=columns, flags=flags,
                      metadata=_metadata(spec))


def _metadata(spec: SweepSpec) -> dict:
    return {
        "artifact_version": __version__,
        "engine": spec.engine,
        "fock": spec.fock,
        "drive": spec.base.drive.value,
        "base_params": {f: getattr(spec.base, f) for f in FREQUENCY_FIELDS + ("x1", "x2")},
        "generated_at": datetime.now(timezone.utc).isoformat(),
    }


def run_sweep(spec: SweepSpec, jobs: int = 1) -> GridResult:
    """Evaluate every grid point; failures become flags, never aborts.

    ``jobs`` > 1 spreads points over a process pool; results are assembled in
    grid order either way, so output is independent of scheduling.
    """
    validate_spec(spec)
    if spec.axis1.param == "tau":
        return _run_tau_trace(spec)

    v1s = spec.axis1.grid()
    v2s = spec.axis2.grid() if spec.axis2 is not None else np.array([None])
    tasks = [(spec, float(v1), (None if v2 is None else float(v2)))
             for v1 in v1s for v2 in v2s]

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate_point, tasks, chunksize=8))
    else:
        results = [_evaluate_point(t) for t in tasks]

    n1, n2 = v1s.size, v2s.size
    names = list(spec.observables)
    if spec.engine == "both" and {"g2_0_numeric", "g2_0_analytic"} <= set(names):
        names.append(RATIO_COLUMN)
    columns = {name: np.full((n1, n2), np.nan) for name in names}
    flags = np.full((n1, n2), "", dtype=object)
    for k, (values, flag) in enumerate(results):
        i, j = divmod(k, n2)
        flags[i, j] = flag
        if flag:
            continue
        for obs, val in values.items():
            columns[obs][i, j] = val
        if RATIO_COLUMN in columns:
            num, ana = values["g2_0_numeric"], values["g2_0_analytic"]
            if num > 0 and ana > 0:
                columns[RATIO_COLUMN][i, j] = math.log10(ana / num)
    return GridResult(spec=spec, axis1_values=v1s,
                      axis2_values=(None if spec.axis2 is None else v2s),
                      observables=columns, flags=flags, metadata=_metadata(spec))


# --- presets -------------------------------------------------------------------

# Common caption parameters: kappa = 2pi x 2.5 MHz sets the unit; g = 2pi x 7.8 MHz
# -> 3.12 kappa; gamma = 2pi x 0.4 kHz -> 1.6e-4 kappa.  Axis ranges are artifact
# choices wide enough to contain the features the presets are named after.
_ATOM_BASE = dict(g=3.12, gamma=1.6e-4, epsilon=0.4, drive=Drive.ATOM)
_UPB_EXPR = "0.5*V - 0.5*delta_c"


def _preset_table() -> dict[str, SweepSpec]:
    def atom(**kw) -> SystemParams:
        merged = {**_ATOM_BASE, "delta_a": 0.0, "delta_c": 0.0, "V": 0.0, **kw}
        return SystemParams(**merged)

    cavity = dict(delta_a=0.0, delta_c=0.0, gamma=1.0, drive=Drive.CAVITY, g=0.3)
    fig9_base = dict(delta_a=1.95, delta_c=10.0, V=13.9)
    tau_axis = Axis("tau", 0.0, 40.0, 801)
    return {
        "fig3a": SweepSpec(atom(V=2.0), Axis("delta_c", -10.0, 10.0, 41),
                           Axis("delta_a", -10.0, 10.0, 41),
                           ("g2_0_numeric",), "lindblad", 5),
        "fig3b": SweepSpec(atom(V=6.0), Axis("delta_c", -10.0, 10.0, 41),
                           Axis("delta_a", -10.0, 10.0, 41),
                           ("g2_0_numeric",), "lindblad", 5),
        "fig4": SweepSpec(atom(), Axis("delta_c", -20.0, 20.0, 41),
                          Axis("V", 0.0, 20.0, 41),
                          ("g2_0_numeric", "mean_photon"), "lindblad", 5,
                          (Constraint("delta_a", expression=_UPB_EXPR),)),
        "fig5a": SweepSpec(atom(), Axis("delta_c", 1.0, 20.0, 39),
                           Axis("V", 0.0, 20.0, 41),
                           ("g2_0_numeric",), "lindblad", 5,
                           (Constraint("delta_a", form="pb_optimal"),)),
        "fig5b": SweepSpec(atom(V=1.0), Axis("delta_c", 1.0, 20.0, 39),
                           Axis("g", 0.5, 5.0, 46),
                           ("g2_0_numeric",), "lindblad", 5,
                           (Constraint("delta_a", form="pb_optimal"),)),
        "fig6": SweepSpec(atom(), Axis("delta_c", 2.0, 20.0, 37),
                          Axis("V", 0.0, 30.0, 31),
                          ("g2_0_numeric", "mean_photon"), "lindblad", 5,
                          (Constraint("delta_a", expression=_UPB_EXPR),)),
        "fig8a": SweepSpec(SystemParams(V=0.0, epsilon=0.01, **cavity),
                           Axis("g", 0.3, 1.2, 91), Axis("V", 0.0, 0.3, 4),
                           ("g2_0_numeric",), "lindblad", 5),
        "fig8b": SweepSpec(SystemParams(V=0.1, epsilon=0.01, **cavity),
                           Axis("g", 0.3, 1.2, 46), Axis("epsilon", 0.005, 0.1, 39),
                           ("g2_0_numeric",), "lindblad", 5),
        "fig9a": SweepSpec(atom(epsilon=0.2, **fig9_base), tau_axis, None,
                           ("g2_tau",), "lindblad", 5),
        "fig9b": SweepSpec(atom(epsilon=0.4, **fig9_base), tau_axis, None,
                           ("g2_tau",), "lindblad", 5),
    }


PRESET_NAMES = tuple(sorted(_preset_table()))


def figure_preset(name: str) -> SweepSpec:
    try:
        return _preset_table()[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; expected one of {PRESET_NAMES}") from None


# --- config files --------------------------------------------------------------

CONFIG_SCHEMA = 1

try:
    import tomllib as _toml
except ModuleNotFoundError:                      # python < 3.11
    import tomli as _toml


def _convert_axis_units(axis: Axis, kappa: float) -> Axis:
    if axis.param in ("x1", "x2"):
        return axis
    if axis.param == "tau":
        raise ConfigError("tau axes require units = 'kappa'")
    return replace(axis, start=axis.start / kappa, stop=axis.stop / kappa)


def _parse_constraint(text: str, where: str) -> Constraint:
    if "=" not in text:
        raise ConfigError(f"{where}: constraint must look like "
                          f"'<param> = <expression>', got {text!r}")
    lhs, rhs = (s.strip() for s in text.split("=", 1))
    if rhs == "pb_optimal":
        return Constraint(lhs, form="pb_optimal")
    return Constraint(lhs, expression=rhs)


def _axis_from_table(table: dict, where: str) -> tuple[Axis, Constraint | None]:
    try:
        axis = Axis(param=str(table["param"]), start=float(table["start"]),
                    stop=float(table["stop"]), steps=int(table["steps"]))
    except KeyError as missing:
        raise ConfigError(f"{where}: missing key {missing}") from None
    except (TypeError, ValueError) as bad:
        raise ConfigError(f"{where}: {bad}") from None
    constraint = None
    if "constraint" in table:
        constraint = _parse_constraint(str(table["constraint"]), where)
    extra = set(table) - {"param", "start", "stop", "steps", "constraint"}
    if extra:
        raise ConfigError(f"{where}: unknown keys {sorted(extra)}")
    return axis, constraint


def load_config(path: str | Path, default_preset: str | None = None) -> SweepSpec:
    """Build a SweepSpec from a TOML file (schema version 1).

    A top-level ``preset`` key seeds the spec; every section present after
    that overrides the preset field-by-field.  ``default_preset`` seeds the
    spec only when the file names none itself.  ``[base]`` accepts the same
    units handling as params_from_mapping, and under ``units = "2pi_mhz"``
    axis bounds and constraint constants are rescaled to kappa units as well.
    """
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            doc = _toml.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except _toml.TOMLDecodeError as bad:
        raise ConfigError(f"invalid TOML in {path}: {bad}") from None

    schema = doc.get("schema", CONFIG_SCHEMA)
    if schema != CONFIG_SCHEMA:
        raise ConfigError(f"unsupported schema version {schema!r} "
                          f"(this build reads schema = {CONFIG_SCHEMA})")

    known = {"schema", "preset", "engine", "fock", "observables",
             "base", "axis1", "axis2"}
    extra = set(doc) - known
    if extra:
        raise ConfigError(f"unknown top-level keys {sorted(extra)}")

    preset = None
    preset_name = doc.get("preset", default_preset)
    if preset_name is not None:
        preset = figure_preset(str(preset_name))

    kappa_scale = 1.0
    base = preset.base if preset else None
    if "base" in doc:
        mapping = dict(doc["base"])
        units = mapping.get("units", "kappa")
        if preset is not None:
            # partial override on top of the preset's base parameters
            if units == "2pi_mhz":
                if "kappa" not in mapping:
                    raise ConfigError("[base]: units = '2pi_mhz' requires kappa")
                kappa_scale = float(mapping.pop("kappa"))
                if kappa_scale <= 0:
                    raise ConfigError("[base]: units = '2pi_mhz' requires kappa > 0")
                mapping.pop("units")
                fields = {k: (float(v) / kappa_scale if k in FREQUENCY_FIELDS else v)
                          for k, v in mapping.items()}
            else:
                mapping.pop("units", None)
                fields = mapping
            try:
                base = preset.base.with_values(**fields)
            except (TypeError, ValueError) as bad:
                raise ConfigError(f"[base]: {bad}") from None
        else:
            if units == "2pi_mhz":
                kappa_scale = float(mapping.get("kappa", 0.0))
                if kappa_scale <= 0:
                    raise ConfigError("[base]: units = '2pi_mhz' requires kappa > 0")
            try:
                base = params_from_mapping(mapping)
            except (KeyError, TypeError, ValueError) as bad:
                raise ConfigError(f"[base]: {bad}") from None
    if base is None:
        raise ConfigError("config needs a [base] section or a preset")

    constraints: list[Constraint] = []
    axis1 = preset.axis1 if preset else None
    axis2 = preset.axis2 if preset else None
    if preset:
        constraints = list(preset.constraints)
    if "axis1" in doc:
        axis1, c = _axis_from_table(doc["axis1"], "[axis1]")
        constraints = [x for x in constraints if c is None or x.param != c.param]
        if c:
            constraints.append(c)
        if kappa_scale != 1.0:
            axis1 = _convert_axis_units(axis1, kappa_scale)
    if "axis2" in doc:
        axis2, c = _axis_from_table(doc["axis2"], "[axis2]")
        if c:
            constraints.append(c)
        if kappa_scale != 1.0:
            axis2 = _convert_axis_units(axis2, kappa_scale)
    if axis1 is None:
        raise ConfigError("config needs an [axis1] section or a preset")
    if kappa_scale != 1.0:
        constraints = [
            replace(c, expression=_rescale_affine_constant(c.expression, kappa_scale))
            if c.expression is not None else c
            for c in constraints
        ]

    engine = str(doc.get("engine", preset.engine if preset else "lindblad"))
    fock = doc.get("fock", preset.fock if preset else "auto")
    if isinstance(fock, str) and fock != "auto":
        raise ConfigError(f"fock must be an integer or 'auto', got {fock!r}")
    if "observables" in doc:
        observables = tuple(str(o) for o in doc["observables"])
    elif preset is not None and all(
            o in _ENGINE_OBSERVABLES.get(engine, ()) for o in preset.observables):
        observables = preset.observables
    else:
        observables = _DEFAULT_OBSERVABLES.get(engine, ())

    spec = SweepSpec(base=base, axis1=axis1, axis2=axis2, observables=observables,
                     engine=engine, fock=fock, constraints=tuple(constraints))
    validate_spec(spec)
    return spec


def _rescale_affine_constant(expression: str, kappa: float) -> str:
    constant, coeffs = parse_affine(expression)
    parts = [format(constant / kappa, ".17g")]
    parts += [f"{format(coef, '.17g')}*{name}" for name, coef in sorted(coeffs.items())]
    return " + ".join(parts)


# --- export / import -----------------------------------------------------------

def _fmt(x: float) -> str:
    return "" if math.isnan(x) else format(x, ".17g")


def export_csv(result: GridResult, path: str | Path) -> None:
    """Header `axis1,axis2,<observables...>[,flags]`, rows axis1-major.

    Floats carry 17 significant digits; flagged cells leave numeric fields
    empty.  Output contains no wall-clock values, so identical specs produce
    byte-identical files.
    """
    names = list(result.observables)
    with_flags = result.n_flagged > 0
    v2s = result.axis2_values
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["axis1", "axis2"] + names + (["flags"] if with_flags else []))
        for i, v1 in enumerate(result.axis1_values):
            for j in range(result.flags.shape[1]):
                row = [_fmt(v1), "" if v2s is None else _fmt(v2s[j])]
                row += [_fmt(result.observables[name][i, j]) for name in names]
                if with_flags:
                    row.append(result.flags[i, j])
                writer.writerow(row)


def export_json(result: GridResult, path: str | Path) -> None:
    """Full result with metadata; NaN cells become null."""
    def clean(arr: np.ndarray) -> list:
        return [[None if math.isnan(x) else x for x in row] for row in arr]

    doc = {
        "schema": CONFIG_SCHEMA,
        "axis1": {"param": result.spec.axis1.param,
                  "values": [float(v) for v in result.axis1_values]},
        "axis2": (None if result.axis2_values is None else
                  {"param": result.spec.axis2.param,
                   "values": [float(v) for v in result.axis2_values]}),
        "observables": {name: clean(arr) for name, arr in result.observables.items()},
        "flags": [list(row) for row in result.flags],
        "metadata": result.metadata,
    }
    with open(path, "w", newline="") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def export(result: GridResult, fmt: str, path: str | Path) -> None:
    if fmt == "csv":
        export_csv(result, path)
    elif fmt == "json":
        export_json(result, path)
    else:
        raise ConfigError(f"format must be 'csv' or 'json', got {fmt!r}")


def load_csv(path: str | Path) -> dict[str, list]:
    """Read an exported CSV back into {column: values} with floats restored.

    Empty numeric cells come back as NaN; the flags column (when present)
    stays as strings.
    """
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, data = rows[0], rows[1:]
    out: dict[str, list] = {name: [] for name in header}
    for row in data:
        for name, cell in zip(header, row):
            if name == "flags":
                out[name].append(cell)
            else:
                out[name].append(float(cell) if cell else float("nan"))
    return out


def load_json(path: str | Path) -> dict:
    """Read an exported JSON document; null cells come back as NaN."""
    with open(path) as fh:
        doc = json.load(fh)
    for name, rows in doc["observables"].items():
        doc["observables"][name] = [[float("nan") if x is None else x for x in row]
                                    for row in rows]
    return doc


__all__ = [
    "Axis", "Constraint", "SweepSpec", "GridResult",
    "ENGINES", "OBSERVABLES", "AXIS_PARAMS", "PRESET_NAMES", "RATIO_COLUMN",
    "CONFIG_SCHEMA",
    "parse_affine", "validate_spec", "run_sweep", "figure_preset",
    "load_config", "export", "export_csv", "export_json", "load_csv", "load_json",
]
