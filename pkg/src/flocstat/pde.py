"""Transient solver for the flocculation chemostat on the unit interval.

Time stepping is IMEX: the linear transport of every component
(diffusion, drift, boundary feed) is folded into a tridiagonal solve per
step, while the kinetic coupling is advanced explicitly.  On grids whose
cell Peclet number ``h/(2*min d)`` does not exceed 1, the implicit
matrix is an M-matrix, which yields two discrete structure theorems this
module leans on:

* a step whose explicit stage is nonnegative produces a nonnegative
  result, so positivity is enforced by rejecting steps whose explicit
  stage undershoots below a tolerance (the undershoot test doubles as
  the stiffness estimate: it trips exactly when dt times the per-capita
  loss rate outruns the state);
* the substrate obeys a maximum principle bounded by
  ``max(feed, initial sup)`` regardless of the step size.

Rejected steps retry with half the step; the step doubles back after 20
consecutive acceptances.  A run ends either at the requested horizon or
with a blow-up verdict — when some sup norm crosses a threshold, or when
the step size collapses below a floor.  Blow-up is a verdict, not an
exception, so parameter sweeps can tabulate it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy.integrate import trapezoid
from scipy.linalg import solve_banded

from .eigen import EigenPair, solve_principal
from .model import KineticsSpec, ModelParams, reaction_field, weight_vector
from .operators import Array, BoundaryVariant, feed_vector, operator_bands

__all__ = [
    "Grid",
    "StateField",
    "Verdict",
    "SimulationResult",
    "OutcomeReport",
    "BoundReport",
    "advance",
    "simulate",
    "classify_outcome",
    "monitor_bounds",
]

#: accepted steps must not undershoot below this before clamping
CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [0, 1] with n nodes, x_j = j*h, h = 1/(n-1)."""

    n: int

    def __post_init__(self) -> None:
        if not (isinstance(self.n, int) and self.n >= 16):
            raise ValueError(f"grid needs at least 16 nodes, got {self.n}")

    @property
    def h(self) -> float:
        return 1.0 / (self.n - 1)

    @property
    def x(self) -> Array:
        return np.linspace(0.0, 1.0, self.n)

    def integrate(self, w: Array) -> float:
        """Composite trapezoid integral over [0, 1] (last axis)."""
        return float(trapezoid(w, dx=self.h, axis=-1))


_Profile = Union[float, Sequence[float], Array, Callable[[Array], Array]]


def _as_profile(grid: Grid, value: _Profile, name: str) -> Array:
    if callable(value):
        out = np.asarray(value(grid.x), dtype=float)
    elif np.ndim(value) == 0:
        out = np.full(grid.n, float(value))
    else:
        out = np.asarray(value, dtype=float)
    if out.shape != (grid.n,):
        raise ValueError(f"{name} profile has shape {out.shape}, expected ({grid.n},)")
    return out


@dataclass(frozen=True)
class StateField:
    """All fields of the model at one instant: substrate S (n,), isolated
    densities u (m, n), attached densities v (m, n), and the time t.

    Values must be finite and nonnegative — the continuous solutions the
    scheme approximates are componentwise nonnegative, so a negative
    sample is a construction error, not data.
    """

    grid: Grid
    S: Array
    u: Array
    v: Array
    t: float = 0.0

    def __post_init__(self) -> None:
        S = np.asarray(self.S, dtype=float)
        u = np.atleast_2d(np.asarray(self.u, dtype=float))
        v = np.atleast_2d(np.asarray(self.v, dtype=float))
        n = self.grid.n
        if S.shape != (n,):
            raise ValueError(f"S has shape {S.shape}, expected ({n},)")
        if u.shape != v.shape or u.ndim != 2 or u.shape[1] != n:
            raise ValueError(
                f"u/v have shapes {u.shape}/{v.shape}, expected matching (m, {n})"
            )
        for name, arr in (("S", S), ("u", u), ("v", v)):
            if not np.isfinite(arr).all():
                raise ValueError(f"{name} contains non-finite values")
            if arr.size and float(arr.min()) < 0.0:
                raise ValueError(f"{name} contains negative values")
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "t", float(self.t))

    @property
    def m(self) -> int:
        return self.u.shape[0]

    @classmethod
    def constant(cls, grid: Grid, *, S: float, u: _Profile, v: _Profile,
                 m: int = 1, t: float = 0.0) -> "StateField":
        """State with constant (or per-species constant) profiles."""
        u_arr = np.asarray(u, dtype=float)
        v_arr = np.asarray(v, dtype=float)
        if u_arr.ndim == 0:
            u_arr = np.full(m, float(u_arr))
        if v_arr.ndim == 0:
            v_arr = np.full(m, float(v_arr))
        if u_arr.shape != (m,) or v_arr.shape != (m,):
            raise ValueError(f"u/v must be scalars or length-{m} sequences")
        return cls(
            grid=grid,
            S=np.full(grid.n, float(S)),
            u=np.repeat(u_arr[:, None], grid.n, axis=1),
            v=np.repeat(v_arr[:, None], grid.n, axis=1),
            t=t,
        )

    @classmethod
    def from_profiles(cls, grid: Grid, *, S: _Profile, u: Sequence[_Profile],
                      v: Sequence[_Profile], t: float = 0.0) -> "StateField":
        """State from per-component profiles (scalar, array, or callable of x)."""
        u_rows = [_as_profile(grid, p, f"u{i + 1}") for i, p in enumerate(u)]
        v_rows = [_as_profile(grid, p, f"v{i + 1}") for i, p in enumerate(v)]
        return cls(grid=grid, S=_as_profile(grid, S, "S"),
                   u=np.stack(u_rows), v=np.stack(v_rows), t=t)

    def stack(self) -> Array:
        """(2m+1, n) array ordered (S, u_1, v_1, ..., u_m, v_m)."""
        W = np.empty((2 * self.m + 1, self.grid.n))
        W[0] = self.S
        W[1::2] = self.u
        W[2::2] = self.v
        return W

    @classmethod
    def from_stack(cls, grid: Grid, W: Array, t: float) -> "StateField":
        return cls(grid=grid, S=W[0].copy(), u=W[1::2].copy(), v=W[2::2].copy(), t=t)

    def component_labels(self) -> tuple[str, ...]:
        """Labels matching stack() order; species index dropped when m=1."""
        if self.m == 1:
            return ("S", "u", "v")
        labels = ["S"]
        for i in range(self.m):
            labels += [f"u{i + 1}", f"v{i + 1}"]
        return tuple(labels)

    def sup(self) -> float:
        """Largest value over all components and nodes."""
        return float(max(self.S.max(), self.u.max(), self.v.max()))


@dataclass(frozen=True)
class Verdict:
    """How a run ended: the full horizon, or detected blow-up.

    kind: ``"completed"`` or ``"blow_up"``.
    t_final: the horizon for completed runs, the detection time otherwise.
    reason: empty for completed runs; ``"sup-threshold"`` when a sup norm
        crossed the configured bound, ``"dt-collapse"`` when repeated step
        rejections drove dt below its floor.
    """

    kind: str
    t_final: float
    reason: str = ""


@dataclass(frozen=True)
class SimulationResult:
    """Transient run output: monitor series, snapshots, verdict.

    monitors: column name -> 1D array, one row per recorded instant
        (every accepted step, plus the initial instant).  Columns:
        ``t``, ``sup_S``, ``sup_u_i``/``sup_v_i`` per species, ``l1_S``,
        ``l1_u_i``/``l1_v_i``, ``mass`` (weighted total), ``Q`` (blow-up
        functional of species 1), ``dt`` (step that produced the row),
        ``clamp`` (undershoot magnitude removed by clamping), and
        ``energy_p<p>_<i>`` when energy configs were requested.
    snapshots: states at selected times (each carries its t), capped.
    """

    grid: Grid
    monitors: dict[str, Array]
    snapshots: tuple[StateField, ...]
    verdict: Verdict
    initial: StateField
    final: StateField
    steps_accepted: int
    steps_rejected: int
    clamp_total: float
    blowup_eigenpair: Optional[EigenPair]


class _Stepper:
    """Per-run workspace: banded operators, feed vectors, lhs cache."""

    def __init__(self, params: ModelParams, kin: KineticsSpec, grid: Grid):
        self.params = params
        self.kin = kin
        self.grid = grid
        diffs = [params.d0]
        feeds = [params.gamma_s]
        for i in range(params.m):
            diffs += [params.du[i], params.dv[i]]
            feeds += [params.gamma_u[i], params.gamma_v[i]]
        self.diffs = diffs
        n = grid.n
        self.A = [operator_bands(d, n, BoundaryVariant.INFLOW_ROBIN) for d in diffs]
        self.B = np.stack([feed_vector(d, n, g) for d, g in zip(diffs, feeds)])
        self._lhs_cache: dict[float, list[Array]] = {}

    def lhs(self, dt: float) -> list[Array]:
        got = self._lhs_cache.get(dt)
        if got is None:
            if len(self._lhs_cache) > 64:
                self._lhs_cache.clear()
            got = []
            for ab in self.A:
                m = dt * ab
                m[1] += 1.0
                got.append(m)
            self._lhs_cache[dt] = got
        return got

    def try_step(self, W: Array, dt: float) -> tuple[Optional[Array], float, str]:
        """One IMEX step.  Returns (new stack, clamp magnitude, "") on
        acceptance, (None, 0, reason) on rejection."""
        R = reaction_field(self.params, self.kin, W[0], W[1::2], W[2::2])
        rhs = W + dt * (R + self.B)
        if not np.isfinite(rhs).all():
            return None, 0.0, "non-finite explicit stage"
        if float(rhs.min()) < -CLAMP_TOL:
            return None, 0.0, "explicit stage undershoot"
        lhs = self.lhs(dt)
        W_new = np.empty_like(W)
        for c in range(W.shape[0]):
            W_new[c] = solve_banded((1, 1), lhs[c], rhs[c])
        if not np.isfinite(W_new).all():
            return None, 0.0, "non-finite solve"
        low = float(W_new.min())
        if low < -CLAMP_TOL:
            return None, 0.0, "implicit stage undershoot"
        clamp = max(0.0, -low)
        if clamp > 0.0:
            np.clip(W_new, 0.0, None, out=W_new)
        return W_new, clamp, ""


def _require_consistent(params: ModelParams, kin: KineticsSpec, state: StateField) -> None:
    if kin.m != params.m or state.m != params.m:
        raise ValueError(
            f"species counts disagree: params m={params.m}, kinetics m={kin.m}, "
            f"state m={state.m}"
        )


def _require_monotone_grid(params: ModelParams, grid: Grid) -> None:
    d_min = min([params.d0, *params.du, *params.dv])
    if grid.h > 2.0 * d_min + 1e-15:
        need = 1 + math.ceil(1.0 / (2.0 * d_min))
        raise ValueError(
            f"grid too coarse for the smallest diffusivity {d_min}: cell Peclet "
            f"{grid.h / (2 * d_min):.3f} > 1 breaks the scheme's positivity; use n >= {need}"
        )


def advance(state: StateField, params: ModelParams, kin: KineticsSpec,
            dt: float) -> StateField:
    """One IMEX step of size dt (no adaptivity — see simulate for that).

    Raises ArithmeticError if the step produces non-finite values, and
    ValueError if it would undershoot zero beyond the clamp tolerance;
    both mean dt is too large for the current state.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    _require_consistent(params, kin, state)
    _require_monotone_grid(params, state.grid)
    stepper = _Stepper(params, kin, state.grid)
    W_new, _clamp, reason = stepper.try_step(state.stack(), dt)
    if W_new is None:
        if "non-finite" in reason:
            raise ArithmeticError(f"step of size {dt} produced {reason}")
        raise ValueError(f"step of size {dt} rejected ({reason}); reduce dt")
    return StateField.from_stack(state.grid, W_new, state.t + dt)


def _snapshot_targets(t0: float, t_end: float, snapshot_times, max_snapshots: int):
    if snapshot_times is None:
        count = min(11, max_snapshots)
        return list(np.linspace(t0, t_end, count))
    targets = sorted(float(s) for s in snapshot_times)
    if len(targets) > max_snapshots:
        raise ValueError(f"{len(targets)} snapshot times exceed the cap {max_snapshots}")
    return targets


def simulate(
    initial: StateField,
    params: ModelParams,
    kin: KineticsSpec,
    *,
    t_end: float,
    dt_init: float = 1e-2,
    dt_min: float = 1e-8,
    sup_threshold: float = 1e8,
    snapshot_times: Optional[Sequence[float]] = None,
    snapshot_stride: Optional[int] = None,
    max_snapshots: int = 200,
    energy_configs: Sequence = (),
    track_blowup_functional: bool = True,
    steps_per_double: int = 20,
    max_steps: int = 5_000_000,
) -> SimulationResult:
    """Run the IMEX scheme from ``initial`` to ``t_end`` (or to blow-up).

    Monitors are recorded at every accepted step.  Snapshots: by default
    11 states at evenly spaced times; pass ``snapshot_times`` for explicit
    instants, or ``snapshot_stride`` to keep every k-th accepted step
    (the stride doubles, thinning the kept set, whenever the cap
    ``max_snapshots`` would overflow).  The blow-up functional Q is
    tracked against the outlet-Robin eigenfunction at the first species'
    isolated-phase diffusivity; pass ``track_blowup_functional=False``
    to skip it (the Q column is then zero).

    ``energy_configs`` takes EnergyConfig values from
    :mod:`flocstat.diagnostics`; each adds per-species monitor columns
    ``energy_p<p>_<i>``.
    """
    from . import diagnostics  # local import; diagnostics only needs arrays

    _require_consistent(params, kin, initial)
    _require_monotone_grid(params, initial.grid)
    if t_end <= initial.t:
        raise ValueError(f"t_end={t_end} does not exceed the initial time {initial.t}")
    for name, val in (("dt_init", dt_init), ("dt_min", dt_min),
                      ("sup_threshold", sup_threshold)):
        if val <= 0:
            raise ValueError(f"{name} must be positive, got {val}")
    if sup_threshold <= initial.sup():
        raise ValueError(
            f"sup_threshold {sup_threshold} does not exceed the initial sup {initial.sup()}"
        )

    grid = initial.grid
    m = params.m
    stepper = _Stepper(params, kin, grid)
    weights = np.asarray(weight_vector(params))

    pair: Optional[EigenPair] = None
    phi = None
    if track_blowup_functional:
        pair = solve_principal(params.du[0], grid.n, BoundaryVariant.OUTFLOW_ROBIN)
        phi = pair.function

    labels = ["S"] + [f"{k}_{i + 1}" for i in range(m) for k in ("u", "v")]
    energy_keys = [
        (f"energy_p{cfg.p}_{i + 1}", cfg, i) for cfg in energy_configs for i in range(m)
    ]

    rows: list[list[float]] = []

    def record(W: Array, t: float, dt_used: float, clamp: float) -> None:
        sups = W.max(axis=1)
        l1s = trapezoid(W, dx=grid.h, axis=1)
        mass = float(weights @ l1s)
        if phi is not None:
            Y = float(trapezoid(W[1] * phi, dx=grid.h))
            Z = float(trapezoid(W[2] * phi, dx=grid.h))
            Q = (params.yu[0] + 1.0) * Y + (params.yv[0] + 1.0) * Z
        else:
            Q = 0.0
        row = [t, *sups, *l1s, mass, Q, dt_used, clamp]
        for _key, cfg, i in energy_keys:
            _, Lp = diagnostics.hp_energy(W[1 + 2 * i], W[2 + 2 * i], cfg)
            row.append(Lp)
        rows.append(row)

    # --- snapshot bookkeeping ------------------------------------------------
    time_targets: Optional[list[float]] = None
    stride = None
    if snapshot_stride is not None:
        if snapshot_stride < 1:
            raise ValueError(f"snapshot_stride must be >= 1, got {snapshot_stride}")
        stride = int(snapshot_stride)
    else:
        time_targets = _snapshot_targets(initial.t, t_end, snapshot_times, max_snapshots)
    snapshots: list[StateField] = []

    def maybe_snapshot(state: StateField, step_index: int) -> None:
        nonlocal stride, time_targets
        if stride is not None:
            if step_index % stride == 0:
                snapshots.append(state)
                if len(snapshots) > max_snapshots:
                    del snapshots[1::2]
                    stride *= 2
        else:
            due = False
            while time_targets and state.t >= time_targets[0] - 1e-9:
                time_targets.pop(0)
                due = True
            if due:
                snapshots.append(state)

    W = initial.stack()
    t = initial.t
    dt = dt_init
    accepted = 0
    rejected = 0
    accepted_since_change = 0
    clamp_total = 0.0
    record(W, t, dt_init, 0.0)
    maybe_snapshot(initial, 0)
    verdict: Optional[Verdict] = None
    time_tol = 1e-12 * max(1.0, abs(t_end))

    while t < t_end - time_tol:
        if accepted + rejected >= max_steps:
            raise RuntimeError(
                f"step budget {max_steps} exhausted at t={t:.6g} (dt={dt:.3e}); "
                f"the run is stalled, not blowing up"
            )
        dt_eff = min(dt, t_end - t)
        W_new, clamp, _reason = stepper.try_step(W, dt_eff)
        if W_new is None:
            rejected += 1
            accepted_since_change = 0
            dt = dt_eff / 2.0
            if dt < dt_min:
                verdict = Verdict(kind="blow_up", t_final=t, reason="dt-collapse")
                break
            continue
        accepted += 1
        accepted_since_change += 1
        t += dt_eff
        W = W_new
        clamp_total += clamp
        record(W, t, dt_eff, clamp)
        need_snapshot = (
            stride is not None and accepted % stride == 0
        ) or (time_targets is not None and bool(time_targets) and t >= time_targets[0] - 1e-9)
        if need_snapshot:
            maybe_snapshot(StateField.from_stack(grid, W, t), accepted)
        if float(W.max()) > sup_threshold:
            verdict = Verdict(kind="blow_up", t_final=t, reason="sup-threshold")
            break
        if accepted_since_change >= steps_per_double and dt < dt_init:
            dt = min(2.0 * dt, dt_init)
            accepted_since_change = 0

    final = StateField.from_stack(grid, W, t)
    if verdict is None:
        verdict = Verdict(kind="completed", t_final=t)
    if not snapshots or snapshots[-1].t < final.t - 1e-12:
        snapshots.append(final)
        if len(snapshots) > max_snapshots:
            del snapshots[1::2]

    data = np.asarray(rows)
    keys = (["t"] + [f"sup_{c}" for c in labels] + [f"l1_{c}" for c in labels]
            + ["mass", "Q", "dt", "clamp"] + [k for k, _c, _i in energy_keys])
    monitors = {k: data[:, j].copy() for j, k in enumerate(keys)}

    return SimulationResult(
        grid=grid,
        monitors=monitors,
        snapshots=tuple(snapshots),
        verdict=verdict,
        initial=initial,
        final=final,
        steps_accepted=accepted,
        steps_rejected=rejected,
        clamp_total=clamp_total,
        blowup_eigenpair=pair,
    )


# ---------------------------------------------------------------------------
# Outcome classification and bound reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OutcomeReport:
    """Ecological reading of a finished run.

    label: ``blow-up`` | ``washout`` | ``coexistence`` |
        ``extinction-u`` / ``extinction-v`` (single species) or
        ``extinction-<comma list>`` (multiple species).
    extinct/surviving: biomass component labels, empty for blow-up.
    A component counts as extinct when its final sup norm is below
    ``sup_tol`` and below ``frac_tol`` times its initial sup norm.
    """

    label: str
    extinct: tuple[str, ...]
    surviving: tuple[str, ...]
    sup_tol: float
    frac_tol: float


def classify_outcome(result: SimulationResult, *, sup_tol: float = 1e-2,
                     frac_tol: float = 0.1) -> OutcomeReport:
    """Classify a run per the documented sup-norm thresholds."""
    if result.verdict.kind == "blow_up":
        return OutcomeReport("blow-up", (), (), sup_tol, frac_tol)
    labels = result.final.component_labels()[1:]
    init = np.concatenate([
        arr for pair in zip(result.initial.u, result.initial.v) for arr in pair
    ]).reshape(2 * result.initial.m, -1)
    fin = np.concatenate([
        arr for pair in zip(result.final.u, result.final.v) for arr in pair
    ]).reshape(2 * result.final.m, -1)
    extinct: list[str] = []
    surviving: list[str] = []
    for j, label in enumerate(labels):
        s0 = float(init[j].max())
        s1 = float(fin[j].max())
        gone = s1 < sup_tol and (s0 == 0.0 or s1 < frac_tol * s0)
        (extinct if gone else surviving).append(label)
    if not extinct:
        label = "coexistence"
    elif not surviving:
        label = "washout"
    else:
        label = "extinction-" + ",".join(extinct)
    return OutcomeReport(label, tuple(extinct), tuple(surviving), sup_tol, frac_tol)


@dataclass(frozen=True)
class BoundReport:
    """A-posteriori check of the run against the model's a priori bounds.

    sup_S_limit is ``max(feed, initial sup of S)``; the substrate may
    exceed it only by discretization slack.  The weighted-mass growth
    class is a heuristic three-way fit on the monitor series: bounded
    (no sustained late growth), linear (steady late increments), or
    exponential (late increments outpacing earlier ones).
    """

    sup_S_max: float
    sup_S_limit: float
    sup_S_slack: float
    sup_bound_ok: bool
    mass_growth_class: str
    mass_initial: float
    mass_peak: float
    mass_final: float
    slack_tol: float


def monitor_bounds(result: SimulationResult, params: ModelParams,
                   *, slack_tol: float = 1e-3) -> BoundReport:
    """Evaluate the substrate sup bound and classify weighted-mass growth."""
    sup_S = result.monitors["sup_S"]
    limit = max(params.gamma_s, float(result.initial.S.max()))
    sup_max = float(sup_S.max())
    slack = sup_max - limit

    t = result.monitors["t"]
    mass = result.monitors["mass"]
    m0 = float(mass[0])
    peak = float(mass.max())
    m_end = float(mass[-1])
    t0, t1 = float(t[0]), float(t[-1])
    if t1 <= t0:
        growth = "bounded"
    else:
        quart = [np.interp(t0 + q * (t1 - t0), t, mass) for q in (0.5, 0.75, 1.0)]
        late_growth = quart[2] - quart[0]
        scale = max(abs(peak), 1.0)
        if late_growth <= 0.05 * scale:
            growth = "bounded"
        else:
            inc1 = quart[1] - quart[0]
            inc2 = quart[2] - quart[1]
            growth = "exponential" if inc2 > 1.5 * max(inc1, 0.0) else "linear"
    return BoundReport(
        sup_S_max=sup_max,
        sup_S_limit=limit,
        sup_S_slack=slack,
        sup_bound_ok=slack <= slack_tol,
        mass_growth_class=growth,
        mass_initial=m0,
        mass_peak=peak,
        mass_final=m_end,
        slack_tol=slack_tol,
    )
