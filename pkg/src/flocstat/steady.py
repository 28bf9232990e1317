"""Steady-state machinery for the single-species model under unit feed.

At steady state every component of the model solves a transport balance
``-d*w'' + w' = source`` with a homogeneous inlet condition once the
substrate is rewritten as its depletion ``Stilde = 1 - S``.  That
balance inverts explicitly: the Green's kernel of the transport operator
is ``exp((min(x, s) - s)/d)``, so the steady system becomes a
fixed-point equation for the triple ``(Stilde, u, v)`` under an integral
operator.  This module provides:

* the kernel and its trapezoid quadrature matrix (the kernel has a
  derivative kink at ``s = x``; keeping the kink on a grid node retains
  second-order accuracy);
* one application of the integral operator (the two-component
  extinction systems are the exact restriction of the full operator
  when one biomass component is identically zero and the matching
  exchange rate vanishes there — no special casing);
* a damped Picard iteration with optional projection onto invariant
  cones (order intervals between scaled eigenfunctions), where
  non-convergence is a reportable result, not an exception;
* hypothesis checkers for the extinction and coexistence existence
  theorems, reporting every clause as a signed margin.  The checkers
  are honest: for several clause systems no admissible parameters
  satisfy all clauses simultaneously, and the reports say so rather
  than manufacturing a pass.

Everything here assumes the single-species normalization the theory is
stated in: m = 1, unit substrate feed, zero biomass feed.  Calls outside
that regime raise instead of extrapolating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .eigen import solve_principal
from .model import GrowthLaw, KineticsSpec, ModelParams
from .operators import Array, BoundaryVariant, transport_defect
from .pde import Grid

__all__ = [
    "kernel_eval",
    "kernel_matrix",
    "apply_steady_operator",
    "SteadyState",
    "ConeSpec",
    "build_cone",
    "InvarianceCertificate",
    "certify_cone_invariance",
    "fixed_point_solve",
    "ClauseMargin",
    "ExtinctionReport",
    "check_extinction_hypotheses",
    "CoexistenceReport",
    "check_coexistence_hypotheses",
]


# ---------------------------------------------------------------------------
# Kernel and quadrature
# ---------------------------------------------------------------------------


def kernel_eval(d: float, x, s):
    """Green's kernel ``exp((min(x, s) - s)/d)`` of the steady transport.

    Equals 1 for ``s <= x`` (everything released upstream of x arrives
    undiminished) and decays like ``exp((x - s)/d)`` for ``s > x``.
    Accepts scalars or broadcastable arrays; arguments outside ``[0, 1]``
    or a nonpositive ``d`` raise ValueError.
    """
    if not (d > 0 and math.isfinite(d)):
        raise ValueError(f"diffusivity must be positive, got {d}")
    x_arr = np.asarray(x, dtype=float)
    s_arr = np.asarray(s, dtype=float)
    for name, arr in (("x", x_arr), ("s", s_arr)):
        if arr.size and (float(arr.min()) < 0.0 or float(arr.max()) > 1.0):
            raise ValueError(f"{name} must lie in [0, 1]")
    out = np.exp((np.minimum(x_arr, s_arr) - s_arr) / d)
    if out.ndim == 0:
        return float(out)
    return out


def kernel_matrix(d: float, n: int) -> Array:
    """Quadrature matrix M with ``(M @ rho)_i ~ int K_d(x_i, s) rho(s) ds``.

    Composite trapezoid on the uniform n-node grid; the kernel kink at
    ``s = x_i`` always falls on a node, so the rule stays second order.
    """
    grid = Grid(n)
    x = grid.x
    K = kernel_eval(d, x[:, None], x[None, :])
    w = np.full(n, grid.h)
    w[0] = w[-1] = grid.h / 2.0
    return K * w[None, :]


# ---------------------------------------------------------------------------
# The steady integral operator
# ---------------------------------------------------------------------------


def _require_theory_regime(params: ModelParams, kin: KineticsSpec) -> None:
    if params.m != 1 or kin.m != 1:
        raise ValueError(
            f"the steady-state machinery covers the single-species system only; got m={params.m}"
        )
    if params.gamma_s != 1.0 or params.gamma_u[0] != 0.0 or params.gamma_v[0] != 0.0:
        raise ValueError(
            "the steady-state machinery assumes unit substrate feed and zero "
            f"biomass feed (gamma_s=1, gamma_u=gamma_v=0); got gamma_s={params.gamma_s}, "
            f"gamma_u={params.gamma_u[0]}, gamma_v={params.gamma_v[0]}"
        )


_Triple = tuple[Array, Array, Array]


def _as_triple(value, name: str = "triple") -> Array:
    """Coerce a (Stilde, u, v) triple (or SteadyState) to a (3, n) array."""
    if hasattr(value, "Stilde"):
        parts = (value.Stilde, value.u, value.v)
    else:
        parts = tuple(value)
        if len(parts) != 3:
            raise ValueError(f"{name} must have exactly three components, got {len(parts)}")
    arrays = [np.asarray(p, dtype=float) for p in parts]
    n = arrays[0].shape[0] if arrays[0].ndim == 1 else -1
    for label, arr in zip(("Stilde", "u", "v"), arrays):
        if arr.ndim != 1 or arr.shape[0] != n or n < 3:
            raise ValueError(f"{name}.{label} must be a 1-D array matching the others")
        if not np.isfinite(arr).all():
            raise ValueError(f"{name}.{label} contains non-finite values")
        if arr.size and float(arr.min()) < 0.0:
            raise ValueError(f"{name}.{label} contains negative values")
    return np.stack(arrays)


class _SteadyOperator:
    """Workspace caching the three quadrature matrices for one grid."""

    def __init__(self, params: ModelParams, kin: KineticsSpec, n: int):
        _require_theory_regime(params, kin)
        self.params = params
        self.kin = kin
        self.n = n
        self.M = [kernel_matrix(d, n) for d in (params.d0, params.du[0], params.dv[0])]

    def sources(self, X: Array) -> Array:
        """Reaction densities feeding each component's transport balance."""
        Stilde, u, v = X
        S_avail = np.clip(1.0 - Stilde, 0.0, None)
        fS = self.kin.f[0](S_avail)
        gS = self.kin.g[0](S_avail)
        attach = self.kin.alpha[0](u[None, :], v[None, :])
        detach = self.kin.beta[0](u[None, :], v[None, :])
        yu, yv = self.params.yu[0], self.params.yv[0]
        consume = fS * u + gS * v
        src_u = fS * u + detach * v - attach * u / yu
        src_v = gS * v + attach * u - detach * v / yv
        return np.stack([consume, src_u, src_v])

    def apply(self, X: Array) -> Array:
        src = self.sources(X)
        out = np.stack([self.M[c] @ src[c] for c in range(3)])
        return np.clip(out, 0.0, None)

    def differential_defect(self, X: Array) -> float:
        """Sup-norm defect of the triple against the differential balances."""
        src = self.sources(X)
        diffs = (self.params.d0, self.params.du[0], self.params.dv[0])
        return max(
            transport_defect(X[c], diffs[c], src[c], gamma=0.0).max_abs for c in range(3)
        )


def apply_steady_operator(state, params: ModelParams, kin: KineticsSpec) -> _Triple:
    """One application of the steady integral operator to a triple.

    ``state`` is ``(Stilde, u, v)`` (arrays on a shared uniform grid) or
    a SteadyState.  Kinetics are evaluated at the available substrate
    ``(1 - Stilde)`` clamped to its positive part; the returned triple is
    clamped componentwise nonnegative (the kernel is positive, so only
    exchange-loss overshoots can undershoot zero mid-iteration).

    When a biomass component is identically zero and the exchange rate
    feeding the other phase vanishes with it, the operator reduces
    exactly to the corresponding two-component extinction system.
    """
    X = _as_triple(state)
    op = _SteadyOperator(params, kin, X.shape[1])
    out = op.apply(X)
    return out[0], out[1], out[2]


# ---------------------------------------------------------------------------
# Steady states and cones
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SteadyState:
    """A (possibly unconverged) iterate of the steady fixed-point solve.

    Stilde is the substrate depletion (unit feed minus substrate,
    clamped nonnegative); u and v are the biomass profiles.  residual is
    the sup-norm defect of the fixed-point equation; pde_residual is the
    sup-norm defect of the differential balances (second-order
    differences, boundary conditions included) — the quantity that
    governs drift when the state is transplanted into the transient
    solver.  projection_trace records the per-iteration cone-projection
    magnitudes when a cone constrained the iteration.
    """

    grid: Grid
    Stilde: Array
    u: Array
    v: Array
    residual: float
    pde_residual: float
    converged: bool
    iterations: int
    projection_trace: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        n = self.grid.n
        for label in ("Stilde", "u", "v"):
            arr = np.asarray(getattr(self, label), dtype=float)
            if arr.shape != (n,):
                raise ValueError(f"{label} has shape {arr.shape}, expected ({n},)")
            if not np.isfinite(arr).all() or (arr.size and float(arr.min()) < 0.0):
                raise ValueError(f"{label} must be finite and nonnegative")
            object.__setattr__(self, label, arr)
        for label in ("residual", "pde_residual"):
            if not math.isfinite(getattr(self, label)):
                raise ValueError(f"{label} must be finite")

    @property
    def substrate(self) -> Array:
        """Physical substrate profile ``(1 - Stilde)`` clamped nonnegative.

        Its outlet value being (near) zero flags total depletion — a
        post-hoc dichotomy check on converged states.
        """
        return np.clip(1.0 - self.Stilde, 0.0, None)


_CONE_KINDS = ("extinction-attached", "extinction-isolated", "coexistence")


@dataclass(frozen=True)
class ConeSpec:
    """Order interval (componentwise envelope box) for the steady iteration.

    lower/upper are (3, n) envelope arrays for (Stilde, u, v).  The
    scalars record how the envelopes were normalized: ``k``/``k_prime``
    are the depletion margins keeping growth above the kernel
    attenuation, ``c``/``C`` the minima of the biomass lower envelopes,
    and ``theta``/``rho`` the exchange-rate floors of the coexistence
    construction.
    """

    kind: str
    lower: Array
    upper: Array
    k: Optional[float] = None
    k_prime: Optional[float] = None
    c: Optional[float] = None
    C: Optional[float] = None
    theta: Optional[float] = None
    rho: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind not in _CONE_KINDS:
            raise ValueError(f"unknown cone kind {self.kind!r}; expected one of {_CONE_KINDS}")
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        if lower.ndim != 2 or lower.shape[0] != 3 or lower.shape != upper.shape:
            raise ValueError(
                f"envelopes must be matching (3, n) arrays, got {lower.shape} and {upper.shape}"
            )
        if not (np.isfinite(lower).all() and np.isfinite(upper).all()):
            raise ValueError("envelopes must be finite")
        if float(lower.min()) < 0.0:
            raise ValueError("lower envelopes must be nonnegative")
        if np.any(lower > upper + 1e-12):
            raise ValueError("lower envelope exceeds upper envelope")
        constrained = {"extinction-attached": (1,), "extinction-isolated": (2,),
                       "coexistence": (1, 2)}[self.kind]
        for row in constrained:
            if float(lower[row].min()) <= 0.0:
                raise ValueError(
                    f"the cone's biomass lower envelope (row {row}) must be strictly positive"
                )
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def n(self) -> int:
        return self.lower.shape[1]

    def clip(self, X: Array) -> Array:
        """Project a (3, n) iterate onto the envelope box (pointwise clamp)."""
        return np.clip(X, self.lower, self.upper)

    def violation(self, state) -> float:
        """Largest outward distance of a triple from the envelope box."""
        X = _as_triple(state)
        if X.shape[1] != self.n:
            raise ValueError(f"triple has {X.shape[1]} nodes, cone has {self.n}")
        below = np.clip(self.lower - X, 0.0, None)
        above = np.clip(X - self.upper, 0.0, None)
        return float(max(below.max(), above.max()))

    def contains(self, state, tol: float = 1e-9) -> bool:
        return self.violation(state) <= tol


def _largest_depletion_margin(growth: GrowthLaw, d: float,
                              scan_points: int = 4096, refine: int = 60) -> Optional[float]:
    """Largest k in (0, 1) with ``growth(1 - k) >= exp(1/d)``; None if
    even an arbitrarily small depletion fails (growth(1) below the
    attenuation).  The value returned is the supremum — the crossing
    point where equality holds — located by scan plus bisection, so
    non-monotone growth laws are handled.
    """
    try:
        target = math.exp(1.0 / d)
    except OverflowError:
        return None
    if float(growth(1.0)) <= target:
        return None
    ks = np.linspace(0.0, 1.0, scan_points + 1)
    vals = np.asarray(growth(1.0 - ks), dtype=float)
    holds = vals >= target
    last = int(np.max(np.nonzero(holds)[0]))
    if last == scan_points:
        return 1.0
    lo, hi = float(ks[last]), float(ks[last + 1])
    for _ in range(refine):
        mid = 0.5 * (lo + hi)
        if float(growth(1.0 - mid)) >= target:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class _SigmaGeometry:
    """Envelope geometry of the coexistence cone, before choosing theta/rho."""

    upper_S: Array
    upper_u: Array
    upper_v: Array
    lower_u: Array
    lower_v: Array
    lam0: float
    lam1: float
    lam2: float
    k: Optional[float]
    k_prime: Optional[float]
    normalization_ok: bool
    theta_cap: float
    alpha_floor: float
    beta_floor: float


#: depletion cap used for exploratory envelopes when no admissible margin exists
_FALLBACK_DEPLETION = 0.5


def _sigma_geometry(params: ModelParams, kin: KineticsSpec, grid_n: int,
                    safety: float) -> _SigmaGeometry:
    pair0 = solve_principal(params.d0, grid_n, BoundaryVariant.INFLOW_ROBIN)
    pair1 = solve_principal(params.du[0], grid_n, BoundaryVariant.INFLOW_ROBIN)
    pair2 = solve_principal(params.dv[0], grid_n, BoundaryVariant.INFLOW_ROBIN)
    f1 = float(kin.f[0](1.0))
    g1 = float(kin.g[0](1.0))
    k = _largest_depletion_margin(kin.f[0], params.du[0])
    k_prime = _largest_depletion_margin(kin.g[0], params.dv[0])
    normalization_ok = k is not None and k_prime is not None
    cap = min(k if k is not None else _FALLBACK_DEPLETION,
              k_prime if k_prime is not None else _FALLBACK_DEPLETION)
    upper_S = safety * cap * pair0.function
    if f1 + g1 <= 0.0:
        raise ValueError("coexistence envelopes need positive growth at the feed")
    ceiling = (pair0.value / (f1 + g1)) * upper_S
    upper_u = float(np.min(ceiling / pair1.function)) * pair1.function
    upper_v = float(np.min(upper_u / pair2.function)) * pair2.function
    lower_u = upper_u / pair1.value
    lower_v = upper_v / pair2.value
    theta_cap = float(np.min(upper_v / upper_u))
    alpha_floor = float(np.min(kin.alpha[0](lower_u[None, :], lower_v[None, :])))
    beta_floor = float(np.min(kin.beta[0](lower_u[None, :], lower_v[None, :])))
    return _SigmaGeometry(
        upper_S=upper_S, upper_u=upper_u, upper_v=upper_v,
        lower_u=lower_u, lower_v=lower_v,
        lam0=pair0.value, lam1=pair1.value, lam2=pair2.value,
        k=k, k_prime=k_prime, normalization_ok=normalization_ok,
        theta_cap=theta_cap, alpha_floor=alpha_floor, beta_floor=beta_floor,
    )


def build_cone(kind: str, params: ModelParams, kin: KineticsSpec, *,
               grid_n: int = 401, safety: float = 0.999,
               k_override: Optional[float] = None,
               theta: Optional[float] = None,
               rho: Optional[float] = None) -> ConeSpec:
    """Construct an invariant-cone candidate from rescaled eigenfunctions.

    For the extinction cones the substrate-depletion envelope is scaled
    to keep its sup below the depletion margin k (so growth stays above
    the kernel attenuation throughout the cone), and the surviving
    biomass envelope is the largest eigenfunction multiple dominated by
    ``(lambda_0 / growth(1)) *`` the depletion envelope; its minimum
    becomes the constant biomass floor.  When no admissible k exists the
    build raises — pass ``k_override`` for an exploratory cone.

    For the coexistence cone both margins (k from the isolated growth
    law, k' from the attached one) cap the depletion envelope, the
    biomass envelopes are nested eigenfunction multiples, and the lower
    envelopes are the uppers divided by their eigenvalues; theta and rho
    default to just inside their admissible caps.
    """
    _require_theory_regime(params, kin)
    if not (0.0 < safety <= 1.0):
        raise ValueError(f"safety factor must lie in (0, 1], got {safety}")
    zeros = np.zeros(grid_n)

    if kind in ("extinction-attached", "extinction-isolated"):
        if kind == "extinction-attached":
            growth, d_bio = kin.f[0], params.du[0]
        else:
            growth, d_bio = kin.g[0], params.dv[0]
        pair0 = solve_principal(params.d0, grid_n, BoundaryVariant.INFLOW_ROBIN)
        pair_bio = solve_principal(d_bio, grid_n, BoundaryVariant.INFLOW_ROBIN)
        k = k_override if k_override is not None else _largest_depletion_margin(growth, d_bio)
        if k is None:
            raise ValueError(
                "no admissible depletion margin: growth at the feed does not exceed "
                f"the kernel attenuation exp(1/d)={math.exp(1.0 / d_bio):.4g}; "
                "pass k_override to build an exploratory cone"
            )
        if not (0.0 < k <= 1.0):
            raise ValueError(f"depletion margin must lie in (0, 1], got {k}")
        g_at_feed = float(growth(1.0))
        if g_at_feed <= 0.0:
            raise ValueError("the surviving phase needs positive growth at the feed")
        upper_S = safety * k * pair0.function
        ceiling = (pair0.value / g_at_feed) * upper_S
        upper_bio = float(np.min(ceiling / pair_bio.function)) * pair_bio.function
        floor = float(np.min(upper_bio))
        lower_bio = np.full(grid_n, floor)
        if kind == "extinction-attached":
            lower = np.stack([zeros, lower_bio, zeros])
            upper = np.stack([upper_S, upper_bio, zeros])
            return ConeSpec(kind, lower, upper, k=k, c=floor)
        lower = np.stack([zeros, zeros, lower_bio])
        upper = np.stack([upper_S, zeros, upper_bio])
        return ConeSpec(kind, lower, upper, k_prime=k, C=floor)

    if kind != "coexistence":
        raise ValueError(f"unknown cone kind {kind!r}; expected one of {_CONE_KINDS}")
    geo = _sigma_geometry(params, kin, grid_n, safety)
    theta_max = min(geo.theta_cap, geo.alpha_floor)
    theta_val = theta if theta is not None else safety * theta_max
    rho_val = rho if rho is not None else safety * geo.beta_floor
    if not (0.0 < theta_val <= theta_max):
        raise ValueError(
            f"theta={theta_val:.4g} is inadmissible: it must be positive and at most "
            f"min(envelope ratio {geo.theta_cap:.4g}, attachment floor {geo.alpha_floor:.4g})"
        )
    if not (0.0 < rho_val <= geo.beta_floor):
        raise ValueError(
            f"rho={rho_val:.4g} is inadmissible: it must be positive and at most "
            f"the detachment floor {geo.beta_floor:.4g}"
        )
    lower = np.stack([zeros, geo.lower_u, geo.lower_v])
    upper = np.stack([geo.upper_S, geo.upper_u, geo.upper_v])
    return ConeSpec(
        "coexistence", lower, upper,
        k=geo.k, k_prime=geo.k_prime,
        c=float(np.min(geo.lower_u)), C=float(np.min(geo.lower_v)),
        theta=theta_val, rho=rho_val,
    )


@dataclass(frozen=True)
class InvarianceCertificate:
    """Finitely sampled check that the steady operator maps a cone into itself."""

    kind: str
    samples: int
    max_violation: float
    contained: bool
    tol: float
    seed: int


def certify_cone_invariance(cone: ConeSpec, params: ModelParams, kin: KineticsSpec,
                            *, samples: int = 32, seed: int = 20240,
                            tol: float = 1e-9) -> InvarianceCertificate:
    """Apply the steady operator to random cone elements and report the
    worst outward violation of the envelopes.  A sampled certificate —
    evidence, not proof."""
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    op = _SteadyOperator(params, kin, cone.n)
    rng = np.random.default_rng(seed)
    span = cone.upper - cone.lower
    worst = 0.0
    for _ in range(samples):
        X = cone.lower + rng.random(cone.lower.shape) * span
        image = op.apply(X)
        below = np.clip(cone.lower - image, 0.0, None)
        above = np.clip(image - cone.upper, 0.0, None)
        worst = max(worst, float(below.max()), float(above.max()))
    return InvarianceCertificate(
        kind=cone.kind, samples=samples, max_violation=worst,
        contained=worst <= tol, tol=tol, seed=seed,
    )


# ---------------------------------------------------------------------------
# Fixed-point iteration
# ---------------------------------------------------------------------------


def fixed_point_solve(init, params: ModelParams, kin: KineticsSpec, *,
                      cone: Optional[ConeSpec] = None, tol: float = 1e-10,
                      max_iter: int = 5000, damping: float = 0.5) -> SteadyState:
    """Damped Picard iteration ``x <- (1 - w)*x + w*G(x)`` on the triple.

    With a cone, every iterate is projected onto the envelope box
    (pointwise clamp) and the projection magnitudes are recorded; the
    initial triple must already lie in the cone.  The iteration stops
    when the successive sup-norm change drops below ``tol``; hitting
    ``max_iter`` first returns the last iterate marked unconverged — the
    operator is not proven contractive, so non-convergence is a result,
    not an error.  The returned residual is the fixed-point defect
    ``sup |G(x) - x|``; pde_residual is the differential-balance defect.
    """
    if not (0.0 < damping <= 1.0):
        raise ValueError(f"damping must lie in (0, 1], got {damping}")
    if tol <= 0 or max_iter < 1:
        raise ValueError(f"need positive tol and max_iter >= 1, got {tol}, {max_iter}")
    X = _as_triple(init, "init")
    n = X.shape[1]
    grid = Grid(n)
    if cone is not None:
        if cone.n != n:
            raise ValueError(f"cone has {cone.n} nodes, init has {n}")
        violation = float(max(np.clip(cone.lower - X, 0, None).max(),
                              np.clip(X - cone.upper, 0, None).max()))
        if violation > 1e-9:
            raise ValueError(
                f"initial triple lies outside the cone (violation {violation:.3e})"
            )
    op = _SteadyOperator(params, kin, n)
    trace: list[float] = []
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        GX = op.apply(X)
        X_new = (1.0 - damping) * X + damping * GX
        if cone is not None:
            projected = cone.clip(X_new)
            trace.append(float(np.max(np.abs(projected - X_new))))
            X_new = projected
        change = float(np.max(np.abs(X_new - X)))
        X = X_new
        if change < tol:
            converged = True
            break
    residual = float(np.max(np.abs(op.apply(X) - X)))
    pde_residual = op.differential_defect(X)
    return SteadyState(
        grid=grid, Stilde=X[0], u=X[1], v=X[2],
        residual=residual, pde_residual=pde_residual,
        converged=converged, iterations=iterations,
        projection_trace=tuple(trace),
    )


# ---------------------------------------------------------------------------
# Hypothesis checkers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClauseMargin:
    """One inequality of an existence theorem as a signed margin.

    margin > 0 satisfies a strict clause; margin >= 0 a non-strict one.
    Structural (boolean) clauses use the sentinel margins +1/-1.
    """

    name: str
    margin: float
    satisfied: bool
    strict: bool = False


@dataclass(frozen=True)
class ExtinctionReport:
    """Clause-by-clause audit of a single-phase survival construction.

    The construction needs the surviving phase's growth at the feed to
    exceed the kernel attenuation ``exp(1/d)`` while staying at or below
    the principal eigenvalue — the window ``(exp(1/d), lambda_d]``.
    ``window_nonempty`` reports whether that window exists at all for
    this diffusivity; it is False for every positive d (the eigenvalue
    always sits below the attenuation), which the report states rather
    than hides.  ``k_margin`` is the largest depletion the surviving
    phase tolerates while keeping its growth above the attenuation
    (None when even full feed fails).
    """

    which: str
    growth_at_feed: float
    kernel_attenuation: float
    eigenvalue: float
    clauses: tuple[ClauseMargin, ...]
    window_nonempty: bool
    all_satisfied: bool
    k_margin: Optional[float]
    grid_n: int


def check_extinction_hypotheses(params: ModelParams, kin: KineticsSpec,
                                which: str, *, grid_n: int = 401) -> ExtinctionReport:
    """Audit the hypotheses of the extinction existence construction.

    ``which`` names the phase that goes extinct: ``"attached"`` keeps
    the isolated phase (growth law f, diffusivity du, attachment must
    vanish without attached biomass), ``"isolated"`` keeps the attached
    phase (growth law g, diffusivity dv, detachment must vanish without
    isolated biomass).
    """
    _require_theory_regime(params, kin)
    if which == "attached":
        growth = kin.f[0]
        d_bio = params.du[0]
        structural_ok = bool(kin.alpha[0].vanishes_without_attached)
        structural_name = "attachment-vanishes-without-attached"
    elif which == "isolated":
        growth = kin.g[0]
        d_bio = params.dv[0]
        structural_ok = bool(kin.beta[0].vanishes_without_isolated)
        structural_name = "detachment-vanishes-without-isolated"
    else:
        raise ValueError(f"which must be 'attached' or 'isolated', got {which!r}")

    lam = solve_principal(d_bio, grid_n, BoundaryVariant.INFLOW_ROBIN).value
    attenuation = math.exp(1.0 / d_bio)
    growth_at_feed = float(growth(1.0))
    clauses = (
        ClauseMargin("growth-beats-kernel-attenuation",
                     growth_at_feed - attenuation,
                     growth_at_feed > attenuation, strict=True),
        ClauseMargin("growth-capped-by-eigenvalue",
                     lam - growth_at_feed,
                     growth_at_feed <= lam),
        ClauseMargin(structural_name,
                     1.0 if structural_ok else -1.0,
                     structural_ok),
    )
    k_margin = _largest_depletion_margin(growth, d_bio)
    return ExtinctionReport(
        which=which,
        growth_at_feed=growth_at_feed,
        kernel_attenuation=attenuation,
        eigenvalue=lam,
        clauses=clauses,
        window_nonempty=lam > attenuation,
        all_satisfied=all(cl.satisfied for cl in clauses),
        k_margin=k_margin,
        grid_n=grid_n,
    )


@dataclass(frozen=True)
class CoexistenceReport:
    """Clause-by-clause audit of the two-phase coexistence construction.

    The five clauses are evaluated at the best (theta, rho) found on a
    logarithmic grid: two strict growth clauses (each phase's growth at
    the feed beats its eigenvalue inflated by the exchange loss), two
    yield-balance clauses trading growth against the exchange floors,
    and the selection clause requiring theta below both the envelope
    ratio and the attachment floor, rho below the detachment floor.
    ``feasible`` reports whether any grid point satisfies all five; when
    none does, ``binding_clause`` names the worst-violated clause at the
    best point.  For the exchange laws studied here the system is
    infeasible for every admissible parameter set (the yield-balance
    floor always overshoots the attachment floor); the report says so
    honestly instead of returning a fabricated pass.
    """

    clauses: tuple[ClauseMargin, ...]
    theta: float
    rho: float
    feasible: bool
    feasible_count: int
    binding_clause: str
    normalization_ok: bool
    k_margin: Optional[float]
    k_prime_margin: Optional[float]
    theta_cap: float
    alpha_floor: float
    beta_floor: float
    eigenvalue_substrate: float
    eigenvalue_u: float
    eigenvalue_v: float
    grid_n: int
    grid_points: int


def check_coexistence_hypotheses(params: ModelParams, kin: KineticsSpec, *,
                                 grid_n: int = 401, grid_points: int = 64,
                                 rate_range: tuple[float, float] = (1e-4, 1.0),
                                 safety: float = 0.999) -> CoexistenceReport:
    """Audit the coexistence construction over a (theta, rho) grid.

    theta and rho are searched on a ``grid_points``-point logarithmic
    grid over ``rate_range`` (the construction only requires them "small
    enough", so the grid brackets plausible magnitudes).  Requires
    nondecreasing exchange-rate descriptors — the envelope floors are
    evaluated at the lower envelopes, which bounds the rates from below
    on the whole cone box only under monotonicity.
    """
    _require_theory_regime(params, kin)
    if grid_points < 2:
        raise ValueError(f"need at least 2 grid points, got {grid_points}")
    lo, hi = rate_range
    if not (0.0 < lo < hi):
        raise ValueError(f"rate_range must be increasing and positive, got {rate_range}")

    geo = _sigma_geometry(params, kin, grid_n, safety)
    f1 = float(kin.f[0](1.0))
    g1 = float(kin.g[0](1.0))
    a11 = float(kin.alpha[0](1.0, 1.0))
    b11 = float(kin.beta[0](1.0, 1.0))
    yu, yv = params.yu[0], params.yv[0]
    lam1, lam2 = geo.lam1, geo.lam2

    growth_u = f1 - lam1 * (1.0 + a11 / yu)
    growth_v = g1 - lam2 * (1.0 + b11 / yv)

    thetas = np.geomspace(lo, hi, grid_points)
    rhos = np.geomspace(lo, hi, grid_points)
    m3 = lam1 + thetas / (yu * lam1) - (f1 + b11)                      # (T,)
    m4 = lam2 + rhos[None, :] / (yv * lam2) - (g1 + a11 / thetas[:, None])  # (T, R)
    sel_theta = np.minimum(geo.theta_cap - thetas, geo.alpha_floor - thetas)
    m5 = np.minimum(sel_theta[:, None], (geo.beta_floor - rhos)[None, :])   # (T, R)

    score = np.minimum(np.minimum(m3[:, None], m4), m5)
    score = np.minimum(score, min(growth_u, growth_v))
    best_flat = int(np.argmax(score))
    it, ir = np.unravel_index(best_flat, score.shape)
    theta_best = float(thetas[it])
    rho_best = float(rhos[ir])

    feasible_mask = (
        (growth_u > 0.0) & (growth_v > 0.0)
        & (m3[:, None] >= 0.0) & (m4 >= 0.0) & (m5 >= 0.0)
    )
    feasible_count = int(np.count_nonzero(feasible_mask))

    clauses = (
        ClauseMargin("isolated-growth-beats-washout", growth_u, growth_u > 0.0, strict=True),
        ClauseMargin("attached-growth-beats-washout", growth_v, growth_v > 0.0, strict=True),
        ClauseMargin("isolated-yield-balance", float(m3[it]), float(m3[it]) >= 0.0),
        ClauseMargin("attached-yield-balance", float(m4[it, ir]), float(m4[it, ir]) >= 0.0),
        ClauseMargin("exchange-floor-selection", float(m5[it, ir]), float(m5[it, ir]) >= 0.0),
    )
    binding = min(clauses, key=lambda cl: cl.margin).name
    return CoexistenceReport(
        clauses=clauses,
        theta=theta_best,
        rho=rho_best,
        feasible=feasible_count > 0,
        feasible_count=feasible_count,
        binding_clause=binding,
        normalization_ok=geo.normalization_ok,
        k_margin=geo.k,
        k_prime_margin=geo.k_prime,
        theta_cap=geo.theta_cap,
        alpha_floor=geo.alpha_floor,
        beta_floor=geo.beta_floor,
        eigenvalue_substrate=geo.lam0,
        eigenvalue_u=lam1,
        eigenvalue_v=lam2,
        grid_n=grid_n,
        grid_points=grid_points,
    )
