"""Principal eigenvalue of the transport operator on (0, 1).

The washout rate of the chemostat is governed by the smallest eigenvalue
of ``-d*phi'' + phi'`` under the feed-balance condition
``-d*phi'(0) + phi(0) = 0`` and no-flux outlet ``phi'(1) = 0``.  This
eigenvalue always exceeds 1, decreases in the diffusivity d, and its
positive eigenfunction spans a dynamic range of order ``exp(1/(2d))``,
which is what makes small-d computations delicate.

The solver discretizes with the second-order stencils in
:mod:`flocstat.operators` and runs inverse power iteration (shift 0)
with a tridiagonal solve per sweep.  The mirrored variant (advection
reversed, Robin row at the outlet) has the same spectrum — its matrix is
the index-reversal of the other — and is provided because the blow-up
functional weights mass with its eigenfunction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
from scipy.linalg import solve_banded

from .operators import Array, BoundaryVariant, band_matvec, operator_bands

__all__ = [
    "BoundaryVariant",
    "EigenPair",
    "EigenSolverError",
    "LambdaBracket",
    "solve_principal",
    "rescale_eigenfunction",
    "lambda_bracket",
]


class EigenSolverError(RuntimeError):
    """Inverse power iteration failed to converge within the iteration cap."""

    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


@dataclass(frozen=True)
class EigenPair:
    """Principal eigenvalue and positive eigenfunction on the grid.

    Attributes:
        d: diffusivity the pair belongs to.
        n: number of grid nodes.
        variant: which boundary row carries the Robin condition.
        value: principal eigenvalue (strictly above 1 on admissible grids).
        function: eigenfunction sampled on the uniform grid, strictly
            positive; normalized to sup = 1 by the solver, possibly
            rescaled afterwards.
        iterations: inverse-power iterations used.
        residual: sup-norm of the eigen-equation defect relative to the
            sup of the eigenfunction (scale-invariant, so rescaling
            leaves it unchanged).
    """

    d: float
    n: int
    variant: BoundaryVariant
    value: float
    function: Array
    iterations: int
    residual: float

    @property
    def x(self) -> Array:
        return np.linspace(0.0, 1.0, self.n)


def solve_principal(
    d: float,
    n: int = 401,
    variant: BoundaryVariant = BoundaryVariant.INFLOW_ROBIN,
    tol: float = 1e-12,
    max_iter: int = 10_000,
) -> EigenPair:
    """Principal eigenpair by inverse power iteration.

    The iteration repeatedly solves ``A z = phi``; because A is an
    irreducible tridiagonal M-matrix on grids with cell Peclet number
    below 1 (``h < 2d``), its inverse is strictly positive and the
    iteration converges to the unique positive eigenfunction from the
    constant start.  Convergence is declared when the Rayleigh-quotient
    update stalls below ``tol`` relatively; the cap is generous because
    the spectral gap closes as d shrinks (iteration count grows roughly
    like 1/d below d of a few hundredths).
    """
    if not (isinstance(n, int) and n >= 16):
        raise ValueError(f"eigen solves need at least 16 nodes, got {n}")
    if d <= 0:
        raise ValueError(f"diffusivity must be positive, got {d}")
    h = 1.0 / (n - 1)
    if h >= 2.0 * d:
        raise ValueError(
            f"grid too coarse for d={d}: cell Peclet h/(2d) = {h / (2 * d):.3f} >= 1; "
            f"use n > {1 + math.ceil(1.0 / (2.0 * d))}"
        )
    ab = operator_bands(d, n, variant)
    # the eigen-residual cannot drop below the rounding noise of applying A,
    # which scales with the largest band entry (about 2d/h^2); accept an
    # iterate at that floor even when the Rayleigh quotient keeps jittering
    residual_floor = 64.0 * np.finfo(float).eps * float(np.max(np.abs(ab)))
    phi = np.ones(n)
    lam = 0.0
    converged = False
    its = 0
    for its in range(1, max_iter + 1):
        z = solve_banded((1, 1), ab, phi)
        zmax = float(np.max(np.abs(z)))
        if not np.isfinite(zmax) or zmax == 0.0:
            raise EigenSolverError(
                f"inverse iteration broke down at d={d}, n={n} (iterate max {zmax})",
                residual=float("nan"), iterations=its,
            )
        phi_new = z / zmax
        applied = band_matvec(ab, phi_new)
        lam_new = float(applied @ phi_new / (phi_new @ phi_new))
        resid_now = float(np.max(np.abs(applied - lam_new * phi_new)))
        converged = (
            abs(lam_new - lam) <= tol * max(1.0, abs(lam_new))
            or resid_now <= residual_floor
        )
        phi, lam = phi_new, lam_new
        if converged:
            break
    phi = phi / np.max(np.abs(phi))
    if phi[int(np.argmax(np.abs(phi)))] < 0:
        phi = -phi
    resid = float(np.max(np.abs(band_matvec(ab, phi) - lam * phi)) / np.max(np.abs(phi)))
    if not converged:
        raise EigenSolverError(
            f"no convergence for d={d}, n={n} after {max_iter} iterations "
            f"(last residual {resid:.3e}); the spectral gap shrinks with d — "
            f"raise max_iter or loosen tol",
            residual=resid, iterations=max_iter,
        )
    return EigenPair(d=float(d), n=n, variant=variant, value=lam, function=phi,
                     iterations=its, residual=resid)


def rescale_eigenfunction(
    pair: EigenPair,
    mode: str = "max_one",
    *,
    value: float = 1.0,
    other: EigenPair | None = None,
    factor: float = 1.0,
) -> EigenPair:
    """Return a copy of the pair with the eigenfunction rescaled.

    Modes:
        ``max_one``      — sup equal to 1 (the solver's normalization).
        ``min_value``    — minimum equal to ``value`` (seed strictly
                           positive profiles).
        ``dominated_by`` — largest positive multiple with
                           ``phi <= factor * other.function`` pointwise;
                           equality is attained at the binding node.

    The eigenvalue and the (relative) residual are scale-invariant and
    carried over unchanged.
    """
    phi = pair.function
    if mode == "max_one":
        scale = 1.0 / float(np.max(phi))
    elif mode == "min_value":
        lo = float(np.min(phi))
        if lo <= 0:
            raise ValueError("eigenfunction minimum is not positive; cannot rescale")
        if value <= 0:
            raise ValueError(f"min_value target must be positive, got {value}")
        scale = value / lo
    elif mode == "dominated_by":
        if other is None:
            raise ValueError("dominated_by mode needs the dominating pair")
        if other.n != pair.n:
            raise ValueError(f"grids differ: {pair.n} vs {other.n} nodes")
        if factor <= 0:
            raise ValueError(f"dominated_by factor must be positive, got {factor}")
        ceiling = factor * other.function
        if np.any(ceiling <= 0):
            raise ValueError("dominating function must be strictly positive")
        scale = float(np.min(ceiling / phi))
    else:
        raise ValueError(f"unknown rescale mode {mode!r}")
    return replace(pair, function=phi * scale)


class LambdaBracket(NamedTuple):
    """Enclosure for the principal eigenvalue at one diffusivity.

    For small d (below 1/(2*pi)) the enclosure is the two-sided bracket
    ``(1/(4d) + pi^2 d/4, 1/(4d) + pi^2 d)`` and ``enclosure`` is True.
    For larger d only the one-sided tail bound holds — the eigenvalue
    approaches 1 from above — so the marker ``(1, inf)`` is returned
    with ``enclosure`` False.
    """

    lower: float
    upper: float
    enclosure: bool


def lambda_bracket(d: float) -> LambdaBracket:
    """Closed-form enclosure of the principal eigenvalue (see LambdaBracket)."""
    if d <= 0:
        raise ValueError(f"diffusivity must be positive, got {d}")
    if d < 1.0 / (2.0 * math.pi):
        lo = 1.0 / (4.0 * d) + math.pi**2 * d / 4.0
        hi = 1.0 / (4.0 * d) + math.pi**2 * d
        return LambdaBracket(lo, hi, True)
    return LambdaBracket(1.0, math.inf, False)
