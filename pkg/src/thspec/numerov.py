"""Independent grid oracle: two-sided Numerov shooting for the s-wave
radial equation R'' = (2*mu/hbar^2)(V(r) - E) R on a uniform grid.

This module deliberately knows nothing about the closed-form solution;
it consumes only the potential and the molecule parameters. Eigenvalues
are bracketed by the node-count staircase of the composite two-sided
solution (non-decreasing in E, equal to n at the n-th eigenvalue) and
then polished by bisection on a scale-free Wronskian mismatch of the
inward and outward solutions at the outermost classical turning point.

Boundary handling: the inward integration is seeded with a decaying
tail (R(r_hi) = 0, R(r_hi - h) = 1e-30); the outward integration
imposes R = 0 at the inner wall. When the wall is so steep that the
discrete scheme cannot represent the decay (h^2*Q/12 > 1/4), the start
point moves outward to the first grid index where it can; the skipped
region lies thousands of e-folds below the barrier, far under the
method's own discretization error. Growing solutions are rescaled
in place whenever they exceed 1e100; the mismatch and node counts are
scale-free, so this is invisible to the results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .constants import DEFAULT_CONSTANTS, MoleculeParams, PhysicalConstants
from .errors import ConvergenceError, DomainError, GridError, UnboundLevelError
from .tietz_hua import pole_radius, th_potential, validity_domain

__all__ = [
    "RadialGrid",
    "OracleEigenvalue",
    "default_grid",
    "integrate_at_energy",
    "find_eigenvalue",
]

_DEFAULT_POINTS = 20000
_MIN_POINTS = 16          # hard floor; < 2000 is a diagnostics-only regime
_RECOMMENDED_POINTS = 2000
_EDGE_FRACTION = 1e-9
_NODE_BISECT_ITERS = 48
_DEFECT_BISECT_TOL = 1e-10  # eV; below the contracted 1e-9
_WALL_Q12_MAX = 0.25


@dataclass(frozen=True)
class RadialGrid:
    """Uniform radial grid. Accuracy contracts assume n_points >= 2000;
    coarser grids are permitted for convergence diagnostics only."""

    r_lo: float
    r_hi: float
    n_points: int
    step: float = 0.0

    def __post_init__(self):
        if not self.r_lo < self.r_hi:
            raise GridError(f"need r_lo < r_hi, got [{self.r_lo!r}, {self.r_hi!r}]")
        if self.n_points < _MIN_POINTS:
            raise GridError(f"n_points must be >= {_MIN_POINTS}, got {self.n_points}")
        object.__setattr__(self, "step", (self.r_hi - self.r_lo) / (self.n_points - 1))

    @property
    def is_coarse(self) -> bool:
        return self.n_points < _RECOMMENDED_POINTS

    def points(self) -> np.ndarray:
        return np.linspace(self.r_lo, self.r_hi, self.n_points)

    def refined(self) -> "RadialGrid":
        """Same interval at half the step (2*n - 1 points)."""
        return RadialGrid(self.r_lo, self.r_hi, 2 * self.n_points - 1)


@dataclass(frozen=True)
class OracleEigenvalue:
    """Converged eigenvalue: node count n, energy in eV, and the residual
    matching mismatch at the turning point. refinement_delta carries the
    step-halving energy shift when the caller requested the check."""

    n: int
    energy: float
    residual_mismatch: float
    refinement_delta: float | None = None


def default_grid(m: MoleculeParams, n_points: int = _DEFAULT_POINTS) -> RadialGrid:
    """Grid spanning the same validity domain the closed-form wavefunctions
    use (pole-excluding inner edge, r_e + 25/b_h outer edge)."""
    r_lo, r_hi = validity_domain(m)
    return RadialGrid(r_lo, r_hi, n_points)


@njit(cache=True)
def _shoot(q12: np.ndarray, i0: int, ic: int) -> tuple[int, float]:
    """Propagate outward from i0 and inward from the last point; return
    (composite node count, scale-free Wronskian mismatch at ic).

    q12[i] = (h^2/12) * Q_i with Q = (2*mu/hbar^2)(V - E). The Numerov
    step for y'' = Q y reads
        (1 - q12[i+1]) y[i+1] = (2 + 10 q12[i]) y[i] - (1 - q12[i-1]) y[i-1].
    """
    npts = q12.shape[0]

    yl = np.zeros(ic + 2)
    yl[i0] = 0.0
    yl[i0 + 1] = 1e-30
    nodes = 0
    for i in range(i0 + 1, ic + 1):
        yl[i + 1] = ((2.0 + 10.0 * q12[i]) * yl[i] - (1.0 - q12[i - 1]) * yl[i - 1]) / (
            1.0 - q12[i + 1]
        )
        if abs(yl[i + 1]) > 1e100:
            yl[i - 1 : i + 2] /= 1e100
        # the [ic, ic+1] interval belongs to the inward sweep
        if i < ic and yl[i + 1] * yl[i] < 0.0:
            nodes += 1

    yr = np.zeros(npts)
    yr[npts - 1] = 0.0
    yr[npts - 2] = 1e-30
    for i in range(npts - 2, ic - 1, -1):
        yr[i - 1] = ((2.0 + 10.0 * q12[i]) * yr[i] - (1.0 - q12[i + 1]) * yr[i + 1]) / (
            1.0 - q12[i - 1]
        )
        if abs(yr[i - 1]) > 1e100:
            yr[i - 1 : i + 2] /= 1e100
        if ic < i < npts - 1 and yr[i - 1] * yr[i] < 0.0:
            nodes += 1

    # Wronskian of the two solutions across (ic-1, ic): vanishes exactly
    # when they join smoothly, i.e. at a discrete eigenvalue. Normalized
    # symmetrically so propagation rescalings (positive factors) cancel.
    wron = yl[ic - 1] * yr[ic] - yr[ic - 1] * yl[ic]
    scale = abs(yl[ic - 1] * yr[ic]) + abs(yr[ic - 1] * yl[ic])
    if scale == 0.0:
        return nodes, np.inf
    return nodes, wron / scale


def _q12_profile(
    e: float, m: MoleculeParams, g: RadialGrid, constants: PhysicalConstants
) -> tuple[np.ndarray, np.ndarray]:
    r = g.points()
    v = np.asarray(th_potential(r, m))
    q = 2.0 * m.mu / constants.hbar_c**2 * (v - e)
    return (g.step * g.step / 12.0) * q, v


def integrate_at_energy(
    e: float,
    m: MoleculeParams,
    g: RadialGrid,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> tuple[int, float]:
    """One two-sided shot at trial energy e: (node_count, match_defect).

    The matching point is the outermost grid index with V <= e. Raises
    GridError if the grid contains the potential pole, DomainError for
    e outside (0, D).
    """
    if not 0.0 < e < m.d_e:
        raise DomainError(f"trial energy must lie in (0, D), got {e!r}")
    r_s = pole_radius(m)
    if r_s is not None and g.r_lo <= r_s:
        raise GridError(
            f"grid [{g.r_lo!r}, {g.r_hi!r}] contains the potential pole at r_s = {r_s!r}"
        )
    q12, v = _q12_profile(e, m, g, constants)

    below = np.nonzero(v <= e)[0]
    ic = int(below[-1]) if below.size else g.n_points // 2
    ic = min(max(ic, 2), g.n_points - 3)

    # Steep-wall start: first index the discrete scheme can resolve.
    resolvable = np.nonzero(q12 <= _WALL_Q12_MAX)[0]
    i0 = int(resolvable[0]) if resolvable.size else 0
    if i0 > ic - 8:
        i0 = max(ic - 8, 0)

    nodes, defect = _shoot(q12, i0, ic)
    return nodes, float(defect)


def _node_count(e, m, g, constants) -> int:
    return integrate_at_energy(e, m, g, constants)[0]


def _staircase_edge(
    n: int, e_lo: float, e_hi: float, m, g, constants
) -> tuple[float, float]:
    """Bisect to the energy where the node count first exceeds n.
    Requires count(e_lo) <= n < count(e_hi); returns the final bracket."""
    lo, hi = e_lo, e_hi
    for _ in range(_NODE_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if _node_count(mid, m, g, constants) > n:
            hi = mid
        else:
            lo = mid
    return lo, hi


def find_eigenvalue(
    n: int,
    m: MoleculeParams,
    g: RadialGrid | None = None,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
    refine_check: bool = False,
) -> OracleEigenvalue:
    """Locate level n without reference to the closed form.

    Node-count bisection pins the interval on which the composite count
    equals n (the eigenvalue lies inside by the oscillation theorem);
    the matching defect changes sign exactly once there and is bisected
    to below 1e-9 eV. With refine_check=True the search is repeated at
    half the step and the energy shift recorded.
    """
    if n < 0:
        raise DomainError("quantum number must be non-negative")
    if g is None:
        g = default_grid(m)

    e_min = _EDGE_FRACTION * m.d_e
    e_max = m.d_e * (1.0 - _EDGE_FRACTION)
    count_lo = _node_count(e_min, m, g, constants)
    count_hi = _node_count(e_max, m, g, constants)
    if count_lo > n:
        raise UnboundLevelError(n, f"node count at the bottom of the well is already {count_lo}")
    if count_hi <= n:
        raise UnboundLevelError(n, f"only {count_hi} nodes fit below the dissociation limit")

    # Window on which the composite node count is exactly n.
    if n == 0:
        window_lo = e_min
    else:
        window_lo = _staircase_edge(n - 1, e_min, e_max, m, g, constants)[1]
    window_hi = _staircase_edge(n, window_lo, e_max, m, g, constants)[0]

    lo, hi = window_lo, window_hi
    _, d_lo = integrate_at_energy(lo, m, g, constants)
    _, d_hi = integrate_at_energy(hi, m, g, constants)
    if not (math.isfinite(d_lo) and math.isfinite(d_hi)):
        raise ConvergenceError(f"matching defect not finite on level-{n} window")
    if d_lo * d_hi > 0.0:
        raise ConvergenceError(
            f"no defect sign change on level-{n} window "
            f"[{lo!r}, {hi!r}] (defects {d_lo!r}, {d_hi!r})"
        )
    while hi - lo > _DEFECT_BISECT_TOL:
        mid = 0.5 * (lo + hi)
        _, d_mid = integrate_at_energy(mid, m, g, constants)
        if d_mid == 0.0:
            lo = hi = mid
            break
        if d_lo * d_mid < 0.0:
            hi = mid
        else:
            lo, d_lo = mid, d_mid
    energy = 0.5 * (lo + hi)

    nodes, defect = integrate_at_energy(energy, m, g, constants)
    if nodes != n:
        raise ConvergenceError(
            f"converged solution has {nodes} nodes, expected {n} (E = {energy!r})"
        )

    refinement_delta = None
    if refine_check:
        refined = find_eigenvalue(n, m, g.refined(), constants, refine_check=False)
        refinement_delta = refined.energy - energy

    return OracleEigenvalue(
        n=n, energy=energy, residual_mismatch=abs(defect), refinement_delta=refinement_delta
    )
