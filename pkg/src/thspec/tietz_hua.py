"""Tietz-Hua specialization: potential, dimensionless mapping, closed-form
bound-state spectrum (with the Morse reduction), and normalized radial
wavefunctions.

The s-wave radial problem

    R''(r) + [eps - d * f(r)^2] R(r) = 0,
    f(r) = (1 - u)/(1 - c_h*u),  u = exp(-b_h*(r - r_e)),
    eps = 2*mu*E/hbar^2,  d = 2*mu*D/hbar^2,

maps under s = exp(-b_h*(r - r_e)) onto the parametric template of
`thspec.nu` with

    alpha1 = 1, alpha2 = alpha3 = c_h,
    xi1 = (d - eps*c_h^2)/b_h^2, xi2 = 2(d - eps*c_h)/b_h^2,
    xi3 = (d - eps)/b_h^2.

Two independent routes to the eigenvalues are provided. `th_energy`
root-finds the engine's quantization residual in E over (0, D).
`th_energy_closed` exploits that the residual is linear in
t = sqrt(d - eps)/b_h: the eps-dependence of the non-sqrt terms cancels
(alpha7 + 2*alpha3*alpha8 = 2*d*(c_h - 1)/b_h^2), leaving

    t = -[c_h*(n^2 + n + 1/2) + (2n+1)*w + 2*d*(c_h - 1)/b_h^2]
        / [(2n+1)*c_h + 2*w],      w = sqrt(c_h^2/4 + d*(c_h-1)^2/b_h^2),

and E = D - (hbar*b_h*t)^2/(2*mu). A published variant of this equation
circulates with the n-polynomial printed as n^2 + 3n + 1/2 and without
the square root on one occurrence of t; that variant stays available as
the diagnostic `printed_energy_equation_residual`, and the golden-table
tests adjudicate between the forms (the n^2 + n + 1/2 reduction is the
one that reproduces the reference spectra).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import DEFAULT_CONSTANTS, MoleculeParams, PhysicalConstants
from .errors import ConvergenceError, DomainError, SingularityError, UnboundLevelError
from .nu import (
    NUBase,
    NUCoefficients,
    WavefunctionForm,
    derive_coefficients,
    energy_residual,
    tau_prime,
    wavefunction_form,
)
from .special import jacobi_poly, laguerre_poly

__all__ = [
    "DimensionlessProblem",
    "EnergyLevel",
    "RadialWavefunction",
    "th_potential",
    "pole_radius",
    "validity_domain",
    "dimensionless",
    "nu_base_for_th",
    "th_energy",
    "th_energy_closed",
    "morse_energy",
    "morse_variant",
    "n_max",
    "printed_energy_equation_residual",
    "radial_wavefunction",
]

# Root bracketing for th_energy: scan resolution over (delta, D - delta)
# and bisection depth. 60 bisections push the bracket below one ulp of E.
_SCAN_POINTS = 512
_BISECT_ITERS = 60
_EDGE_FRACTION = 1e-9

# Wavefunction domain and normalization quadrature.
_R_LO_FLOOR = 1e-6          # A
_TAIL_EFOLDS = 25.0         # r_hi = r_e + 25/b_h
_GL_POINTS = 64
_GL_PANELS = 64
_NORM_RTOL = 1e-8


@dataclass(frozen=True)
class DimensionlessProblem:
    """Dimensionless form of the radial problem at one trial energy.

    d and eps are in 1/A^2, alpha = b_h*r_e; x(r) and s(r) give the
    stretched coordinate and the transformation variable.
    """

    d: float
    eps: float
    alpha: float
    c_h: float
    r_e: float
    b_h: float

    def __post_init__(self):
        if not self.d > 0.0:
            raise DomainError(f"d must be positive, got {self.d!r}")
        if not self.alpha > 0.0:
            raise DomainError(f"alpha must be positive, got {self.alpha!r}")

    def x(self, r):
        return (np.asarray(r, dtype=float) - self.r_e) / self.r_e

    def s(self, r):
        return np.exp(-self.alpha * self.x(r))


@dataclass(frozen=True)
class EnergyLevel:
    """One bound vibrational level.

    energy is E_n0 in eV measured from the potential minimum,
    energy_minus_d the tabulation convention E_n0 - D, and t the
    dimensionless sqrt(d - eps)/b of the level.
    """

    n: int
    energy: float
    energy_minus_d: float
    t: float

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("quantum number must be non-negative")
        if not self.t > 0.0:
            raise UnboundLevelError(self.n, f"t = {self.t!r} <= 0")


def th_potential(r, m: MoleculeParams):
    """Potential energy in eV at internuclear distance r (A, scalar or array).

    Raises SingularityError when r falls within 1e-9 A of the pole radius
    (only possible for 0 < c_h < 1), DomainError for r <= 0.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0.0):
        raise DomainError("r must be positive")
    r_s = pole_radius(m)
    if r_s is not None and np.any(np.abs(r_arr - r_s) < 1e-9):
        raise SingularityError(r_s)
    u = np.exp(-m.b_h * (r_arr - m.r_e))
    v = m.d_e * ((1.0 - u) / (1.0 - m.c_h * u)) ** 2
    return v if v.ndim else float(v)


def pole_radius(m: MoleculeParams) -> float | None:
    """Radius where the potential denominator vanishes, or None when the
    shape constant admits no pole (c_h <= 0)."""
    if 0.0 < m.c_h < 1.0:
        return m.r_e + math.log(m.c_h) / m.b_h
    return None


def validity_domain(m: MoleculeParams) -> tuple[float, float]:
    """Radial interval (r_lo, r_hi) on which wavefunctions are evaluated
    and normalized.

    r_hi = r_e + 25/b_h truncates the exponentially dead outer tail;
    r_lo sits just outside the pole wall when the pole exists at r > 0,
    else at the 1e-6 A floor.
    """
    r_s = pole_radius(m)
    r_lo = _R_LO_FLOOR if r_s is None else max(_R_LO_FLOOR, r_s + 1e-6)
    return r_lo, m.r_e + _TAIL_EFOLDS / m.b_h


def dimensionless(
    m: MoleculeParams, e: float, constants: PhysicalConstants = DEFAULT_CONSTANTS
) -> DimensionlessProblem:
    """Dimensionless problem at trial energy e (eV), 0 < e < D required."""
    if not 0.0 < e < m.d_e:
        raise DomainError(f"trial energy must lie in (0, D) = (0, {m.d_e!r}), got {e!r}")
    two_mu_over_hbar2 = 2.0 * m.mu / constants.hbar_c**2
    return DimensionlessProblem(
        d=two_mu_over_hbar2 * m.d_e,
        eps=two_mu_over_hbar2 * e,
        alpha=m.b_h * m.r_e,
        c_h=m.c_h,
        r_e=m.r_e,
        b_h=m.b_h,
    )


def nu_base_for_th(
    m: MoleculeParams, e: float, constants: PhysicalConstants = DEFAULT_CONSTANTS
) -> NUBase:
    """Template coefficients of the transformed radial equation at trial
    energy e. Uses r_e^2/alpha^2 == 1/b_h^2 throughout."""
    prob = dimensionless(m, e, constants)
    inv_b2 = 1.0 / (m.b_h * m.b_h)
    return NUBase(
        alpha1=1.0,
        alpha2=m.c_h,
        alpha3=m.c_h,
        xi1=inv_b2 * (prob.d - prob.eps * m.c_h**2),
        xi2=2.0 * inv_b2 * (prob.d - prob.eps * m.c_h),
        xi3=inv_b2 * (prob.d - prob.eps),
    )


def _coefficients_at(
    m: MoleculeParams, e: float, constants: PhysicalConstants
) -> NUCoefficients:
    return derive_coefficients(nu_base_for_th(m, e, constants))


def _level_from_energy(
    n: int, m: MoleculeParams, e: float, t: float
) -> EnergyLevel:
    if not 0.0 < e < m.d_e:
        raise UnboundLevelError(n, f"root E = {e!r} outside (0, D)")
    return EnergyLevel(n=n, energy=e, energy_minus_d=e - m.d_e, t=t)


def th_energy(
    n: int, m: MoleculeParams, constants: PhysicalConstants = DEFAULT_CONSTANTS
) -> EnergyLevel:
    """Level n by bracketed bisection on the engine's quantization residual.

    The residual is monotone in E on (0, D); a sign-change scan on a
    512-point grid followed by 60 bisections locates the root to well
    below 1e-10 eV. Raises UnboundLevelError when no sign change exists
    (n exceeds the well capacity).
    """
    if n < 0:
        raise DomainError("quantum number must be non-negative")
    d_e = m.d_e
    delta = _EDGE_FRACTION * d_e

    def residual(e: float) -> float:
        return energy_residual(n, _coefficients_at(m, e, constants))

    grid = [float(e) for e in np.linspace(delta, d_e - delta, _SCAN_POINTS)]
    values = [residual(e) for e in grid]
    bracket = None
    for i in range(len(grid) - 1):
        if values[i] == 0.0:
            bracket = (grid[i], grid[i])
            break
        if values[i] * values[i + 1] < 0.0:
            bracket = (grid[i], grid[i + 1])
            break
    if bracket is None:
        if values[-1] == 0.0:
            bracket = (grid[-1], grid[-1])
        else:
            raise UnboundLevelError(n, "no sign change of the quantization residual in (0, D)")

    lo, hi = bracket
    f_lo = residual(lo)
    for _ in range(_BISECT_ITERS):
        if hi == lo:
            break
        mid = 0.5 * (lo + hi)
        f_mid = residual(mid)
        if f_mid == 0.0:
            lo = hi = mid
            break
        if f_lo * f_mid < 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    e_root = 0.5 * (lo + hi)

    coeffs = _coefficients_at(m, e_root, constants)
    if tau_prime(coeffs) >= 0.0:
        raise ConvergenceError(
            f"method applicability violated at E = {e_root!r}: tau' = {tau_prime(coeffs)!r} >= 0"
        )
    return _level_from_energy(n, m, e_root, coeffs.sqrt_alpha8)


def _t_quantized(n: int, m: MoleculeParams, q_poly: float, constants: PhysicalConstants) -> float:
    """Solve the quantization condition, linear in t, for given n-polynomial."""
    d = 2.0 * m.mu * m.d_e / constants.hbar_c**2
    inv_b2 = 1.0 / (m.b_h * m.b_h)
    w = math.sqrt(0.25 * m.c_h**2 + d * (m.c_h - 1.0) ** 2 * inv_b2)
    denom = (2 * n + 1) * m.c_h + 2.0 * w
    if denom <= 0.0:
        raise UnboundLevelError(n, "degenerate quantization condition")
    return -(m.c_h * q_poly + (2 * n + 1) * w + 2.0 * d * (m.c_h - 1.0) * inv_b2) / denom


def th_energy_closed(
    n: int, m: MoleculeParams, constants: PhysicalConstants = DEFAULT_CONSTANTS
) -> EnergyLevel:
    """Level n from the linear-in-t reduction of the quantization condition.

    Agrees with `th_energy` to the rounding floor; kept as an independent
    arithmetic path for cross-validation.
    """
    if n < 0:
        raise DomainError("quantum number must be non-negative")
    t = _t_quantized(n, m, n * n + n + 0.5, constants)
    if t <= 0.0:
        raise UnboundLevelError(n, f"t = {t!r} <= 0")
    e = m.d_e - (constants.hbar_c * m.b_h * t) ** 2 / (2.0 * m.mu)
    return _level_from_energy(n, m, e, t)


def morse_energy(
    n: int, m: MoleculeParams, constants: PhysicalConstants = DEFAULT_CONSTANTS
) -> EnergyLevel:
    """Level n of the Morse reduction (shape constant -> 0 at fixed Morse
    constant beta, so the exponent parameter is beta, not b_h).

    With sigma = sqrt(2*mu*D)/(beta*hbar):

        E_n0 = D * [1 - (2n + 1 - 2*sigma)^2 / (4*sigma^2)],

    valid below the vertex 2n + 1 < 2*sigma.
    """
    if n < 0:
        raise DomainError("quantum number must be non-negative")
    if m.beta is None:
        raise DomainError(f"{m.name}: Morse spectrum requires the beta parameter")
    sigma = math.sqrt(2.0 * m.mu * m.d_e) / (m.beta * constants.hbar_c)
    t = sigma - n - 0.5
    if t <= 0.0:
        raise UnboundLevelError(n, f"2n+1 = {2 * n + 1} is not below the vertex 2*sigma = {2 * sigma!r}")
    e = m.d_e * (1.0 - (2 * n + 1 - 2.0 * sigma) ** 2 / (4.0 * sigma**2))
    return _level_from_energy(n, m, e, t)


def morse_variant(m: MoleculeParams) -> MoleculeParams:
    """The molecule with its shape constant set to zero: a Morse oscillator
    with exponent beta. Used by the grid oracle to check the c_h = 0 column."""
    if m.beta is None:
        raise DomainError(f"{m.name}: Morse variant requires the beta parameter")
    return MoleculeParams(
        name=m.name,
        c_h=0.0,
        mu=m.mu,
        b_h=m.beta,
        r_e=m.r_e,
        beta=m.beta,
        d_e=m.d_e,
        mu_1e23_g=m.mu_1e23_g,
        d_e_cm=m.d_e_cm,
    )


def n_max(m: MoleculeParams, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> int:
    """Largest n for which a bound level exists (operational definition:
    t(n) > 0 and the resulting E falls inside (0, D)).

    Propagates UnboundLevelError when not even the ground state binds.
    """
    th_energy_closed(0, m, constants)
    n = 0
    while True:
        try:
            th_energy_closed(n + 1, m, constants)
        except UnboundLevelError:
            return n
        n += 1
        if n > 100000:
            raise ConvergenceError("n_max search did not terminate")


def printed_energy_equation_residual(
    n: int,
    e: float,
    m: MoleculeParams,
    n_poly: str = "printed",
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> float:
    """Diagnostic: the circulated closed-form energy equation exactly as
    printed, with its (d/b^2)(c_h - 1) term, its squared occurrence of t,
    and a selectable n-polynomial: "printed" -> n^2 + 3n + 1/2,
    "derived" -> n^2 + n + 1/2.

    The golden-table suite evaluates this at reference eigenvalues to
    record that neither variant of the printed equation is consistent,
    whereas the reduction used by `th_energy_closed` is.
    """
    if n_poly == "printed":
        poly = n * n + 3 * n + 0.5
    elif n_poly == "derived":
        poly = n * n + n + 0.5
    else:
        raise ValueError(f"n_poly must be 'printed' or 'derived', got {n_poly!r}")
    prob = dimensionless(m, e, constants)
    inv_b2 = 1.0 / (m.b_h * m.b_h)
    t = math.sqrt(prob.d - prob.eps) / m.b_h
    w = math.sqrt(0.25 * m.c_h**2 + prob.d * (m.c_h - 1.0) ** 2 * inv_b2)
    return (
        (2 * n + 1) * (w + m.c_h * t)
        + prob.d * (m.c_h - 1.0) * inv_b2
        + 2.0 * w * t * t
        + m.c_h * poly
    )


@dataclass(frozen=True)
class RadialWavefunction:
    """Normalized bound-state radial wavefunction R_n0(r).

    The closed form is norm * s^p * (1 - c_h*s)^q * P_n(1 - 2*c_h*s)
    (Laguerre variant at c_h = 0); evaluation assembles the power factors
    in log space, so extreme exponents underflow to zero instead of
    overflowing. Sign convention: positive outer tail (r -> infinity).
    """

    level: EnergyLevel
    form: WavefunctionForm
    norm: float
    log_norm: float
    domain: tuple[float, float]
    molecule: MoleculeParams

    @property
    def n(self) -> int:
        return self.level.n

    def _log_factor_and_poly(self, r):
        m = self.molecule
        r = np.asarray(r, dtype=float)
        if np.any(r <= 0.0):
            raise DomainError("r must be positive")
        s = np.exp(-m.b_h * (r - m.r_e))
        log_s = -m.b_h * (r - m.r_e)
        f = self.form
        if f.laguerre_limit:
            g = f.s_exponent * log_s + f.exp_rate * s
            poly = laguerre_poly(self.n, f.laguerre_order, f.laguerre_scale * s)
        else:
            bracket = 1.0 - 0.5 * f.argument_scale * s
            if np.any(bracket <= 0.0):
                raise DomainError("r is on the wrong side of the potential pole")
            g = f.s_exponent * log_s + f.bracket_exponent * np.log(bracket)
            poly = jacobi_poly(self.n, f.jacobi_a, f.jacobi_b, 1.0 - f.argument_scale * s)
        return g, np.asarray(poly)

    def evaluate(self, r):
        """R(r) for scalar or array r (A)."""
        g, poly = self._log_factor_and_poly(r)
        out = poly * np.exp(self.log_norm + g)
        return out if out.ndim else float(out)

    def sample(self, num: int) -> tuple[np.ndarray, np.ndarray]:
        """num uniformly spaced (r, R(r)) samples across the domain."""
        r = np.linspace(self.domain[0], self.domain[1], num)
        return r, self.evaluate(r)

    def count_nodes(self, samples: int = 8001) -> int:
        """Interior zeros, counted as sign changes on a dense uniform grid
        (exact-zero and underflowed samples are skipped)."""
        _, values = self.sample(samples)
        interior = values[1:-1]
        signs = np.sign(interior[interior != 0.0])
        return int(np.sum(signs[1:] * signs[:-1] < 0.0))


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_GL_POINTS)


def _panel_integral(f, lo: float, hi: float, panels: int) -> float:
    """Composite Gauss-Legendre integral of f over [lo, hi]."""
    edges = np.linspace(lo, hi, panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    halves = 0.5 * np.diff(edges)
    total = 0.0
    for mid, half in zip(mids, halves):
        total += half * float(np.sum(_GL_WEIGHTS * f(mid + half * _GL_NODES)))
    return total


def radial_wavefunction(
    n: int,
    m: MoleculeParams,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
    level: EnergyLevel | None = None,
) -> RadialWavefunction:
    """Normalized radial wavefunction of level n.

    The normalization integral of R^2 over the validity domain is taken
    by composite 64-point Gauss-Legendre quadrature on 64 panels and
    verified against a doubled panel count; disagreement beyond 1e-8
    relative raises ConvergenceError with both values.
    """
    if level is None:
        level = th_energy(n, m, constants)
    coeffs = _coefficients_at(m, level.energy, constants)
    form = wavefunction_form(coeffs, branch="first")
    domain = validity_domain(m)

    shell = RadialWavefunction(
        level=level, form=form, norm=1.0, log_norm=0.0, domain=domain, molecule=m
    )

    # Fixed log-offset keeps the quadrature integrand in representable
    # range even when the raw factors span hundreds of e-folds.
    probe_r = np.linspace(domain[0], domain[1], 2048)
    g_probe, _ = shell._log_factor_and_poly(probe_r)
    g_ref = float(np.max(g_probe))

    def density(r):
        g, poly = shell._log_factor_and_poly(r)
        val = poly * np.exp(g - g_ref)
        return val * val

    coarse = _panel_integral(density, domain[0], domain[1], _GL_PANELS)
    fine = _panel_integral(density, domain[0], domain[1], 2 * _GL_PANELS)
    if not (fine > 0.0 and math.isfinite(fine)):
        raise ConvergenceError(f"normalization integral is not finite/positive: {fine!r}")
    if abs(coarse / fine - 1.0) > _NORM_RTOL:
        raise ConvergenceError(
            "normalization quadrature did not converge: "
            f"{_GL_PANELS} panels -> {coarse!r}, {2 * _GL_PANELS} panels -> {fine!r}"
        )

    log_norm = -0.5 * math.log(fine) - g_ref
    return RadialWavefunction(
        level=level,
        form=form,
        norm=math.exp(log_norm),
        log_norm=log_norm,
        domain=domain,
        molecule=m,
    )
