"""Parametric engine for Schrodinger-like equations of the template

    [d2/ds2 + (alpha1 - alpha2*s)/(s(1 - alpha3*s)) d/ds
     + (-xi1*s^2 + xi2*s - xi3)/(s(1 - alpha3*s))^2] psi(s) = 0.

The six template coefficients determine a cascade of derived constants,
a quantization condition whose roots (in whatever parameter the caller
embeds in the xi's, typically a trial energy) are the eigenvalues, and
the closed-form factor structure of the eigenfunctions: a power of s, a
power of (1 - alpha3*s) and a Jacobi polynomial in 1 - 2*alpha3*s. At
alpha3 = 0 the bracket factor degenerates to an exponential and the
polynomial to an associated Laguerre.

The engine is energy-agnostic: callers produce an NUBase per trial
energy and locate eigenvalues by root finding on `energy_residual`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import NoBoundBranchError
from .special import jacobi_poly, laguerre_poly

__all__ = [
    "NUBase",
    "NUCoefficients",
    "WavefunctionForm",
    "derive_coefficients",
    "energy_residual",
    "energy_residual_second_branch",
    "tau_prime",
    "wavefunction_form",
    "evaluate_form",
]


@dataclass(frozen=True)
class NUBase:
    """The six template coefficients (all dimensionless, finite reals)."""

    alpha1: float
    alpha2: float
    alpha3: float
    xi1: float
    xi2: float
    xi3: float

    def __post_init__(self):
        for fname in ("alpha1", "alpha2", "alpha3", "xi1", "xi2", "xi3"):
            if not math.isfinite(getattr(self, fname)):
                raise ValueError(f"{fname} must be finite, got {getattr(self, fname)!r}")


@dataclass(frozen=True)
class NUCoefficients:
    """Derived coefficient cascade for one NUBase.

    alpha4..alpha13 belong to the principal branch, alpha10s..alpha13s
    to the second branch that arises from the other admissible choice of
    the separation constant k. sqrt_alpha8 and sqrt_alpha9 are computed
    once here and shared by every consumer so that the residual and the
    wavefunction factors can never disagree through repeated rounding.
    """

    base: NUBase
    alpha4: float
    alpha5: float
    alpha6: float
    alpha7: float
    alpha8: float
    alpha9: float
    alpha10: float
    alpha11: float
    alpha12: float
    alpha13: float
    alpha10s: float
    alpha11s: float
    alpha12s: float
    alpha13s: float
    k_minus: float
    k_plus: float
    sqrt_alpha8: float
    sqrt_alpha9: float


@dataclass(frozen=True)
class WavefunctionForm:
    """Closed-form factor structure of an eigenfunction.

    psi(s) = s**s_exponent * (1 - alpha3*s)**bracket_exponent
             * P_n^(jacobi_a, jacobi_b)(1 - argument_scale*s)

    with argument_scale = 2*alpha3. When alpha3 == 0 (`laguerre_limit`)
    the bracket factor is exp(exp_rate*s) and the polynomial is
    L_n^(laguerre_order)(laguerre_scale*s); the Jacobi fields are None.
    """

    s_exponent: float
    bracket_exponent: float | None
    jacobi_a: float | None
    jacobi_b: float | None
    argument_scale: float
    laguerre_limit: bool
    laguerre_order: float | None = None
    laguerre_scale: float | None = None
    exp_rate: float | None = None


def derive_coefficients(base: NUBase) -> NUCoefficients:
    """Derive the full coefficient cascade from the six base values.

    Raises NoBoundBranchError when alpha8 or alpha9 comes out negative;
    both sit under square roots, so a negative value means no real
    bound-state branch exists for this base (spectrum scans use the
    carried value to bound their search interval).
    """
    a1, a2, a3 = base.alpha1, base.alpha2, base.alpha3
    xi1, xi2, xi3 = base.xi1, base.xi2, base.xi3

    alpha4 = 0.5 * (1.0 - a1)
    alpha5 = 0.5 * (a2 - 2.0 * a3)
    alpha6 = alpha5 * alpha5 + xi1
    alpha7 = 2.0 * alpha4 * alpha5 - xi2
    alpha8 = alpha4 * alpha4 + xi3
    alpha9 = a3 * alpha7 + a3 * a3 * alpha8 + alpha6

    if alpha8 < 0.0:
        raise NoBoundBranchError("alpha8", alpha8)
    if alpha9 < 0.0:
        raise NoBoundBranchError("alpha9", alpha9)
    sqrt8 = math.sqrt(alpha8)
    sqrt9 = math.sqrt(alpha9)

    alpha10 = a1 + 2.0 * alpha4 + 2.0 * sqrt8
    alpha11 = a2 - 2.0 * alpha5 + 2.0 * (sqrt9 + a3 * sqrt8)
    alpha12 = alpha4 + sqrt8
    alpha13 = alpha5 - (sqrt9 + a3 * sqrt8)

    alpha10s = a1 + 2.0 * alpha4 - 2.0 * sqrt8
    alpha11s = a2 - 2.0 * alpha5 + 2.0 * (sqrt9 - a3 * sqrt8)
    alpha12s = alpha4 - sqrt8
    alpha13s = alpha5 - (sqrt9 - a3 * sqrt8)

    k_minus = -(alpha7 + 2.0 * a3 * alpha8) - 2.0 * sqrt8 * sqrt9
    k_plus = -(alpha7 + 2.0 * a3 * alpha8) + 2.0 * sqrt8 * sqrt9

    return NUCoefficients(
        base=base,
        alpha4=alpha4, alpha5=alpha5, alpha6=alpha6, alpha7=alpha7,
        alpha8=alpha8, alpha9=alpha9,
        alpha10=alpha10, alpha11=alpha11, alpha12=alpha12, alpha13=alpha13,
        alpha10s=alpha10s, alpha11s=alpha11s, alpha12s=alpha12s, alpha13s=alpha13s,
        k_minus=k_minus, k_plus=k_plus,
        sqrt_alpha8=sqrt8, sqrt_alpha9=sqrt9,
    )


def _check_valid(c: NUCoefficients) -> None:
    # Defensive: hand-built NUCoefficients may violate what
    # derive_coefficients guarantees.
    if c.alpha8 < 0.0:
        raise NoBoundBranchError("alpha8", c.alpha8)
    if c.alpha9 < 0.0:
        raise NoBoundBranchError("alpha9", c.alpha9)


def energy_residual(n: int, c: NUCoefficients) -> float:
    """Quantization condition of the principal branch.

    Returns
        alpha2*n - (2n+1)*alpha5 + (2n+1)*(sqrt(alpha9) + alpha3*sqrt(alpha8))
        + n(n-1)*alpha3 + alpha7 + 2*alpha3*alpha8 + 2*sqrt(alpha8*alpha9)

    which vanishes exactly at the eigenvalues of the embedded parameter.
    """
    _check_valid(c)
    a2, a3 = c.base.alpha2, c.base.alpha3
    return (
        a2 * n
        - (2 * n + 1) * c.alpha5
        + (2 * n + 1) * (c.sqrt_alpha9 + a3 * c.sqrt_alpha8)
        + n * (n - 1) * a3
        + c.alpha7
        + 2.0 * a3 * c.alpha8
        + 2.0 * c.sqrt_alpha8 * c.sqrt_alpha9
    )


def energy_residual_second_branch(n: int, c: NUCoefficients) -> float:
    """Quantization condition of the second branch, implemented exactly as
    derived for the other k root: the alpha5 term carries (2n-1) and the
    cross term enters with a minus sign."""
    _check_valid(c)
    a2, a3 = c.base.alpha2, c.base.alpha3
    return (
        a2 * n
        - (2 * n - 1) * c.alpha5
        + (2 * n + 1) * (c.sqrt_alpha9 + a3 * c.sqrt_alpha8)
        + n * (n - 1) * a3
        + c.alpha7
        + 2.0 * a3 * c.alpha8
        - 2.0 * c.sqrt_alpha8 * c.sqrt_alpha9
    )


def tau_prime(c: NUCoefficients) -> float:
    """Slope of the transformed first-degree coefficient tau(s).

    The method applies only where this is negative; callers must treat a
    non-negative value as an applicability failure of the whole ansatz.
    """
    a3 = c.base.alpha3
    return -2.0 * a3 - 2.0 * (c.sqrt_alpha9 + a3 * c.sqrt_alpha8)


def wavefunction_form(
    c: NUCoefficients, branch: Literal["first", "second"] = "first"
) -> WavefunctionForm:
    """Factor structure of the eigenfunction for either branch.

    The Laguerre degeneration is flagged exactly when alpha3 == 0.
    """
    _check_valid(c)
    a3 = c.base.alpha3
    if branch == "first":
        a10, a11, a12, a13 = c.alpha10, c.alpha11, c.alpha12, c.alpha13
    elif branch == "second":
        a10, a11, a12, a13 = c.alpha10s, c.alpha11s, c.alpha12s, c.alpha13s
    else:
        raise ValueError(f"branch must be 'first' or 'second', got {branch!r}")

    if a3 == 0.0:
        return WavefunctionForm(
            s_exponent=a12,
            bracket_exponent=None,
            jacobi_a=None,
            jacobi_b=None,
            argument_scale=0.0,
            laguerre_limit=True,
            laguerre_order=a10 - 1.0,
            laguerre_scale=a11,
            exp_rate=a13,
        )
    return WavefunctionForm(
        s_exponent=a12,
        bracket_exponent=-a12 - a13 / a3,
        jacobi_a=a10 - 1.0,
        jacobi_b=a11 / a3 - a10 - 1.0,
        argument_scale=2.0 * a3,
        laguerre_limit=False,
    )


def evaluate_form(form: WavefunctionForm, n: int, s):
    """Evaluate the (unnormalized) eigenfunction factors at s > 0.

    Scalar or ndarray s. The power factors are assembled in log space so
    that extreme exponents underflow gracefully instead of overflowing.
    """
    s = np.asarray(s, dtype=float)
    if form.laguerre_limit:
        log_factor = form.s_exponent * np.log(s) + form.exp_rate * s
        poly = laguerre_poly(n, form.laguerre_order, form.laguerre_scale * s)
    else:
        half_scale = 0.5 * form.argument_scale  # alpha3
        log_factor = form.s_exponent * np.log(s) + form.bracket_exponent * np.log1p(-half_scale * s)
        poly = jacobi_poly(n, form.jacobi_a, form.jacobi_b, 1.0 - form.argument_scale * s)
    out = np.asarray(poly) * np.exp(log_factor)
    return out if out.ndim else float(out)
