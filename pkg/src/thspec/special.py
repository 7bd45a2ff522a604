"""Jacobi and associated Laguerre polynomials by three-term recurrence.

Both accept scalar or ndarray arguments and evaluate elementwise. The
parameters are not restricted to the classical orthogonality range
(a, b > -1): bound-state solutions with a negative shape constant lead
to legitimate Jacobi parameters far below -1, for which the recurrence
remains well defined as long as no denominator 2k(k+a+b)(2k+a+b-2)
vanishes for k <= n.
"""

from __future__ import annotations

import numpy as np

__all__ = ["jacobi_poly", "laguerre_poly"]


def jacobi_poly(n: int, a: float, b: float, x):
    """P_n^(a,b)(x) by the standard three-term recurrence."""
    if n < 0:
        raise ValueError("polynomial degree must be non-negative")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    p = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    for k in range(2, n + 1):
        c0 = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0)
        c1 = 2.0 * k + a + b - 1.0
        c2 = (2.0 * k + a + b) * (2.0 * k + a + b - 2.0)
        c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b)
        p_prev, p = p, (c1 * (c2 * x + a * a - b * b) * p - c3 * p_prev) / c0
    return p if p.ndim else float(p)


def laguerre_poly(n: int, a: float, x):
    """Associated Laguerre L_n^(a)(x) by the standard recurrence."""
    if n < 0:
        raise ValueError("polynomial degree must be non-negative")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    p = 1.0 + a - x
    for k in range(2, n + 1):
        p_prev, p = p, ((2.0 * k - 1.0 + a - x) * p - (k - 1.0 + a) * p_prev) / k
    return p if p.ndim else float(p)
