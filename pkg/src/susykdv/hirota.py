"""Hirota bilinear derivatives, the super Hirota derivative, and residuals.

The classical bilinear derivative is

    Dx^n Dt^m (f.g) = sum_{j,k} (-1)^(j+k) C(n,j) C(m,k)
                      (dx^(n-j) dt^(m-k) f) (dx^j dt^k g),

which for single exponentials collapses to
``(kappa1-kappa2)^n (omega1-omega2)^m exp(Psi1+Psi2)``.

The super Hirota derivative on two even superfields is defined on two
independent copies of space and the odd coordinate,

    SDx^n (tau1.tau2) = (D_T1 - D_T2)(dx1 - dx2)^n
                        tau1(x1; T1) tau2(x2; T2) |_(x1=x2, T1=T2=theta),

with D_Ti = d/dTi + Ti d/dxi.  Because tau2 carries no T1 and tau1 carries
no T2, and both taus are even (so D_T2 moves across tau1 without a sign),

    D_T1 (tau1 tau2) = (d1 tau1) tau2,      D_T2 (tau1 tau2) = tau1 (d1 tau2),

and the x1/x2 difference operator at coincidence is exactly the classical
Hirota expansion.  Hence the component formula implemented here:

    SDx^n (tau1.tau2) = Hx^n(d1 tau1, tau2) - Hx^n(tau1, d1 tau2),

where Hx^n is ``hirota_dx_dt(n, 0, ., .)`` taken with superfield products
(the product rule in ``superexpr`` carries the remaining Grassmann sign when
the left factor is odd).  A brute-force two-copy expansion cross-checks this
identity in the test suite.

The two bilinear equations verified throughout the package are

    (Dt + Dx^3)(tau1.tau2) = 0      and      SDx(tau1.tau2) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from .superexpr import Superfield


@dataclass
class BilinearResidual:
    """Outcome of one bilinear identity check.

    ``is_zero`` is an exact normal-form statement and is only available when
    every coefficient is exact; in floating mode it is ``None`` and only
    ``max_abs_coeff`` is meaningful (as a diagnostic).
    """

    expression: object
    is_zero: Optional[bool]
    max_abs_coeff: float


def hirota_dx_dt(n: int, m: int, f, g):
    """Bilinear derivative ``Dx^n Dt^m (f.g)``.

    ``f`` and ``g`` may be scalar expressions (ExpSum / LaurentXS) or whole
    Superfields in the same backend; all that is used is ``dx``, ``dt``,
    ``*``, ``+`` and unary ``-``.
    """
    if n < 0 or m < 0:
        raise ValueError("derivative orders must be >= 0")
    fd = [[None] * (m + 1) for _ in range(n + 1)]
    gd = [[None] * (m + 1) for _ in range(n + 1)]
    for table, base in ((fd, f), (gd, g)):
        cur = base
        for i in range(n + 1):
            row = cur
            for k in range(m + 1):
                table[i][k] = row
                if k < m:
                    row = row.dt()
            if i < n:
                cur = cur.dx()
    total = None
    for j in range(n + 1):
        for k in range(m + 1):
            term = fd[n - j][m - k] * gd[j][k]
            coeff = comb(n, j) * comb(m, k)
            if (j + k) % 2:
                coeff = -coeff
            term = term * coeff
            total = term if total is None else total + term
    return total


def super_hirota_sdx(n: int, tau1: Superfield, tau2: Superfield) -> Superfield:
    """Super Hirota derivative ``SDx^n (tau1.tau2)`` via the component formula."""
    if tau1.parity != "even" or tau2.parity != "even":
        raise ValueError("super Hirota derivative expects even superfields")
    left = hirota_dx_dt(n, 0, tau1.d1(), tau2)
    right = hirota_dx_dt(n, 0, tau1, tau2.d1())
    return left - right


def _residual(expr) -> BilinearResidual:
    exact = expr.is_exact()
    return BilinearResidual(expression=expr,
                            is_zero=expr.is_zero if exact else None,
                            max_abs_coeff=expr.max_abs_coeff())


def verify_bilinear(tau1: Superfield, tau2: Superfield):
    """Residuals of ``(Dt + Dx^3)(tau1.tau2)`` and ``SDx(tau1.tau2)``.

    Both ``is_zero`` flags are True exactly when the pair solves the bilinear
    system (exact coefficient mode).
    """
    h1 = hirota_dx_dt(0, 1, tau1, tau2) + hirota_dx_dt(3, 0, tau1, tau2)
    h2 = super_hirota_sdx(1, tau1, tau2)
    return _residual(h1), _residual(h2)
