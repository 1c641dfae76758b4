"""Yablonskii-Vorob'ev polynomials and rational similarity solutions.

The polynomial family is defined over the cubic field Q(3^(1/3)) by

    3^(1/3) Q_{n+1} Q_{n-1} = z Q_n^2 - 12 (Q_n Q_n'' - Q_n'^2),
    Q_0 = 3^(-1/3),  Q_1 = z,

where every right-hand side is exactly divisible by ``3^(1/3) Q_{n-1}``
(a nonzero remainder would indicate an arithmetic bug and aborts).  The
degree of Q_n is the triangular number n(n+1)/2.

With the scaling variable ``z = t^(-1/3)(x + theta*zeta)`` the tau pair

    tau1_n = t^(n(n+1)/6) Q_n(z),   tau2_n = t^((n+1)(n+2)/6) Q_{n+1}(z)

consists of genuine polynomials in ``x`` and ``s = t^(1/3)`` (all exponents
non-negative), because ``z^k = s^(-k)(x^k + theta * k x^(k-1) zeta)`` and the
t-prefactor powers ``s^(n(n+1)/2)`` cancel every negative power.  These pairs
solve both bilinear equations exactly.

The rational similarity solution itself is

    u_n(x, t) = i t^(-1/3) d/dz0 log(Q_{n+1}(z0)/Q_n(z0)),   z0 = x t^(-1/3),

with bosonized fermion profile ``f1_n = d/dx u_n``; for n = 1 this reduces to
``u_1 = 2i (x^3 - 6t) / (x (x^3 + 12t))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, ExactDivisionError, PoleError
from .fields import FieldBundle, from_tau_pair
from .grassmann import GrassmannNumber, OddGenerator
from .scalars import CBRT3, CBRT3_INV, CUBIC_ONE, Cubic3
from .superexpr import LaurentXS, Superfield, real_cbrt

# -- dense polynomial helpers over Cubic3 (index = power of z) ---------------


def _trim(coeffs):
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _padd(p, q):
    out = list(p)
    if len(out) < len(q):
        out.extend([Cubic3(0)] * (len(q) - len(out)))
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return _trim(out)


def _psub(p, q):
    return _padd(p, [-c for c in q])


def _pmul(p, q):
    if not p or not q:
        return []
    out = [Cubic3(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return _trim(out)


def _pscale(p, c):
    return _trim([a * c for a in p])


def _pdiff(p):
    return _trim([p[i] * i for i in range(1, len(p))])


def _pshift(p):
    """Multiply by z."""
    return [Cubic3(0)] + list(p) if p else []


def _pdivmod(p, q):
    """Polynomial division over the field Q(3^(1/3))."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    if len(rem) - 1 < dq:
        return [], _trim(rem)
    lead_inv = q[-1].inverse()
    quot = [Cubic3(0)] * (len(rem) - dq)
    for k in range(len(rem) - 1 - dq, -1, -1):
        c = rem[k + dq]
        if not c:
            continue
        c = c * lead_inv
        quot[k] = c
        for i, b in enumerate(q):
            rem[k + i] = rem[k + i] - c * b
    return _trim(quot), _trim(rem)


@dataclass(frozen=True)
class YVPoly:
    """One Yablonskii-Vorob'ev polynomial with exact cubic-field coefficients."""

    n: int
    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def float_coeffs(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=np.float64)

    def __call__(self, z: float) -> float:
        acc = 0.0
        for c in reversed(self.float_coeffs()):
            acc = acc * z + c
        return acc

    def deriv_float(self, z: float, order: int = 1) -> float:
        cs = self.coeffs
        for _ in range(order):
            cs = tuple(_pdiff(list(cs)))
        acc = 0.0
        for c in reversed([float(x) for x in cs]):
            acc = acc * z + c
        return acc


_TABLE = [[CBRT3_INV], [Cubic3(0), CUBIC_ONE]]  # Q_0 = 3^(-1/3), Q_1 = z


def _extend_table(n: int) -> None:
    while len(_TABLE) <= n:
        qn = _TABLE[-1]
        qm = _TABLE[-2]
        rhs = _psub(_pshift(_pmul(qn, qn)),
                    _pscale(_psub(_pmul(qn, _pdiff(_pdiff(qn))),
                                  _pmul(_pdiff(qn), _pdiff(qn))), Cubic3(12)))
        divisor = _pscale(qm, CBRT3)
        quot, rem = _pdivmod(rhs, divisor)
        if rem:
            raise ExactDivisionError(
                f"recurrence division left a remainder at n = {len(_TABLE)}; "
                "this indicates an arithmetic bug")
        _TABLE.append(quot)


def yv_poly(n: int) -> YVPoly:
    """Exact Q_n, computed through the recurrence and memoized."""
    if n < 0:
        raise ValueError("index must be >= 0")
    _extend_table(n)
    return YVPoly(n, tuple(_TABLE[n]))


def _triangular(n: int) -> int:
    return n * (n + 1) // 2


def similarity_tau(n: int, zeta: OddGenerator = OddGenerator(0)):
    """Similarity tau pair (tau1_n, tau2_n) as Laurent-backend superfields."""
    if n < 0:
        raise ValueError("index must be >= 0")

    def tau_from_poly(q: YVPoly, prefactor_power: int) -> Superfield:
        body = {}
        soul = {}
        zgen = GrassmannNumber.generator(zeta)
        for k, c in enumerate(q.coeffs):
            if not c:
                continue
            se = prefactor_power - k
            body[(k, se)] = GrassmannNumber.scalar(c)
            if k >= 1:
                soul[(k - 1, se)] = zgen * (c * k)
        return Superfield(LaurentXS(body), LaurentXS(soul), "even")

    q1 = yv_poly(n)
    q2 = yv_poly(n + 1)
    return (tau_from_poly(q1, _triangular(n)),
            tau_from_poly(q2, _triangular(n + 1)))


def u_n(n: int, x: float, t: float) -> complex:
    """Rational similarity solution at one point (t must be nonzero)."""
    if n < 1:
        raise ValueError("index must be >= 1")
    if t == 0:
        raise DomainError("u_n similarity formula needs t != 0 "
                          "(the tau pipeline covers t = 0)")
    s = real_cbrt(t)
    z0 = x / s
    qn = yv_poly(n)
    qn1 = yv_poly(n + 1)
    vn = qn(z0)
    vn1 = qn1(z0)
    for label, val in ((f"Q_{n}", vn), (f"Q_{n + 1}", vn1)):
        if val == 0.0:
            raise PoleError(f"{label}(z0) = 0 at z0 = {z0}; solution pole")
    return 1j / s * (qn1.deriv_float(z0) / vn1 - qn.deriv_float(z0) / vn)


def f1_n(n: int, x: float, t: float) -> complex:
    """Bosonized fermion profile ``f1_n = d/dx u_n`` at one point."""
    if n < 1:
        raise ValueError("index must be >= 1")
    if t == 0:
        raise DomainError("f1_n similarity formula needs t != 0")
    s = real_cbrt(t)
    z0 = x / s
    qn = yv_poly(n)
    qn1 = yv_poly(n + 1)
    vn = qn(z0)
    vn1 = qn1(z0)
    for label, val in ((f"Q_{n}", vn), (f"Q_{n + 1}", vn1)):
        if val == 0.0:
            raise PoleError(f"{label}(z0) = 0 at z0 = {z0}; solution pole")

    def dlog2(q: YVPoly, v: float) -> float:
        d1 = q.deriv_float(z0)
        d2 = q.deriv_float(z0, 2)
        return d2 / v - (d1 / v) ** 2

    return 1j / s ** 2 * (dlog2(qn1, vn1) - dlog2(qn, vn))


def _real_roots(q: YVPoly) -> np.ndarray:
    cs = q.float_coeffs()[::-1]
    if len(cs) < 2:
        return np.array([])
    roots = np.roots(cs)
    real = roots[np.abs(roots.imag) < 1e-7].real
    return np.sort(real)


def similarity_poles_at(n: int) -> Callable[[float], list]:
    """Real pole x-positions of u_n for one time slice.

    For t != 0 these are ``x = z * t^(1/3)`` over the real zeros of Q_n and
    Q_{n+1}; at t = 0 only x = 0 survives (the tau bodies collapse onto
    their leading x-power there).
    """
    zroots = np.concatenate([_real_roots(yv_poly(n)), _real_roots(yv_poly(n + 1))])

    def poles(t: float) -> list:
        if t == 0:
            return [0.0]
        s = real_cbrt(t)
        return sorted({float(z * s) for z in zroots})

    return poles


def similarity_fields(n: int, zeta: OddGenerator = OddGenerator(0)) -> FieldBundle:
    """Component fields of the n-th rational similarity solution, evaluated
    through the tau pipeline (regular at t = 0 away from x = 0)."""
    tau1, tau2 = similarity_tau(n, zeta)
    return from_tau_pair(tau1, tau2, label=f"similarity-n{n}",
                         poles_at=similarity_poles_at(n))


# Figure preset for the first rational similarity solution: imaginary parts
# of u_1 and f1_1 at t = -10, 0, 10 (u_1 = 2i/x on the t = 0 slice).
FIG3_INDEX = 1
FIG3_TIMES = (-10.0, 0.0, 10.0)
