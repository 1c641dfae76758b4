"""Vectorized component fields reconstructed from a tau-function pair.

The bosonic component of the solution is the x-derivative of
``-i log(tau1/tau2)`` taken on tau bodies:

    u  = -i (p1'/p1 - p2'/p2),          p_i = body of tau_i,
    f1 = u_x,   v = -i u_x = -i f1,     f2 = i f1,

where f1 is the bosonized fermion profile (xi1 = zeta f1) and v, f2 follow
from the chirality constraints.  f1 is computed analytically from the tau
derivatives, not by finite differences, so the residual module can use
finite differences as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import kernels
from .errors import DomainError, PoleError
from .scalars import scalar_to_complex
from .superexpr import ExpSum, LaurentXS, Superfield


def _expsum_arrays(expr: ExpSum):
    terms = expr.sorted_terms()
    kap = np.array([scalar_to_complex(ph.kappa) for ph, _ in terms], dtype=np.complex128)
    om = np.array([scalar_to_complex(ph.omega) for ph, _ in terms], dtype=np.complex128)
    co = np.empty(len(terms), dtype=np.complex128)
    for i, (_, g) in enumerate(terms):
        if g.soul():
            raise ValueError("tau body has Grassmann soul content")
        co[i] = scalar_to_complex(g.body())
    return kap, om, co


def _laurent_arrays(expr: LaurentXS):
    terms = expr.sorted_terms()
    xe = np.array([k[0] for k, _ in terms], dtype=np.int64)
    se = np.array([k[1] for k, _ in terms], dtype=np.int64)
    co = np.empty(len(terms), dtype=np.complex128)
    for i, (_, g) in enumerate(terms):
        if g.soul():
            raise ValueError("tau body has Grassmann soul content")
        co[i] = scalar_to_complex(g.body())
    return xe, se, co


def _body_evaluator(expr) -> Callable:
    """Return ``f(xs, ts) -> (p, p_x, p_xx)`` over flat float64 arrays."""
    if isinstance(expr, ExpSum):
        kap, om, co = _expsum_arrays(expr)

        def ev(xs, ts):
            return kernels.expsum_eval012(kap, om, co, xs, ts)

        return ev
    if isinstance(expr, LaurentXS):
        xe, se, co = _laurent_arrays(expr)
        has_negative = bool((se < 0).any())

        def ev(xs, ts):
            ss = np.cbrt(ts)
            if has_negative and (ss == 0.0).any():
                raise DomainError("t = 0 with negative powers of t^(1/3)")
            return kernels.laurent_eval012(xe, se, co, xs, ss)

        return ev
    raise TypeError(f"unsupported expression backend: {type(expr).__name__}")


@dataclass
class FieldBundle:
    """Evaluators for the component fields of one solution.

    All four callables accept broadcastable real arrays (or scalars) and
    return complex arrays of the broadcast shape.  ``poles_at`` maps a time
    slice to the real x-positions of solution poles (None when the solution
    is globally smooth, as for the figure soliton presets).
    """

    u: Callable
    v: Callable
    f1: Callable
    f2: Callable
    label: str = ""
    tau_pair: Optional[tuple] = None
    poles_at: Optional[Callable[[float], list]] = field(default=None, repr=False)


def from_tau_pair(tau1: Superfield, tau2: Superfield, label: str = "",
                  poles_at=None) -> FieldBundle:
    """Build u, v, f1, f2 evaluators from an even tau pair."""
    ev1 = _body_evaluator(tau1.body)
    ev2 = _body_evaluator(tau2.body)

    def _pieces(x, t):
        xb, tb = np.broadcast_arrays(np.asarray(x, dtype=np.float64),
                                     np.asarray(t, dtype=np.float64))
        shape = xb.shape
        # broadcast views are readonly and possibly non-contiguous; the
        # kernels want plain owned 1-d arrays
        xs = np.array(xb, dtype=np.float64).reshape(-1)
        ts = np.array(tb, dtype=np.float64).reshape(-1)
        p0, p1, p2 = ev1(xs, ts)
        r0, r1, r2 = ev2(xs, ts)
        if (p0 == 0).any() or (r0 == 0).any():
            bad = "tau1" if (p0 == 0).any() else "tau2"
            raise PoleError(f"{bad} body vanishes on the requested points")
        return shape, p0, p1, p2, r0, r1, r2

    def u(x, t):
        shape, p0, p1, _, r0, r1, _ = _pieces(x, t)
        return (-1j * (p1 / p0 - r1 / r0)).reshape(shape)

    def f1(x, t):
        shape, p0, p1, p2, r0, r1, r2 = _pieces(x, t)
        val = -1j * (p2 / p0 - (p1 / p0) ** 2 - r2 / r0 + (r1 / r0) ** 2)
        return val.reshape(shape)

    def v(x, t):
        return -1j * f1(x, t)

    def f2(x, t):
        return 1j * f1(x, t)

    return FieldBundle(u=u, v=v, f1=f1, f2=f2, label=label,
                       tau_pair=(tau1, tau2), poles_at=poles_at)
