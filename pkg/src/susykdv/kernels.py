"""Hot numeric kernels: pointwise evaluation of tau-function bodies.

Every numeric field in the package reduces to evaluating finite exponential
sums or Laurent polynomials (and their first two x-derivatives) on arrays of
grid points.  The residual sweeps call these thousands of times, so the inner
loops are JIT-compiled with numba; a pure-numpy fallback implements the same
contract and is selected either automatically (numba unavailable) or by
setting the environment variable ``SUSYKDV_NUMBA=0``.

The two paths agree to floating roundoff; they are not guaranteed to be
bit-identical to each other because summation order differs.  Within one
path, results are deterministic.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

_ENV_FLAG = "SUSYKDV_NUMBA"


def _env_wants_numba() -> bool:
    val = os.environ.get(_ENV_FLAG, "1").strip().lower()
    return val not in ("0", "false", "no", "off")


_HAVE_NUMBA = False
if _env_wants_numba():
    try:
        from numba import njit
        _HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        warnings.warn("numba unavailable; falling back to pure-numpy kernels")

# Active backend name; tests and benchmarks may reassign via set_backend().
_ACTIVE = "numba" if _HAVE_NUMBA else "numpy"


def set_backend(name: str) -> None:
    global _ACTIVE
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown kernel backend {name!r}")
    if name == "numba" and not _HAVE_NUMBA:
        raise ValueError("numba backend requested but numba is not available")
    _ACTIVE = name


def backend_name() -> str:
    return _ACTIVE


def _expsum_eval012_np(kappas, omegas, coeffs, xs, ts):
    z = np.exp(xs[:, None] * kappas[None, :] + ts[:, None] * omegas[None, :])
    ck = coeffs * kappas
    ck2 = ck * kappas
    f = z @ coeffs
    fx = z @ ck
    fxx = z @ ck2
    return f, fx, fxx


def _laurent_eval012_np(xexps, sexps, coeffs, xs, ss):
    n = xs.shape[0]
    f = np.zeros(n, dtype=np.complex128)
    fx = np.zeros(n, dtype=np.complex128)
    fxx = np.zeros(n, dtype=np.complex128)
    for a, b, c in zip(xexps, sexps, coeffs):
        sb = ss.astype(np.float64) ** int(b) if b else 1.0
        f += c * xs ** int(a) * sb
        if a >= 1:
            fx += c * a * xs ** int(a - 1) * sb
        if a >= 2:
            fxx += c * a * (a - 1) * xs ** int(a - 2) * sb
    return f, fx, fxx


if _HAVE_NUMBA:

    @njit(cache=True)
    def _expsum_eval012_nb(kappas, omegas, coeffs, xs, ts):  # pragma: no cover
        n = xs.shape[0]
        m = kappas.shape[0]
        f = np.zeros(n, dtype=np.complex128)
        fx = np.zeros(n, dtype=np.complex128)
        fxx = np.zeros(n, dtype=np.complex128)
        for i in range(n):
            x = xs[i]
            t = ts[i]
            for j in range(m):
                w = coeffs[j] * np.exp(kappas[j] * x + omegas[j] * t)
                f[i] += w
                wk = w * kappas[j]
                fx[i] += wk
                fxx[i] += wk * kappas[j]
        return f, fx, fxx

    @njit(cache=True)
    def _laurent_eval012_nb(xexps, sexps, coeffs, xs, ss):  # pragma: no cover
        n = xs.shape[0]
        m = xexps.shape[0]
        f = np.zeros(n, dtype=np.complex128)
        fx = np.zeros(n, dtype=np.complex128)
        fxx = np.zeros(n, dtype=np.complex128)
        for i in range(n):
            x = xs[i]
            s = ss[i]
            for j in range(m):
                a = xexps[j]
                sb = s ** sexps[j] if sexps[j] != 0 else 1.0
                c = coeffs[j] * sb
                f[i] += c * x ** a
                if a >= 1:
                    fx[i] += c * a * x ** (a - 1)
                if a >= 2:
                    fxx[i] += c * a * (a - 1) * x ** (a - 2)
        return f, fx, fxx


def expsum_eval012(kappas, omegas, coeffs, xs, ts):
    """Evaluate ``f = sum c exp(kx + wt)`` plus f_x and f_xx at each point."""
    if _ACTIVE == "numba":
        return _expsum_eval012_nb(kappas, omegas, coeffs, xs, ts)
    return _expsum_eval012_np(kappas, omegas, coeffs, xs, ts)


def laurent_eval012(xexps, sexps, coeffs, xs, ss):
    """Evaluate ``f = sum c x^a s^b`` plus f_x and f_xx at each point."""
    if _ACTIVE == "numba":
        return _laurent_eval012_nb(xexps, sexps, coeffs, xs, ss)
    return _laurent_eval012_np(xexps, sexps, coeffs, xs, ss)


def warmup() -> None:
    """Trigger JIT compilation on tiny inputs (no-op for the numpy path)."""
    k = np.array([1.0 + 0j])
    x = np.array([0.5])
    expsum_eval012(k, -k, k, x, x)
    laurent_eval012(np.array([1], dtype=np.int64), np.array([0], dtype=np.int64),
                    k, x, x)
