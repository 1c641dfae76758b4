"""Scalar expression backends and the superfield wrapper.

Two closed expression families carry every solution in this package:

* ``ExpSum`` -- finite sums ``sum c * exp(kappa*x + omega*t)`` with
  Grassmann-valued coefficients ``c`` (soliton tau functions);
* ``LaurentXS`` -- Laurent polynomials in ``x`` and ``s = t^(1/3)`` with
  Grassmann coefficients over the cubic ring (similarity tau functions),
  where ``d/dt = (1/3) s^(-2) d/ds``.

Both are rings with derivations ``dx`` and ``dt``; exact coefficients make
"this expression is identically zero" decidable.

A ``Superfield`` is a pair (body, soul) representing
``f(x, t; theta) = f0(x, t) + theta * f1(x, t)`` for one anticommuting
coordinate ``theta``.  theta itself never appears inside coefficients; the
product rule keeps track of the sign picked up when the left factor's body is
odd:

    (A0 + theta A1)(B0 + theta B1)
        = A0 B0 + theta ((-1)^|A0| A0 B1 + A1 B0),

because ``A0 theta = (-1)^|A0| theta A0`` and ``theta^2`` kills the A1 B1
cross term.  The covariant derivative ``d1 = theta d/dx + d/dtheta`` acts as
``(body, soul) -> (soul, dx body)`` and squares to ``dx``.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError, ExponentOverflowError, PoleError
from .grassmann import GrassmannNumber, _is_scalar
from .scalars import QQi, is_exact_scalar, scalar_to_complex

MAX_S_EXPONENT = 3000


def _coeff(c) -> GrassmannNumber:
    if isinstance(c, GrassmannNumber):
        return c
    return GrassmannNumber.scalar(c)


def _num_key(x):
    """Deterministic sort key for exact or floating scalars."""
    if isinstance(x, QQi):
        return (x.re, x.im)
    z = complex(x)
    return (Fraction(z.real), Fraction(z.imag))


class Phase:
    """Exponent data ``kappa*x + omega*t`` of a single exponential term."""

    __slots__ = ("kappa", "omega")

    def __init__(self, kappa, omega):
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "omega", omega)

    def __setattr__(self, name, value):
        raise AttributeError("Phase is immutable")

    def __eq__(self, other):
        if not isinstance(other, Phase):
            return NotImplemented
        return self.kappa == other.kappa and self.omega == other.omega

    def __hash__(self):
        return hash((self.kappa, self.omega))

    def __add__(self, other):
        return Phase(self.kappa + other.kappa, self.omega + other.omega)

    def sort_key(self):
        return _num_key(self.kappa) + _num_key(self.omega)

    def __repr__(self):
        return f"Phase({self.kappa!r}, {self.omega!r})"


def _acc(d, key, g):
    if key in d:
        g = d[key] + g
    if g:
        d[key] = g
    elif key in d:
        del d[key]


class ExpSum:
    """Finite sum of exponential terms, Grassmann coefficients."""

    __slots__ = ("terms",)
    backend = "expsum"

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for ph, g in terms.items():
                g = _coeff(g)
                if g:
                    clean[ph] = g
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ExpSum is immutable")

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, c):
        return cls({Phase(QQi(0), QQi(0)): _coeff(c)})

    @classmethod
    def term(cls, kappa, omega, coeff):
        return cls({Phase(kappa, omega): _coeff(coeff)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, ExpSum):
            return NotImplemented
        acc = dict(self.terms)
        for ph, g in other.terms.items():
            _acc(acc, ph, g)
        return ExpSum(acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ExpSum({ph: -g for ph, g in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, ExpSum):
            acc = {}
            for p1, g1 in self.terms.items():
                for p2, g2 in other.terms.items():
                    _acc(acc, p1 + p2, g1 * g2)
            return ExpSum(acc)
        if isinstance(other, GrassmannNumber) or _is_scalar(other):
            return ExpSum({ph: g * other for ph, g in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, GrassmannNumber) or _is_scalar(other):
            return ExpSum({ph: other * g for ph, g in self.terms.items()})
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, ExpSum):
            return NotImplemented
        return self.terms == other.terms

    def dx(self) -> "ExpSum":
        return ExpSum({ph: g * ph.kappa for ph, g in self.terms.items()})

    def dt(self) -> "ExpSum":
        return ExpSum({ph: g * ph.omega for ph, g in self.terms.items()})

    def eval(self, x: float, t: float) -> GrassmannNumber:
        acc = GrassmannNumber()
        for ph, g in self.terms.items():
            w = _cexp(scalar_to_complex(ph.kappa) * x + scalar_to_complex(ph.omega) * t)
            acc = acc + g.to_complex() * w
        return acc

    def max_abs_coeff(self) -> float:
        if not self.terms:
            return 0.0
        return max(g.max_abs() for g in self.terms.values())

    def is_exact(self) -> bool:
        return all(
            is_exact_scalar(ph.kappa) and is_exact_scalar(ph.omega) and g.is_exact()
            for ph, g in self.terms.items())

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __repr__(self):
        if not self.terms:
            return "ExpSum(0)"
        bits = [f"[{g!r}]*exp(({ph.kappa})x+({ph.omega})t)"
                for ph, g in self.sorted_terms()]
        return " + ".join(bits)


def _cexp(z: complex) -> complex:
    return complex(math.exp(z.real) * math.cos(z.imag),
                   math.exp(z.real) * math.sin(z.imag))


def real_cbrt(t: float) -> float:
    """Real cube root convention: sign(t) * |t|^(1/3)."""
    return math.copysign(abs(t) ** (1.0 / 3.0), t)


class LaurentXS:
    """Laurent polynomial in ``x`` (exponent >= 0) and ``s = t^(1/3)``."""

    __slots__ = ("terms",)
    backend = "laurent"

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, g in terms.items():
                xe, se = key
                if xe < 0:
                    raise ValueError(f"negative x exponent {xe}")
                if abs(se) > MAX_S_EXPONENT:
                    raise ExponentOverflowError(
                        f"s exponent {se} beyond sanity bound {MAX_S_EXPONENT}")
                g = _coeff(g)
                if g:
                    clean[key] = g
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentXS is immutable")

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): _coeff(c)})

    @classmethod
    def term(cls, xexp: int, sexp: int, coeff):
        return cls({(xexp, sexp): _coeff(coeff)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, LaurentXS):
            return NotImplemented
        acc = dict(self.terms)
        for key, g in other.terms.items():
            _acc(acc, key, g)
        return LaurentXS(acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentXS({k: -g for k, g in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, LaurentXS):
            acc = {}
            for (x1, s1), g1 in self.terms.items():
                for (x2, s2), g2 in other.terms.items():
                    _acc(acc, (x1 + x2, s1 + s2), g1 * g2)
            return LaurentXS(acc)
        if isinstance(other, GrassmannNumber) or _is_scalar(other):
            return LaurentXS({k: g * other for k, g in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, GrassmannNumber) or _is_scalar(other):
            return LaurentXS({k: other * g for k, g in self.terms.items()})
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, LaurentXS):
            return NotImplemented
        return self.terms == other.terms

    def dx(self) -> "LaurentXS":
        acc = {}
        for (xe, se), g in self.terms.items():
            if xe:
                _acc(acc, (xe - 1, se), g * xe)
        return LaurentXS(acc)

    def dt(self) -> "LaurentXS":
        # d/dt = (1/3) s^(-2) d/ds, so x^a s^b -> (b/3) x^a s^(b-3)
        acc = {}
        for (xe, se), g in self.terms.items():
            if se:
                _acc(acc, (xe, se - 3), g * Fraction(se, 3))
        return LaurentXS(acc)

    def eval(self, x: float, t: float) -> GrassmannNumber:
        s = real_cbrt(t)
        if s == 0.0 and any(se < 0 for _, se in self.terms):
            raise DomainError("t = 0 with negative powers of t^(1/3) present")
        acc = GrassmannNumber()
        for (xe, se), g in self.terms.items():
            acc = acc + g.to_complex() * (float(x) ** xe * s ** se)
        return acc

    def max_abs_coeff(self) -> float:
        if not self.terms:
            return 0.0
        return max(g.max_abs() for g in self.terms.values())

    def is_exact(self) -> bool:
        return all(g.is_exact() for g in self.terms.values())

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "LaurentXS(0)"
        bits = [f"[{g!r}]*x^{xe}*s^{se}" for (xe, se), g in self.sorted_terms()]
        return " + ".join(bits)


_PARITY_FLIP = {"even": "odd", "odd": "even"}


class Superfield:
    """Pair (body, soul) for ``f = f0 + theta*f1`` with a parity tag.

    An even superfield has even-parity Grassmann coefficients in the body and
    odd ones in the soul; an odd superfield (such as ``d1`` of an even one)
    swaps those expectations.  The tag is what lets the product rule place
    its sign without inspecting coefficients term by term.
    """

    __slots__ = ("body", "soul", "parity")

    def __init__(self, body, soul, parity="even", check=True):
        if parity not in ("even", "odd"):
            raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
        if type(body) is not type(soul):
            raise TypeError("body and soul must share a backend")
        if check:
            flip = _PARITY_FLIP[parity]
            for g in body.terms.values():
                if g.parity() != parity:
                    raise ValueError(
                        f"body coefficient {g!r} is not {parity}")
            for g in soul.terms.values():
                if g.parity() != flip:
                    raise ValueError(
                        f"soul coefficient {g!r} is not {flip}")
        object.__setattr__(self, "body", body)
        object.__setattr__(self, "soul", soul)
        object.__setattr__(self, "parity", parity)

    def __setattr__(self, name, value):
        raise AttributeError("Superfield is immutable")

    @classmethod
    def from_body(cls, body, parity="even") -> "Superfield":
        return cls(body, type(body).zero(), parity)

    @property
    def backend(self) -> str:
        return self.body.backend

    @property
    def is_zero(self) -> bool:
        return self.body.is_zero and self.soul.is_zero

    def __add__(self, other):
        if not isinstance(other, Superfield):
            return NotImplemented
        if other.parity != self.parity:
            raise ValueError("cannot add superfields of opposite parity")
        return Superfield(self.body + other.body, self.soul + other.soul,
                          self.parity, check=False)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Superfield(-self.body, -self.soul, self.parity, check=False)

    def __mul__(self, other):
        if isinstance(other, Superfield):
            sign_flip = self.parity == "odd"
            cross = self.body * other.soul
            if sign_flip:
                cross = -cross
            out_parity = "even" if self.parity == other.parity else "odd"
            return Superfield(self.body * other.body,
                              cross + self.soul * other.body,
                              out_parity, check=False)
        if isinstance(other, GrassmannNumber) or _is_scalar(other):
            return Superfield(self.body * other, self.soul * other,
                              self.parity, check=False)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, GrassmannNumber) or _is_scalar(other):
            return Superfield(other * self.body, other * self.soul,
                              self.parity, check=False)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Superfield):
            return NotImplemented
        return (self.parity == other.parity and self.body == other.body
                and self.soul == other.soul)

    def dx(self) -> "Superfield":
        return Superfield(self.body.dx(), self.soul.dx(), self.parity, check=False)

    def dt(self) -> "Superfield":
        return Superfield(self.body.dt(), self.soul.dt(), self.parity, check=False)

    def d1(self) -> "Superfield":
        """Covariant derivative: (body, soul) -> (soul, dx body), parity flips."""
        return Superfield(self.soul, self.body.dx(),
                          _PARITY_FLIP[self.parity], check=False)

    def eval(self, x: float, t: float):
        return self.body.eval(x, t), self.soul.eval(x, t)

    def max_abs_coeff(self) -> float:
        return max(self.body.max_abs_coeff(), self.soul.max_abs_coeff())

    def is_exact(self) -> bool:
        return self.body.is_exact() and self.soul.is_exact()

    def __repr__(self):
        return (f"Superfield({self.parity}, body={self.body!r}, "
                f"soul={self.soul!r})")


def dx(f: Superfield) -> Superfield:
    return f.dx()


def dt(f: Superfield) -> Superfield:
    return f.dt()


def d1(f: Superfield) -> Superfield:
    return f.d1()


def evaluate(f: Superfield, x: float, t: float):
    return f.eval(x, t)


def _scalar_value(g: GrassmannNumber, what: str) -> complex:
    if g.soul():
        raise ValueError(f"{what} has Grassmann soul content; expected scalar")
    return scalar_to_complex(g.body())


def log_ratio_dx(tau1: Superfield, tau2: Superfield, x: float, t: float):
    """Pointwise components of ``d/dx (-i log(tau1/tau2))``.

    Returns ``(u, xi1)``: the scalar part ``u = -i (p1'/p1 - p2'/p2)`` built
    from the tau bodies, and the odd Grassmann part
    ``xi1 = -i d/dx (soul1/p1 - soul2/p2)``, both evaluated at ``(x, t)``.
    Raises ``PoleError`` where a tau body vanishes: those points are genuine
    poles of the solution.
    """
    out = []
    for name, tau in (("tau1", tau1), ("tau2", tau2)):
        p = _scalar_value(tau.body.eval(x, t), f"{name} body")
        if p == 0:
            raise PoleError(f"{name} body vanishes at (x, t) = ({x}, {t})")
        px = _scalar_value(tau.body.dx().eval(x, t), f"{name} body")
        sg = tau.soul.eval(x, t)
        sgx = tau.soul.dx().eval(x, t)
        out.append((p, px, sg, sgx))
    (p1, p1x, s1, s1x), (p2, p2x, s2, s2x) = out
    u = -1j * (p1x / p1 - p2x / p2)
    xi1 = (s1x * (1 / p1) - s1 * (p1x / p1 ** 2)
           - s2x * (1 / p2) + s2 * (p2x / p2 ** 2)) * (-1j)
    return u, xi1


# -- JSON export ------------------------------------------------------------

def _scalar_jsonable(c):
    from .scalars import Cubic3
    if isinstance(c, QQi):
        return {"re": str(c.re), "im": str(c.im)}
    if isinstance(c, Cubic3):
        return {"a": str(c.a), "b": str(c.b), "c": str(c.c)}
    if isinstance(c, (int, Fraction)):
        return str(c)
    z = complex(c)
    return [z.real, z.imag]


def _grassmann_jsonable(g: GrassmannNumber):
    return [[list(key), _scalar_jsonable(c)]
            for key, c in sorted(g.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))]


def _expr_jsonable(expr):
    if isinstance(expr, ExpSum):
        return {
            "backend": "expsum",
            "terms": [{"kappa": _scalar_jsonable(ph.kappa),
                       "omega": _scalar_jsonable(ph.omega),
                       "coeff": _grassmann_jsonable(g)}
                      for ph, g in expr.sorted_terms()],
        }
    return {
        "backend": "laurent",
        "terms": [{"xexp": xe, "sexp": se, "coeff": _grassmann_jsonable(g)}
                  for (xe, se), g in expr.sorted_terms()],
    }


def to_jsonable(f: Superfield) -> dict:
    """Canonical JSON-ready dict for golden tests (deterministic ordering)."""
    return {"parity": f.parity,
            "body": _expr_jsonable(f.body),
            "soul": _expr_jsonable(f.soul)}
