"""Exact coefficient rings.

Two scalar types back the exact ("verification") coefficient mode:

* ``QQi`` -- complex numbers with rational real and imaginary parts.  Soliton
  tau functions need the imaginary unit (amplitudes like ``a = i``) and exact
  rational wavenumbers.
* ``Cubic3`` -- the real cubic field Q(3^(1/3)), elements
  ``a + b*3^(1/3) + c*3^(2/3)`` with rational ``a, b, c``.  The
  Yablonskii-Vorob'ev recurrence injects factors of 3^(+-1/3), so exact
  divisibility tests have to run in this ring.

Both are immutable, hashable, mix freely with ``int`` and ``Fraction``, and
convert to ``complex``/``float`` for numeric evaluation.  Floating mode simply
uses Python ``complex`` instead.
"""

from __future__ import annotations

from fractions import Fraction

_CBRT3 = 3.0 ** (1.0 / 3.0)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return None


class QQi:
    """Exact complex rational ``re + im*i``.

    >>> QQi(1, 2) * QQi(1, -2)
    QQi(5, 0)
    >>> complex(QQi(Fraction(1, 2), 1))
    (0.5+1j)
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QQi is immutable")

    @staticmethod
    def _coerce(x):
        if isinstance(x, QQi):
            return x
        f = _as_fraction(x)
        if f is not None:
            return QQi(f)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QQi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QQi(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QQi(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QQi(self.re * o.re - self.im * o.im,
                   self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero QQi")
        return QQi((self.re * o.re + self.im * o.im) / d,
                   (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (QQi(1) / self) ** (-n)
        out = QQi(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def conjugate(self):
        return QQi(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def sort_key(self):
        return (self.re, self.im)

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


QQI_ZERO = QQi(0)
QQI_ONE = QQi(1)
QQI_I = QQi(0, 1)


class Cubic3:
    """Element ``a + b*r + c*r**2`` of Q(r), r = 3^(1/3), so r**3 = 3.

    The ring is a field: ``inverse`` uses the adjugate
    ``(a^2 - 3bc, 3c^2 - ab, b^2 - ac) / norm`` with
    ``norm = a^3 + 3 b^3 + 9 c^3 - 9 a b c``, which vanishes only at zero
    because x^3 - 3 is irreducible over Q.

    >>> r = Cubic3(0, 1, 0)
    >>> r * r * r
    Cubic3(3, 0, 0)
    >>> r * r.inverse()
    Cubic3(1, 0, 0)
    """

    __slots__ = ("a", "b", "c")

    def __init__(self, a=0, b=0, c=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "c", Fraction(c))

    def __setattr__(self, name, value):
        raise AttributeError("Cubic3 is immutable")

    @staticmethod
    def _coerce(x):
        if isinstance(x, Cubic3):
            return x
        f = _as_fraction(x)
        if f is not None:
            return Cubic3(f)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cubic3(self.a + o.a, self.b + o.b, self.c + o.c)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cubic3(self.a - o.a, self.b - o.b, self.c - o.c)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, c1 = self.a, self.b, self.c
        a2, b2, c2 = o.a, o.b, o.c
        return Cubic3(a1 * a2 + 3 * (b1 * c2 + c1 * b2),
                      a1 * b2 + b1 * a2 + 3 * c1 * c2,
                      a1 * c2 + c1 * a2 + b1 * b2)

    __rmul__ = __mul__

    def norm(self):
        a, b, c = self.a, self.b, self.c
        return a ** 3 + 3 * b ** 3 + 9 * c ** 3 - 9 * a * b * c

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero Cubic3")
        a, b, c = self.a, self.b, self.c
        return Cubic3((a * a - 3 * b * c) / n,
                      (3 * c * c - a * b) / n,
                      (b * b - a * c) / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = Cubic3(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __neg__(self):
        return Cubic3(-self.a, -self.b, -self.c)

    def __bool__(self):
        return bool(self.a) or bool(self.b) or bool(self.c)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.c == o.c

    def __hash__(self):
        if not self.b and not self.c:
            return hash(self.a)
        return hash((self.a, self.b, self.c))

    def __float__(self):
        return float(self.a) + float(self.b) * _CBRT3 + float(self.c) * _CBRT3 ** 2

    def __complex__(self):
        return complex(float(self))

    def sort_key(self):
        return (self.a, self.b, self.c)

    def triple(self):
        return (self.a, self.b, self.c)

    def __repr__(self):
        return f"Cubic3({self.a}, {self.b}, {self.c})"

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


CUBIC_ZERO = Cubic3(0)
CUBIC_ONE = Cubic3(1)
CBRT3 = Cubic3(0, 1, 0)
CBRT3_INV = CBRT3.inverse()  # 3^(-1/3) = (1/3) * 3^(2/3)

EXACT_SCALAR_TYPES = (int, Fraction, QQi, Cubic3)


def is_exact_scalar(x) -> bool:
    return isinstance(x, EXACT_SCALAR_TYPES)


def scalar_to_complex(x) -> complex:
    if isinstance(x, (QQi, Cubic3)):
        return complex(x)
    return complex(x)
