"""Exact arithmetic in a finite complex Grassmann algebra.

The algebra is generated by anticommuting symbols ``e0, e1, ...`` (at most
``MAX_GENERATORS``), with ``ei*ej = -ej*ei`` and ``ei*ei = 0``.  An element is
stored as a map from strictly increasing generator-id tuples to scalar
coefficients; the empty tuple holds the *body*, everything else is the
*soul*.  Keeping keys canonical (ascending ids, no zero coefficients) gives a
unique normal form, so "is this exactly zero?" is a dictionary emptiness
test.

Coefficients may be any scalar ring: ``QQi``/``Cubic3``/``Fraction``/``int``
for exact work, ``complex`` for grid evaluation.  All Grassmann signs live in
the keys; coefficients always multiply commutatively.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import is_exact_scalar, scalar_to_complex

MAX_GENERATORS = 8

_SCALAR_TYPES = (int, float, complex)


def _is_scalar(x) -> bool:
    return isinstance(x, _SCALAR_TYPES) or is_exact_scalar(x)


@dataclass(frozen=True)
class OddGenerator:
    """Handle for one anticommuting generator; distinct ids anticommute."""

    id: int

    def __post_init__(self):
        if not (0 <= self.id < MAX_GENERATORS):
            raise ValueError(
                f"generator id must be in [0, {MAX_GENERATORS}), got {self.id}")


def _merge_keys(k1, k2):
    """Merge two strictly increasing tuples, tracking the permutation sign.

    Returns ``(key, sign)`` or ``(None, 0)`` when a generator repeats (the
    product vanishes).  Each element of ``k2`` placed before the remaining
    tail of ``k1`` flips the sign once per element it jumps over.
    """
    if not k1:
        return k2, 1
    if not k2:
        return k1, 1
    out = []
    sign = 1
    i = j = 0
    n1, n2 = len(k1), len(k2)
    while i < n1 and j < n2:
        a, b = k1[i], k2[j]
        if a == b:
            return None, 0
        if a < b:
            out.append(a)
            i += 1
        else:
            out.append(b)
            j += 1
            if (n1 - i) & 1:
                sign = -sign
    out.extend(k1[i:])
    out.extend(k2[j:])
    return tuple(out), sign


def _canonical_key(seq):
    """Sort an arbitrary id sequence into canonical order.

    Returns ``(key, sign)`` with the parity of the sorting permutation, or
    ``(None, 0)`` if an id repeats.
    """
    key = []
    sign = 1
    for g in seq:
        # insertion sort; each swap flips the sign
        pos = len(key)
        while pos > 0 and key[pos - 1] > g:
            pos -= 1
        if pos > 0 and key[pos - 1] == g:
            return None, 0
        if (len(key) - pos) & 1:
            sign = -sign
        key.insert(pos, g)
    return tuple(key), sign


class GrassmannNumber:
    """Element of the Grassmann algebra in canonical normal form."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms: mapping already in canonical form (ascending keys); zero
        # coefficients are dropped here so equality stays structural.
        clean = {}
        if terms:
            for key, coeff in terms.items():
                if coeff:
                    clean[key] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GrassmannNumber is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def scalar(cls, c) -> "GrassmannNumber":
        return cls({(): c})

    @classmethod
    def generator(cls, g) -> "GrassmannNumber":
        if isinstance(g, OddGenerator):
            g = g.id
        OddGenerator(g)  # validate range
        return cls({(g,): 1})

    @classmethod
    def from_terms(cls, pairs) -> "GrassmannNumber":
        """Build from ``(id_sequence, coeff)`` pairs in any key order."""
        acc = {}
        for seq, coeff in pairs:
            key, sign = _canonical_key(seq)
            if key is None:
                continue
            c = coeff if sign > 0 else -coeff
            if key in acc:
                acc[key] = acc[key] + c
            else:
                acc[key] = c
        return cls(acc)

    # -- ring structure ------------------------------------------------

    def __add__(self, other):
        if _is_scalar(other):
            other = GrassmannNumber.scalar(other)
        if not isinstance(other, GrassmannNumber):
            return NotImplemented
        acc = dict(self.terms)
        for key, c in other.terms.items():
            if key in acc:
                acc[key] = acc[key] + c
            else:
                acc[key] = c
        return GrassmannNumber(acc)

    __radd__ = __add__

    def __sub__(self, other):
        if _is_scalar(other):
            other = GrassmannNumber.scalar(other)
        if not isinstance(other, GrassmannNumber):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return GrassmannNumber({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if _is_scalar(other):
            return GrassmannNumber({k: c * other for k, c in self.terms.items()})
        if not isinstance(other, GrassmannNumber):
            return NotImplemented
        acc = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key, sign = _merge_keys(k1, k2)
                if key is None:
                    continue
                c = c1 * c2
                if sign < 0:
                    c = -c
                if key in acc:
                    acc[key] = acc[key] + c
                else:
                    acc[key] = c
        return GrassmannNumber(acc)

    def __rmul__(self, other):
        if _is_scalar(other):
            return GrassmannNumber({k: other * c for k, c in self.terms.items()})
        return NotImplemented

    def __eq__(self, other):
        if _is_scalar(other):
            other = GrassmannNumber.scalar(other)
        if not isinstance(other, GrassmannNumber):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    # -- structure maps -------------------------------------------------

    def body(self):
        """Coefficient of the empty key (0 if absent)."""
        return self.terms.get((), 0)

    def soul(self) -> "GrassmannNumber":
        return GrassmannNumber({k: c for k, c in self.terms.items() if k})

    def parity(self) -> str:
        """'even', 'odd', or 'mixed' by key length mod 2; zero counts even."""
        lens = {len(k) & 1 for k in self.terms}
        if not lens:
            return "even"
        if lens == {0}:
            return "even"
        if lens == {1}:
            return "odd"
        return "mixed"

    def deriv(self, g) -> "GrassmannNumber":
        """Left derivative with respect to generator ``g``."""
        if isinstance(g, OddGenerator):
            g = g.id
        acc = {}
        for key, c in self.terms.items():
            if g not in key:
                continue
            pos = key.index(g)
            new = key[:pos] + key[pos + 1:]
            acc[new] = c if pos % 2 == 0 else -c
        return GrassmannNumber(acc)

    def substitute(self, old, new) -> "GrassmannNumber":
        """Replace generator ``old`` by generator ``new`` everywhere."""
        if isinstance(old, OddGenerator):
            old = old.id
        if isinstance(new, OddGenerator):
            new = new.id
        pairs = []
        for key, c in self.terms.items():
            if old in key:
                key = tuple(new if g == old else g for g in key)
            pairs.append((key, c))
        return GrassmannNumber.from_terms(pairs)

    def to_complex(self) -> "GrassmannNumber":
        """Copy with all coefficients converted to floating complex."""
        return GrassmannNumber({k: scalar_to_complex(c) for k, c in self.terms.items()})

    def max_abs(self) -> float:
        if not self.terms:
            return 0.0
        return max(abs(scalar_to_complex(c)) for c in self.terms.values())

    def is_exact(self) -> bool:
        return all(is_exact_scalar(c) for c in self.terms.values())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: (len(k), k)):
            c = self.terms[key]
            mon = "*".join(f"e{g}" for g in key)
            parts.append(f"({c})" if not mon else f"({c})*{mon}")
        return " + ".join(parts)


G_ZERO = GrassmannNumber()
G_ONE = GrassmannNumber.scalar(1)


def gmul(a: GrassmannNumber, b: GrassmannNumber) -> GrassmannNumber:
    """Grassmann product (function form of ``a * b``)."""
    return a * b


def body(a: GrassmannNumber):
    return a.body()


def soul(a: GrassmannNumber) -> GrassmannNumber:
    return a.soul()


def parity(a: GrassmannNumber) -> str:
    return a.parity()
