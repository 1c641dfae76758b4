"""N-super-soliton tau pairs and component field reconstruction.

A soliton spec is a list of nonzero wavenumbers ``kappa_i`` (pairwise
``kappa_i + kappa_j != 0``), nonzero even amplitudes ``a_i``, and one odd
generator ``zeta``.  Each phase carries ``Psi_i = kappa_i x + omega_i t``
with the dispersion relation ``omega_i = -kappa_i^3``, plus the odd part
``theta * zeta_i`` where the standard proportionality constraint
``kappa_i zeta_j = kappa_j zeta_i`` fixes ``zeta_i = (kappa_i/kappa_1) zeta``.

The tau pair is the subset expansion

    tau1 = sum_{S subset {1..N}} (prod_{i in S} a_i)
           (prod_{i<j in S} A_ij) exp(sum_{i in S} Psi_i),
    tau2 = the same sum with amplitudes b_i = -a_i,

with interaction coefficients ``A_ij = ((k_i - k_j)/(k_i + k_j))^2``; the
``b_i = -a_i`` rule is equivalent to an extra ``(-1)^|S|`` on each tau2
term.  The N = 1, 2, 3 cases reproduce the printed small-N tau functions
term for term; the general-N pattern is gated behind exact bilinear
verification, so a wrong extrapolation cannot ship silently.

``exp(theta*zeta_i) = 1 + theta*zeta_i`` exactly, so each subset term
contributes body coefficient ``c_S`` and soul coefficient
``c_S * sum_{i in S} zeta_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .fields import FieldBundle, from_tau_pair
from .grassmann import GrassmannNumber, OddGenerator
from .scalars import QQi
from .superexpr import ExpSum, Phase, Superfield


def dispersion(kappa):
    """Frequency from the dispersion relation ``omega = -kappa^3``."""
    return -(kappa ** 3)


def interaction_coefficient(ki, kj):
    """Pairwise interaction factor ``((ki - kj)/(ki + kj))^2``."""
    s = ki + kj
    if not s:
        raise ZeroDivisionError(f"kappa_i = -kappa_j (= {ki}); interaction "
                                "coefficient undefined")
    return ((ki - kj) / s) ** 2


def _coerce_even_scalar(x, what: str):
    """Accept exact/floating scalars; reject genuine Grassmann soul content."""
    if isinstance(x, GrassmannNumber):
        if x.soul():
            raise ValueError(f"{what} must be a plain even scalar, "
                             "not a soul-valued Grassmann number")
        x = x.body()
    if isinstance(x, (int, Fraction)):
        return QQi(x)
    if isinstance(x, QQi):
        return x
    if isinstance(x, (float, complex)):
        return complex(x)
    raise TypeError(f"{what} has unsupported type {type(x).__name__}")


@dataclass
class SolitonSpec:
    """Parameters fully determining an N-super-soliton tau pair.

    Rational inputs keep exact ``QQi`` coefficients (verification mode); any
    floating input switches the whole spec to floating complex.
    """

    kappas: Sequence
    amps: Sequence
    zeta: OddGenerator = dc_field(default_factory=lambda: OddGenerator(0))

    def __post_init__(self):
        kappas = [_coerce_even_scalar(k, "wavenumber") for k in self.kappas]
        amps = [_coerce_even_scalar(a, "amplitude") for a in self.amps]
        if not kappas:
            raise ValueError("need at least one soliton")
        if len(amps) != len(kappas):
            raise ValueError(f"{len(kappas)} wavenumbers but {len(amps)} amplitudes")
        if any(isinstance(v, complex) for v in (*kappas, *amps)):
            kappas = [complex(v) for v in kappas]
            amps = [complex(v) for v in amps]
        for i, k in enumerate(kappas):
            if not k:
                raise ValueError(f"kappa_{i + 1} must be nonzero")
        for i, a in enumerate(amps):
            if not a:
                raise ValueError(f"amplitude a_{i + 1} must be nonzero")
        for i in range(len(kappas)):
            for j in range(i + 1, len(kappas)):
                if not (kappas[i] + kappas[j]):
                    raise ValueError(
                        f"kappa_{i + 1} + kappa_{j + 1} = 0; interaction "
                        "coefficients would be singular")
        self.kappas = kappas
        self.amps = amps

    @property
    def n(self) -> int:
        return len(self.kappas)

    def is_exact(self) -> bool:
        return all(isinstance(k, QQi) for k in self.kappas)

    def one(self):
        return QQi(1) if self.is_exact() else complex(1)

    def zero(self):
        return QQi(0) if self.is_exact() else complex(0)


def _zeta_coeffs(spec: SolitonSpec):
    """Grassmann zetas obeying the proportionality constraint."""
    k1 = spec.kappas[0]
    gen = GrassmannNumber.generator(spec.zeta)
    return [(k / k1) * gen for k in spec.kappas]


def _assemble_tau(spec: SolitonSpec, amps, omegas, zetas, inter) -> Superfield:
    """One tau function from the subset expansion with given amplitudes."""
    body = {}
    soul = {}
    for mask in range(1 << spec.n):
        members = [i for i in range(spec.n) if mask >> i & 1]
        c = spec.one()
        for i in members:
            c = c * amps[i]
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                c = c * inter[(members[a], members[b])]
        kap = spec.zero()
        om = spec.zero()
        for i in members:
            kap = kap + spec.kappas[i]
            om = om + omegas[i]
        ph = Phase(kap, om)
        body[ph] = body.get(ph, GrassmannNumber()) + GrassmannNumber.scalar(c)
        zsum = GrassmannNumber()
        for i in members:
            zsum = zsum + zetas[i]
        sc = zsum * c
        if sc:
            soul[ph] = soul.get(ph, GrassmannNumber()) + sc
    return Superfield(ExpSum(body), ExpSum(soul), "even")


def _interactions(spec: SolitonSpec):
    return {(i, j): interaction_coefficient(spec.kappas[i], spec.kappas[j])
            for i in range(spec.n) for j in range(i + 1, spec.n)}


def build_tau_pair(spec: SolitonSpec):
    """Tau pair solving both bilinear equations for a valid spec."""
    omegas = [dispersion(k) for k in spec.kappas]
    zetas = _zeta_coeffs(spec)
    inter = _interactions(spec)
    tau1 = _assemble_tau(spec, spec.amps, omegas, zetas, inter)
    tau2 = _assemble_tau(spec, [-a for a in spec.amps], omegas, zetas, inter)
    return tau1, tau2


BREAK_MODES = ("dispersion", "amp-sign", "interaction", "zeta")


def build_broken_tau_pair(spec: SolitonSpec, break_: str):
    """Deliberately violate one construction constraint (negative tests).

    * ``dispersion``  -- flip omega_1 to +kappa_1^3;
    * ``amp-sign``    -- use b_1 = +a_1 instead of -a_1;
    * ``interaction`` -- replace A_12 by 1 in tau1 only (replacing it in both
      taus cancels out of the first bilinear equation and is caught by the
      super derivative instead);
    * ``zeta``        -- give the second soliton an independent odd
      generator, violating the proportionality constraint (needs N >= 2).
    """
    if break_ not in BREAK_MODES:
        raise ValueError(f"unknown break mode {break_!r}; pick from {BREAK_MODES}")
    omegas = [dispersion(k) for k in spec.kappas]
    zetas = _zeta_coeffs(spec)
    inter = _interactions(spec)
    neg_amps = [-a for a in spec.amps]

    if break_ == "dispersion":
        omegas[0] = -omegas[0]
    elif break_ == "zeta":
        if spec.n < 2:
            raise ValueError("zeta break needs N >= 2")
        other = OddGenerator((spec.zeta.id + 1) % 8)
        zetas[1] = GrassmannNumber.generator(other)
    elif break_ == "interaction":
        if spec.n < 2:
            raise ValueError("interaction break needs N >= 2")
        broken = dict(inter)
        broken[(0, 1)] = spec.one()
        tau1 = _assemble_tau(spec, spec.amps, omegas, zetas, broken)
        tau2 = _assemble_tau(spec, neg_amps, omegas, zetas, inter)
        return tau1, tau2
    else:  # amp-sign
        neg_amps[0] = spec.amps[0]
    tau1 = _assemble_tau(spec, spec.amps, omegas, zetas, inter)
    tau2 = _assemble_tau(spec, neg_amps, omegas, zetas, inter)
    return tau1, tau2


def reconstruct_fields(spec: SolitonSpec, label: str = "") -> FieldBundle:
    """Component fields u, v, f1, f2 of the N-soliton solution."""
    tau1, tau2 = build_tau_pair(spec)
    return from_tau_pair(tau1, tau2, label=label or f"soliton-N{spec.n}")


# Figure parameter presets: kappa_1 = 2 kappa_2 = 1 (two solitons) and
# kappa_1 = (10/7) kappa_2 = (5/2) kappa_3 = 1 (three solitons), all
# amplitudes i; time slices to match.
PRESETS = {
    "fig1": SolitonSpec(kappas=[Fraction(1), Fraction(1, 2)],
                        amps=[QQi(0, 1), QQi(0, 1)]),
    "fig2": SolitonSpec(kappas=[Fraction(1), Fraction(7, 10), Fraction(2, 5)],
                        amps=[QQi(0, 1), QQi(0, 1), QQi(0, 1)]),
}

PRESET_TIMES = {
    "fig1": (-10.0, 0.0, 10.0),
    "fig2": (-15.0, 0.0, 15.0),
}


def preset_spec(name: str) -> SolitonSpec:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown soliton preset {name!r}; "
                       f"known: {sorted(PRESETS)}") from None
