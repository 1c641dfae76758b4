"""Command-line front end.

Subcommands
-----------
soliton   build an N-super-soliton solution; evaluate it at a point or dump
          figure data (columns x, |u|, -f1) per requested time slice.
yv        print exact Yablonskii-Vorob'ev coefficients (rational triples
          (a, b, c) meaning a + b*3^(1/3) + c*3^(2/3)) or dump similarity
          solution figure data (columns x, Im u_n, Im f1_n).
verify    bilinear -- exact residuals of the two bilinear equations, with an
          optional randomized sweep plus constraint-breaking negative checks;
          pde -- finite-difference residuals of the component PDE system.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 pole/domain error.  Output files are byte-deterministic for a fixed
configuration and kernel backend (floats printed with 17 significant
digits).  Relative output paths are resolved against $SUSYKDV_OUTDIR when it
is set.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .errors import DomainError, PoleError
from .hirota import verify_bilinear
from .residual import (DEFAULT_STEP, DEFAULT_TOLERANCE, DEFAULT_XSPAN, Grid,
                       verify_solution)
from .scalars import QQi
from .soliton import (PRESET_TIMES, PRESETS, SolitonSpec, build_broken_tau_pair,
                      build_tau_pair, preset_spec, reconstruct_fields)
from .yablonskii import (FIG3_INDEX, FIG3_TIMES, similarity_fields,
                         similarity_tau, yv_poly)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_POLE = 3


class ConfigError(ValueError):
    pass


def _fmt(v: float) -> str:
    return f"{float(v):.17g}"


def _parse_rational(tok: str) -> Fraction:
    try:
        return Fraction(tok.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse rational {tok!r}: {exc}") from None


def _parse_amp(tok: str) -> QQi:
    """Parse amplitudes like 'i', '-i', '2i', '1/2', '1+2i', '3-1/2i'."""
    s = tok.strip().replace(" ", "")
    if not s:
        raise ConfigError("empty amplitude")
    if not s.endswith("i"):
        return QQi(_parse_rational(s))
    s = s[:-1]
    # split off a leading real part if one is present
    for pos in range(len(s) - 1, 0, -1):
        if s[pos] in "+-" and s[pos - 1] not in "+-/":
            re_part, im_part = s[:pos], s[pos:]
            break
    else:
        re_part, im_part = "", s
    if im_part in ("", "+"):
        im = Fraction(1)
    elif im_part == "-":
        im = Fraction(-1)
    else:
        im = _parse_rational(im_part)
    re = _parse_rational(re_part) if re_part else Fraction(0)
    return QQi(re, im)


def _parse_list(tok: str, parse):
    return [parse(t) for t in tok.split(",") if t.strip()]


def _parse_xgrid(tok: str):
    parts = tok.split(",")
    if len(parts) != 3:
        raise ConfigError(f"--xgrid wants 'lo,hi,npoints', got {tok!r}")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad --xgrid {tok!r}: {exc}") from None


def _out_path(path: str) -> str:
    outdir = os.environ.get("SUSYKDV_OUTDIR")
    if outdir and not os.path.isabs(path):
        return os.path.join(outdir, path)
    return path


def _complex_pair(z: complex):
    z = complex(z)
    return [z.real, z.imag]


def _soliton_spec_from_args(args) -> tuple[SolitonSpec, tuple, str]:
    if args.preset:
        spec = preset_spec(args.preset)
        ts = PRESET_TIMES[args.preset]
        label = f"preset={args.preset}"
    else:
        if not args.kappa:
            raise ConfigError("need --preset or --kappa")
        kappas = _parse_list(args.kappa, _parse_rational)
        if args.amp:
            amps = _parse_list(args.amp, _parse_amp)
        else:
            amps = [QQi(0, 1)] * len(kappas)
        if args.n is not None and args.n != len(kappas):
            raise ConfigError(f"--n {args.n} disagrees with {len(kappas)} kappas")
        try:
            spec = SolitonSpec(kappas=kappas, amps=amps)
        except (ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from None
        ts = (-10.0, 0.0, 10.0)
        label = f"kappas={args.kappa} amps={args.amp or 'i*'}"
    if args.t:
        ts = tuple(_parse_list(args.t, float))
    return spec, ts, label


def _figure_grid(xspan, poles, eps=1e-9):
    lo, hi, npts = xspan
    xs = np.linspace(lo, hi, int(npts))
    if poles:
        arr = np.asarray(sorted(poles), dtype=float)
        xs = xs[np.all(np.abs(xs[:, None] - arr[None, :]) > eps, axis=1)]
    return xs


def _write_slices(path: str, header_comment: str, colnames, slices, wide: bool):
    """slices: list of (t, xs, columns dict name->array)."""
    path = _out_path(path)
    written = []
    if wide:
        xs = slices[0][1]
        cols = [("x", xs)]
        for t, _, data in slices:
            for name in colnames:
                cols.append((f"{name}[t={t:g}]", data[name]))
        _write_csv(path, header_comment, cols)
        written.append(path)
        return written
    multi = len(slices) > 1
    for t, xs, data in slices:
        target = path
        if multi:
            stem, ext = os.path.splitext(path)
            target = f"{stem}_t{t:g}{ext or '.csv'}"
        cols = [("x", xs)] + [(name, data[name]) for name in colnames]
        _write_csv(target, header_comment + f" t={t:g}", cols)
        written.append(target)
    return written


def _write_csv(path: str, comment: str, cols):
    names = [name for name, _ in cols]
    arrays = [np.asarray(arr) for _, arr in cols]
    n = arrays[0].shape[0]
    with open(path, "w", newline="\n") as fh:
        fh.write(f"# {comment}\n")
        fh.write(",".join(names) + "\n")
        for i in range(n):
            fh.write(",".join(_fmt(arr[i]) for arr in arrays) + "\n")


def _cmd_soliton(args) -> int:
    spec, ts, label = _soliton_spec_from_args(args)
    bundle = reconstruct_fields(spec)
    if args.eval:
        vals = _parse_list(args.eval, float)
        if len(vals) != 2:
            raise ConfigError(f"--eval wants 'x,t', got {args.eval!r}")
        x, t = vals
        out = {
            "x": x, "t": t,
            "u": _complex_pair(bundle.u(x, t)),
            "v": _complex_pair(bundle.v(x, t)),
            "f1": _complex_pair(bundle.f1(x, t)),
            "f2": _complex_pair(bundle.f2(x, t)),
        }
        print(json.dumps(out, sort_keys=True))
        return EXIT_OK
    if args.figure_data:
        xs = _figure_grid(args.xgrid, [])
        slices = []
        for t in ts:
            u = bundle.u(xs, t)
            f1 = bundle.f1(xs, t)
            slices.append((t, xs, {"abs_u": np.abs(u), "minus_f1": -f1.real}))
        files = _write_slices(args.figure_data,
                              f"susykdv soliton {label} xgrid={args.xgrid}",
                              ["abs_u", "minus_f1"], slices, args.wide)
        for f in files:
            print(f)
        return EXIT_OK
    raise ConfigError("soliton: nothing to do (use --eval or --figure-data)")


def _cmd_yv(args) -> int:
    default_times = (-10.0, 0.0, 10.0)
    if args.preset:
        if args.n is not None and args.n != FIG3_INDEX:
            raise ConfigError(f"--n {args.n} disagrees with preset {args.preset}")
        args.n = FIG3_INDEX
        default_times = FIG3_TIMES
    if args.n is None:
        raise ConfigError("yv: --n (or --preset) is required")
    if args.print_coeffs:
        q = yv_poly(args.n)
        print(f"# Q_{args.n}, degree {q.degree}; "
              "coefficient triples (a, b, c) = a + b*3^(1/3) + c*3^(2/3)")
        for k, c in enumerate(q.coeffs):
            a, b, cc = c.triple()
            print(f"z^{k}: ({a}, {b}, {cc})")
        return EXIT_OK
    if args.figure_data:
        if args.n < 1:
            raise ConfigError("figure data needs n >= 1")
        bundle = similarity_fields(args.n)
        ts = tuple(_parse_list(args.t, float)) if args.t else default_times
        slices = []
        for t in ts:
            xs = _figure_grid(args.xgrid, bundle.poles_at(t))
            u = bundle.u(xs, t)
            f1 = bundle.f1(xs, t)
            slices.append((t, xs, {"im_u": u.imag, "im_f1": f1.imag}))
        files = _write_slices(args.figure_data,
                              f"susykdv yv n={args.n} xgrid={args.xgrid}",
                              ["im_u", "im_f1"], slices, args.wide)
        for f in files:
            print(f)
        return EXIT_OK
    raise ConfigError("yv: nothing to do (use --print or --figure-data)")


def _residual_pair_jsonable(name, pair):
    r1, r2 = pair
    return [
        {"name": f"{name}:H1", "zero": r1.is_zero, "max_abs_coeff": r1.max_abs_coeff},
        {"name": f"{name}:SD", "zero": r2.is_zero, "max_abs_coeff": r2.max_abs_coeff},
    ]


def _random_valid_kappas(rng: random.Random, n: int):
    while True:
        ks = []
        for _ in range(n):
            k = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            if rng.random() < 0.5:
                k = -k
            ks.append(k)
        ok = all(ks[i] for i in range(n)) and all(
            ks[i] + ks[j] != 0 for i in range(n) for j in range(i + 1, n))
        if ok and len(set(ks)) == n:
            return ks


def _cmd_verify_bilinear(args) -> int:
    checks = []

    def record(name, pair, expect_zero=True):
        r1, r2 = pair
        both = bool(r1.is_zero) and bool(r2.is_zero)
        ok = both if expect_zero else not both
        checks.append({
            "name": name,
            "H1_zero": r1.is_zero, "SD_zero": r2.is_zero,
            "expected": "zero" if expect_zero else "nonzero",
            "pass": ok,
        })

    if args.kappa:
        kappas = _parse_list(args.kappa, _parse_rational)
        amps = (_parse_list(args.amp, _parse_amp) if args.amp
                else [QQi(0, 1)] * len(kappas))
        if args.n is not None and args.n != len(kappas):
            raise ConfigError(f"--n {args.n} disagrees with {len(kappas)} kappas")
        try:
            spec = SolitonSpec(kappas=kappas, amps=amps)
        except (ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from None
        record(f"soliton N={spec.n}", verify_bilinear(*build_tau_pair(spec)))

    if args.sweep:
        rng = random.Random(args.seed)
        for n in range(1, 5):
            for rep in range(args.sweep):
                ks = _random_valid_kappas(rng, n)
                spec = SolitonSpec(kappas=ks, amps=[QQi(0, 1)] * n)
                record(f"sweep N={n} #{rep} kappas={[str(k) for k in ks]}",
                       verify_bilinear(*build_tau_pair(spec)))
        neg = SolitonSpec(kappas=[Fraction(1), Fraction(1, 2)],
                          amps=[QQi(0, 1), QQi(0, 1)])
        for mode in ("dispersion", "amp-sign", "interaction", "zeta"):
            record(f"broken {mode}",
                   verify_bilinear(*build_broken_tau_pair(neg, mode)),
                   expect_zero=False)
        for n in range(0, args.similarity_max + 1):
            record(f"similarity n={n}", verify_bilinear(*similarity_tau(n)))

    if not checks:
        raise ConfigError("verify bilinear: give --kappa and/or --sweep")

    ok = all(c["pass"] for c in checks)
    report = {"command": "verify bilinear", "version": __version__,
              "pass": ok, "checks": checks}
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.json:
        with open(_out_path(args.json), "w", newline="\n") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _bundle_for_selector(sel: str):
    kind, _, rest = sel.partition(":")
    if kind == "soliton":
        if rest not in PRESETS:
            raise ConfigError(f"unknown soliton preset {rest!r}")
        return reconstruct_fields(preset_spec(rest), label=rest), PRESET_TIMES[rest]
    if kind == "yv":
        if rest == "fig3":
            return similarity_fields(FIG3_INDEX), FIG3_TIMES
        try:
            n = int(rest)
        except ValueError:
            raise ConfigError(f"bad yv index {rest!r}") from None
        if n < 1:
            raise ConfigError("yv index must be >= 1")
        return similarity_fields(n), (-10.0, 0.0, 10.0)
    raise ConfigError(f"unknown solution selector {sel!r} "
                      "(expected soliton:<preset> or yv:<n>)")


def _cmd_verify_pde(args) -> int:
    bundle, ts = _bundle_for_selector(args.solution)
    if args.t:
        ts = tuple(_parse_list(args.t, float))
    xspan = DEFAULT_XSPAN if args.grid == "default" else _parse_xgrid(args.grid)
    grid = Grid.regular(ts, xspan, poles_at=bundle.poles_at)
    reports = verify_solution(bundle, grid, h=args.h)
    ok = all(r.max_abs <= args.tol for r in reports)
    report = {
        "command": "verify pde",
        "version": __version__,
        "solution": args.solution,
        "tolerance": args.tol,
        "pass": ok,
        "equations": [dict(r.to_jsonable(), passes=r.max_abs <= args.tol)
                      for r in reports],
    }
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.json:
        with open(_out_path(args.json), "w", newline="\n") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="susykdv",
        description="Exact super-soliton and rational similarity solutions of "
                    "the N=2 supersymmetric KdV equation (a=-2), with "
                    "bilinear and PDE residual verification.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("soliton", help="N-super-soliton solutions")
    ps.add_argument("--preset", choices=sorted(PRESETS))
    ps.add_argument("--n", type=int)
    ps.add_argument("--kappa", help="comma-separated rational wavenumbers")
    ps.add_argument("--amp", help="comma-separated amplitudes (e.g. 'i,i')")
    ps.add_argument("--eval", help="evaluate fields at 'x,t' and print JSON")
    ps.add_argument("--t", help="comma-separated time slices")
    ps.add_argument("--figure-data", help="CSV output path (x, |u|, -f1)")
    ps.add_argument("--wide", action="store_true",
                    help="single CSV with one column group per t")
    ps.add_argument("--xgrid", type=_parse_xgrid, default=DEFAULT_XSPAN,
                    help="x grid as 'lo,hi,npoints'")
    ps.set_defaults(func=_cmd_soliton)

    py = sub.add_parser("yv", help="Yablonskii-Vorob'ev polynomials and "
                                   "rational similarity solutions")
    py.add_argument("--n", type=int)
    py.add_argument("--preset", choices=["fig3"],
                    help="figure preset: n=1 at t=-10,0,10")
    py.add_argument("--print", dest="print_coeffs", action="store_true",
                    help="print exact coefficients as rational triples")
    py.add_argument("--figure-data", help="CSV output path (x, Im u, Im f1)")
    py.add_argument("--t", help="comma-separated time slices")
    py.add_argument("--wide", action="store_true")
    py.add_argument("--xgrid", type=_parse_xgrid, default=DEFAULT_XSPAN)
    py.set_defaults(func=_cmd_yv)

    pv = sub.add_parser("verify", help="verification suites")
    vsub = pv.add_subparsers(dest="verify_command", required=True)

    vb = vsub.add_parser("bilinear", help="exact bilinear residuals")
    vb.add_argument("--n", type=int)
    vb.add_argument("--kappa")
    vb.add_argument("--amp")
    vb.add_argument("--sweep", type=int, default=0,
                    help="random draws per N in 1..4, plus negative suite")
    vb.add_argument("--seed", type=int, default=0)
    vb.add_argument("--similarity-max", type=int, default=5)
    vb.add_argument("--json", help="write the JSON report here as well")
    vb.set_defaults(func=_cmd_verify_bilinear)

    vp = vsub.add_parser("pde", help="finite-difference PDE residuals")
    vp.add_argument("--solution", required=True,
                    help="soliton:<preset> or yv:<n>")
    vp.add_argument("--grid", default="default",
                    help="'default' or 'lo,hi,npoints'")
    vp.add_argument("--t", help="override time slices")
    vp.add_argument("--h", type=float, default=DEFAULT_STEP,
                    help="finite-difference step")
    vp.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    vp.add_argument("--json", help="write the JSON report here as well")
    vp.set_defaults(func=_cmd_verify_pde)

    # values like "-10,0,10" must parse as option arguments, not options
    matcher = re.compile(r"^-\d")
    for parser in (p, ps, py, pv, vb, vp):
        parser._negative_number_matcher = matcher

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PoleError, DomainError) as exc:
        kind = "pole" if isinstance(exc, PoleError) else "domain"
        print(f"error: {kind}: {exc}", file=sys.stderr)
        return EXIT_POLE


def entry() -> None:  # console-script hook
    sys.exit(main())


if __name__ == "__main__":
    entry()
