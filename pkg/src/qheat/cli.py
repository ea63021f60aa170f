"""qheat command line: spectra, verification runs, sharpness scans, reports.

Subcommands
    spectrum   eigenvalue/dimension table with bound flags
    tau        hypercontractive threshold time for one (p, n, D)
    verify     {ultra, hyper, lsi, gap} inequality reports over elements
    sharpness  {hls, hy, criterion} ratio scans / boundedness criterion
    algebra    check-delta-form for a block-size list
    series     check-identity for the (2k+1)^2 Y^k closed form

Reports go to stdout or --output as CSV (RFC-4180 quoting, "#" metadata
preamble) or JSON; numeric fields carry --precision significant digits and
runs with a fixed seed are byte-reproducible.  --plot renders a figure next
to the delimited output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .central_algebra import CentralElement
from .cstar_model import delta_form_defect, dim_b, parse_shape
from .quadrature import parse_measure
from .semigroup import (
    SemigroupSpec,
    hyper_margin,
    log_sobolev_defect,
    lsi_c_from_hyper,
    series_weight_sum,
    spectral_gap_defect,
    tau_p,
    tau_root,
    ultra_margin,
)
from .sobolev import SharpnessScanConfig, g_criterion, g_criterion_limit, sharpness_scan
from .spectrum import HEAT, GeneratingFunctional, spectrum_table

SCHEMA_VERSION = "qheat-report/1"
PRNG_NAME = "numpy-pcg64"
PRNG_VERSION = "1"
DEFAULT_PRECISION = 12

_FAIL_EXIT = 1
_USAGE_EXIT = 2


# ---------------------------------------------------------------------------
# seeded element generation
# ---------------------------------------------------------------------------


def random_elements(n: int, count: int, kmax: int, seed: int) -> list[CentralElement]:
    """Seeded test population: coefficients i.i.d. uniform on [-1, 1]."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return [
        CentralElement(n, tuple(float(c) for c in rng.uniform(-1.0, 1.0, kmax + 1)))
        for _ in range(count)
    ]


def positive_elements(n: int, count: int, kmax: int, seed: int) -> list[CentralElement]:
    """Random elements shifted to be pointwise nonnegative.

    The constant term absorbs the crude sup bound sum |c_k| (2k+1) of the
    nonconstant part, which dominates the transferred function everywhere.
    """
    out = []
    for x in random_elements(n, count, kmax, seed):
        shift = sum(abs(c) * (2 * k + 1) for k, c in enumerate(x.coeffs) if k > 0)
        coeffs = (x.coeff(0) + shift + 1e-9,) + x.coeffs[1:]
        out.append(CentralElement(n, coeffs))
    return out


def parse_element(text: str, n: int) -> CentralElement:
    try:
        coeffs = tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad element coefficients {text!r}") from exc
    return CentralElement(n, coeffs)


def element_from_csv(path: str, n: int) -> CentralElement:
    coeffs = []
    with open(path, newline="") as handle:
        for row in csv.reader(handle):
            if not row or row[0].lstrip().startswith("#"):
                continue
            coeffs.append(float(row[0]))
    return CentralElement(n, tuple(coeffs))


# ---------------------------------------------------------------------------
# report formatting
# ---------------------------------------------------------------------------


def _format_value(value, precision: int) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        return f"{value:.{precision}g}"
    return str(value)


def _round_for_json(value, precision: int):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return None if math.isnan(value) else float(f"{value:.{precision}g}")
    return value


def write_report(header, rows, meta, fmt, precision, stream) -> None:
    if fmt == "csv":
        for key, value in meta.items():
            stream.write(f"# {key}={value}\r\n")
        writer = csv.writer(stream, quoting=csv.QUOTE_MINIMAL)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format_value(row[col], precision) for col in header])
    else:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "meta": {k: v for k, v in meta.items() if k != "schema_version"},
            "rows": [
                {col: _round_for_json(row[col], precision) for col in header}
                for row in rows
            ],
        }
        stream.write(json.dumps(doc, indent=2))
        stream.write("\n")


# ---------------------------------------------------------------------------
# subcommand handlers; each returns (header, rows, meta, exit_code)
# ---------------------------------------------------------------------------


def _parse_float_list(text: str) -> list[float]:
    if text.startswith("geom:"):
        lo, hi, count = text[len("geom:"):].split(":")
        return [float(v) for v in np.geomspace(float(lo), float(hi), int(count))]
    return [float(part) for part in text.split(",")]


def _handle_spectrum(args):
    if args.a == 1.0 and args.nu is None:
        g = HEAT
    else:
        nu = parse_measure(args.nu, args.n) if args.nu else None
        g = GeneratingFunctional(args.a, nu) if nu else GeneratingFunctional(args.a)
    table = spectrum_table(args.n, args.kmax, g, tol=args.tol)
    rows = [
        {
            "k": r.k,
            "lambda": r.lam,
            "n_k": r.n_k,
            "m_k": r.m_k,
            "lower": r.lower,
            "upper": r.upper,
            "bounds_ok": r.bounds_ok,
        }
        for r in table.rows
    ]
    meta = {"command": "spectrum", "n": args.n, "kmax": args.kmax, "a": args.a}
    return type(table).HEADER, rows, meta, 0


def _handle_tau(args):
    Y, residual = tau_root(args.p, args.D)
    rows = [
        {
            "p": args.p,
            "n": args.n,
            "D": args.D,
            "Y": Y,
            "tau": -(args.n / 2.0) * math.log(Y),
            "residual": abs(residual),
        }
    ]
    meta = {"command": "tau"}
    return ("p", "n", "D", "Y", "tau", "residual"), rows, meta, 0


def _verify_population(args):
    if args.element is not None:
        return [parse_element(args.element, args.n)], {}
    if args.element_file is not None:
        return [element_from_csv(args.element_file, args.n)], {}
    count = args.random if args.random is not None else 20
    maker = positive_elements if args.kind == "lsi" else random_elements
    elems = maker(args.n, count, args.kmax, args.seed)
    meta = {
        "prng": f"{PRNG_NAME}-v{PRNG_VERSION}",
        "seed": args.seed,
        "random": count,
        "kmax": args.kmax,
    }
    return elems, meta


def _handle_verify(args):
    spec = SemigroupSpec(args.n)
    elements, meta_extra = _verify_population(args)
    rows = []

    def add(case_id, report):
        rows.append(
            {
                "case_id": case_id,
                "name": report.name,
                "lhs": report.lhs,
                "rhs": report.rhs,
                "margin": report.margin,
                "quad_err": report.quadrature_error,
                "pass": report.passed,
            }
        )

    if args.kind == "gap":
        for i, x in enumerate(elements):
            add(i, spectral_gap_defect(x, spec))
    elif args.kind == "hyper":
        t = args.t if args.t is not None else tau_p(args.p, args.n, args.D)
        meta_extra["p"] = f"{args.p:g}"
        meta_extra["t"] = f"{t:.12g}"
        for i, x in enumerate(elements):
            add(i, hyper_margin(x, t, args.p, spec, D=args.D, tol=args.tol))
    elif args.kind == "ultra":
        times = _parse_float_list(args.t_grid)
        meta_extra["t_grid"] = args.t_grid
        for i, x in enumerate(elements):
            for t in times:
                add(f"{i}@t={t:g}", ultra_margin(x, t, spec, D=args.D))
    elif args.kind == "lsi":
        if args.c is not None:
            c, c_label = args.c, f"{args.c:g}"
        else:
            c = lsi_c_from_hyper(args.n, args.D)
            c_label = f"heuristic:{c:.6g}"
        for i, x in enumerate(elements):
            add(i, log_sobolev_defect(x, c, spec, tol=args.tol))
        meta_extra["c"] = c_label
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(args.kind)

    meta = {"command": f"verify {args.kind}", "n": args.n, **meta_extra}
    header = ("case_id", "name", "lhs", "rhs", "margin", "quad_err", "pass")
    code = 0 if all(r["pass"] for r in rows) else _FAIL_EXIT
    return header, rows, meta, code


def _parse_family(text: str) -> tuple[str, float]:
    if text.startswith("poly:a="):
        return "poly-decay", float(text[len("poly:a="):])
    if text in ("poly", "poly-decay"):
        return "poly-decay", 2.0
    if text in ("heat", "heat-kernel-tail"):
        return "heat-kernel-tail", 0.0
    raise ValueError(f"unknown family {text!r} (use poly:a=<a> or heat)")


def _handle_sharpness(args):
    meta = {"command": f"sharpness {args.kind}", "n": args.n, "s": args.s}
    header = ("grid", "lhs", "rhs", "ratio", "flag")
    if args.kind == "criterion":
        times = _parse_float_list(args.t_grid)
        reference = g_criterion_limit(args.n)
        rows = []
        for t in times:
            value = g_criterion(args.n, args.s, t, tail_tol=args.tail_tol)
            rows.append(
                {
                    "grid": t,
                    "lhs": value,
                    "rhs": reference,
                    "ratio": value / reference,
                    "flag": "ok",
                }
            )
        meta["rhs"] = "critical-exponent small-t limit"
        return header, rows, meta, 0

    family, param = _parse_family(args.family)
    grid = tuple(int(v) for v in args.grid.split(",")) if family == "poly-decay" else tuple(
        _parse_float_list(args.grid)
    )
    cfg = SharpnessScanConfig(
        n=args.n,
        s=args.s,
        p=args.p,
        inequality=args.kind,
        family=family,
        family_param=param,
        grid=grid,
        norm_tol=args.tol,
    )
    rows = [
        {"grid": r.grid, "lhs": r.lhs, "rhs": r.rhs, "ratio": r.ratio, "flag": r.flag}
        for r in sharpness_scan(cfg)
    ]
    meta["p"] = args.p
    meta["family"] = args.family
    return header, rows, meta, 0


def _handle_algebra(args):
    shape = parse_shape(args.algebra)
    defect = delta_form_defect(shape)
    rows = [
        {
            "shape": str(shape),
            "dim": dim_b(shape),
            "defect": defect,
            "pass": defect < args.defect_tol,
        }
    ]
    meta = {"command": "algebra check-delta-form"}
    code = 0 if rows[0]["pass"] else _FAIL_EXIT
    return ("shape", "dim", "defect", "pass"), rows, meta, code


def _handle_series(args):
    ys = _parse_float_list(args.y_grid)
    rows = []
    for y in ys:
        if not 0.0 < y < 1.0:
            raise ValueError(f"series identity needs Y in (0, 1), got {y}")
        closed = series_weight_sum(y)
        # truncated series with geometric tail control
        kmax = max(64, int(math.ceil(60.0 / -math.log(y))))
        k = np.arange(1, kmax + 1, dtype=float)
        partial = float(np.sum((2.0 * k + 1.0) ** 2 * y**k))
        rows.append(
            {
                "y": y,
                "lhs": partial,
                "rhs": closed,
                "abs_err": abs(partial - closed),
                "pass": abs(partial - closed) < args.series_tol,
            }
        )
    meta = {"command": "series check-identity"}
    code = 0 if all(r["pass"] for r in rows) else _FAIL_EXIT
    return ("y", "lhs", "rhs", "abs_err", "pass"), rows, meta, code


_HANDLERS = {
    "spectrum": _handle_spectrum,
    "tau": _handle_tau,
    "verify": _handle_verify,
    "sharpness": _handle_sharpness,
    "algebra": _handle_algebra,
    "series": _handle_series,
}


# ---------------------------------------------------------------------------
# parser construction / config file
# ---------------------------------------------------------------------------


def load_config(path: str) -> dict:
    """INI-style key=value presets; '#' starts a comment."""
    values: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("["):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"bad config line {raw!r} in {path}")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


_CONFIG_CASTS = {
    "n": int,
    "kmax": int,
    "seed": int,
    "random": int,
    "precision": int,
    "p": float,
    "s": float,
    "a": float,
    "D": float,
    "c": float,
    "t": float,
    "tol": float,
    "tail_tol": float,
    "defect_tol": float,
    "series_tol": float,
}


def build_parser(defaults: dict) -> argparse.ArgumentParser:
    def get(key, fallback):
        if key in defaults:
            cast = _CONFIG_CASTS.get(key, str)
            return cast(defaults[key])
        return fallback

    parser = argparse.ArgumentParser(
        prog="qheat",
        description="spectral data and functional inequalities of central heat semigroups",
    )
    parser.add_argument("--version", action="version", version=f"qheat {__version__}")
    parser.add_argument("--config", help="INI-style key=value preset file")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI-style key=value preset file")
    common.add_argument("--format", choices=("csv", "json"), default=get("format", "csv"))
    common.add_argument("--output", default=get("output", None), help="output path (default stdout)")
    common.add_argument(
        "--precision",
        type=int,
        default=get("precision", int(os.environ.get("QHEAT_PRECISION", DEFAULT_PRECISION))),
        help="significant digits for numeric fields",
    )
    common.add_argument("--tol", type=float, default=get("tol", 1e-9), help="quadrature tolerance")
    common.add_argument("--plot", action="store_true", help="render a figure next to the report")

    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectrum", parents=[common], help="eigenvalue table")
    p_spec.add_argument("--n", type=int, default=get("n", 5))
    p_spec.add_argument("--kmax", type=int, default=get("kmax", 20))
    p_spec.add_argument("--a", type=float, default=get("a", 1.0), help="drift coefficient")
    p_spec.add_argument("--nu", default=get("nu", None), help="jump measure, e.g. atoms=0:1;density=none")

    p_tau = sub.add_parser("tau", parents=[common], help="hypercontractive threshold")
    p_tau.add_argument("--p", type=float, default=get("p", 4.0))
    p_tau.add_argument("--n", type=int, default=get("n", 5))
    p_tau.add_argument("--D", type=float, default=get("D", 1.0))

    p_ver = sub.add_parser("verify", parents=[common], help="inequality verification runs")
    p_ver.add_argument("kind", choices=("ultra", "hyper", "lsi", "gap"))
    p_ver.add_argument("--n", type=int, default=get("n", 5))
    p_ver.add_argument("--element", default=get("element", None), help="coefficients c0,c1,...")
    p_ver.add_argument("--element-file", default=get("element_file", None), help="one-column CSV")
    p_ver.add_argument("--random", type=int, default=get("random", None), help="population size")
    p_ver.add_argument("--kmax", type=int, default=get("kmax", 20))
    p_ver.add_argument("--seed", type=int, default=get("seed", 0))
    p_ver.add_argument("--p", type=float, default=get("p", 4.0), help="target exponent (hyper)")
    p_ver.add_argument("--D", type=float, default=get("D", 1.0))
    p_ver.add_argument("--t", type=float, default=get("t", None), help="time (hyper; default tau_p)")
    p_ver.add_argument("--t-grid", default=get("t_grid", "0.1,1,10"), help="times (ultra)")
    p_ver.add_argument("--c", type=float, default=get("c", None), help="log-Sobolev constant (lsi)")

    p_sharp = sub.add_parser("sharpness", parents=[common], help="embedding sharpness scans")
    p_sharp.add_argument("kind", choices=("hls", "hy", "criterion"))
    p_sharp.add_argument("--n", type=int, default=get("n", 5))
    p_sharp.add_argument("--s", type=float, default=get("s", 3.0))
    p_sharp.add_argument("--p", type=float, default=get("p", 1.5))
    p_sharp.add_argument("--family", default=get("family", "poly:a=2"))
    p_sharp.add_argument("--grid", default=get("grid", "8,16,32,64"), help="family size grid")
    p_sharp.add_argument(
        "--t-grid", default=get("t_grid", "geom:1e-3:10:25"), help="times (criterion)"
    )
    p_sharp.add_argument("--tail-tol", type=float, default=get("tail_tol", 1e-10))

    p_alg = sub.add_parser("algebra", parents=[common], help="C*-model checks")
    p_alg.add_argument("kind", choices=("check-delta-form",))
    p_alg.add_argument("--algebra", default=get("algebra", "1,1,1,1,1"), help="block sizes, e.g. 2,1")
    p_alg.add_argument("--defect-tol", type=float, default=get("defect_tol", 1e-12))

    p_ser = sub.add_parser("series", parents=[common], help="series identity checks")
    p_ser.add_argument("kind", choices=("check-identity",))
    p_ser.add_argument(
        "--y-grid", default=get("y_grid", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")
    )
    p_ser.add_argument("--series-tol", type=float, default=get("series_tol", 1e-10))

    return parser


def run(argv: list[str]) -> int:
    """Dispatch one invocation; returns the process exit code."""
    probe = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    probe.add_argument("--config")
    known, _ = probe.parse_known_args(argv)
    try:
        defaults = load_config(known.config) if known.config else {}
    except (OSError, ValueError) as exc:
        print(f"qheat: config error: {exc}", file=sys.stderr)
        return _USAGE_EXIT

    parser = build_parser(defaults)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0

    try:
        header, rows, meta, code = _HANDLERS[args.command](args)
    except (ValueError, RuntimeError) as exc:
        print(f"qheat: {exc}", file=sys.stderr)
        return _USAGE_EXIT

    meta = {"schema_version": SCHEMA_VERSION, **meta, "precision": args.precision}
    buffer = io.StringIO()
    write_report(header, rows, meta, args.format, args.precision, buffer)
    text = buffer.getvalue()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)

    if args.plot:
        from . import plots

        target = plots.figure_path(args.output, args.command)
        plots.render(args.command, getattr(args, "kind", None), rows, meta, target)
        print(f"qheat: figure written to {target}", file=sys.stderr)

    return code


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
