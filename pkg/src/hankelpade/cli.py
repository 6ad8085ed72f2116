"""Command-line front end: series coefficients to slope to Pade tables.

Every subcommand emits a machine-readable report (JSON by default, CSV where
rows are natural) with all non-integer numbers serialized as decimal strings
at full working precision -- never as binary floats.  Reports are
deterministic: identical invocations produce byte-identical output, which is
what the regression tests diff.  Wall-clock timing is therefore only
included when explicitly requested with ``--timing``.

Exit codes: 0 success, 2 usage error, 3 computation error (no sign change,
precision exhausted, singular Pade system, ...).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Optional, Tuple

from mpmath import mp

from .algebra import GUARD_DIGITS, bigfloat_str, to_bigfloat
from .errors import HankelPadeError, InsufficientDataError
from .hankel import default_precision, root_sequence
from .pade import pade_construct, tf_table
from .series import numeric_coeffs, symbolic_coeffs

SCHEMA_VERSION = "1"

#: CSV header for convergence/figure data; column order is part of the
#: output contract.
FIGURE_COLUMNS = ("D", "d", "root_s", "two_f2", "delta", "log10_delta")


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation parameters for one subcommand."""

    subcommand: str
    d_values: Tuple[int, ...] = (3,)
    Dmax: int = 30
    M: int = 5
    N: int = 8
    precision: object = "auto"  # "auto" or int digits
    nmax: int = 10
    symbolic: bool = False
    slope: Optional[str] = None
    xs: Tuple[str, ...] = ()
    format: str = "json"
    output_path: Optional[str] = None
    timing: bool = False
    allow_degree_mismatch: bool = False


# ---------------------------------------------------------------------------
# Serialization helpers
# ---------------------------------------------------------------------------

def _num(x, precision):
    """Decimal-string form of a BigFloat at the stated precision."""
    return bigfloat_str(x, precision)


def _log10_str(x):
    """Fixed-format log10 of a positive delta, or None."""
    if x is None or x == 0:
        return None
    with mp.workdps(30):
        return "%.6f" % float(mp.log10(abs(x)))


def _record_fields(rec):
    p = rec.precision_used
    with mp.workdps(p + GUARD_DIGITS):
        two = 2 * rec.root
    return {
        "D": rec.D,
        "root_s": _num(rec.root, p),
        "root_s_im": _num(rec.im, p) if rec.im != 0 else "0",
        "two_f2": _num(two, p),
        "delta": _num(rec.delta, p) if rec.delta is not None else None,
        "log10_delta": _log10_str(rec.delta),
        "precision_used": p,
    }


def emit_figure_data(seq, stream):
    """Write the convergence-figure CSV rows for one root sequence.

    One row per record with D >= 3 (delta is defined from the second record
    on), using the fixed column order ``FIGURE_COLUMNS``.  The header is the
    caller's responsibility so sequences with different d interleave into
    one file.

    Raises
    ------
    InsufficientDataError
        If the sequence has fewer than 2 records.
    """
    if len(seq.records) < 2:
        raise InsufficientDataError(
            f"sequence d={seq.disp} has {len(seq.records)} record(s); need >= 2")
    for rec in seq.records:
        if rec.delta is None:
            continue
        f = _record_fields(rec)
        stream.write(",".join([
            str(f["D"]), str(seq.disp), f["root_s"], f["two_f2"],
            f["delta"], f["log10_delta"],
        ]) + "\n")


# ---------------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------------

def _run_coeffs(cfg):
    if cfg.symbolic:
        series = symbolic_coeffs(cfg.nmax)
        results = [
            {"j": j, "degree": p.degree,
             "coeffs": [str(c) for c in p.coeffs]}
            for j, p in enumerate(series.coeffs)
        ]
        inputs = {"nmax": cfg.nmax, "symbolic": True}
    else:
        precision = 60 if cfg.precision == "auto" else int(cfg.precision)
        series = numeric_coeffs(cfg.nmax, cfg.slope, precision)
        results = [
            {"j": j, "value": _num(c, precision)}
            for j, c in enumerate(series.coeffs)
        ]
        inputs = {"nmax": cfg.nmax, "symbolic": False, "slope": cfg.slope,
                  "precision": precision}
    return inputs, results


def _run_slope(cfg):
    results = []
    for d in cfg.d_values:
        seq = root_sequence(d, cfg.Dmax, cfg.precision)
        fields = _record_fields(seq.final)
        fields.pop("D")
        results.append({"d": d, "Dmax": cfg.Dmax, **fields})
    inputs = {"d": list(cfg.d_values), "Dmax": cfg.Dmax,
              "precision": cfg.precision}
    return inputs, results


def _run_converge(cfg):
    sequences = [root_sequence(d, cfg.Dmax, cfg.precision)
                 for d in cfg.d_values]
    if cfg.format == "csv":
        import io
        buf = io.StringIO()
        buf.write(",".join(FIGURE_COLUMNS) + "\n")
        for seq in sequences:
            emit_figure_data(seq, buf)
        return buf.getvalue()
    results = [
        {"d": seq.disp, "records": [_record_fields(rec) for rec in seq.records]}
        for seq in sequences
    ]
    inputs = {"d": list(cfg.d_values), "Dmax": cfg.Dmax,
              "precision": cfg.precision}
    return inputs, results


def _resolve_slope(cfg):
    """The half-slope for Pade work: given on the command line, or computed
    by the full pipeline (root sequence at the first d) when absent."""
    if cfg.slope is not None:
        precision = 60 if cfg.precision == "auto" else int(cfg.precision)
        return to_bigfloat(cfg.slope, precision), precision
    precision = (default_precision(cfg.Dmax) if cfg.precision == "auto"
                 else int(cfg.precision))
    seq = root_sequence(cfg.d_values[0], cfg.Dmax, cfg.precision)
    return seq.final.root, precision


def _build_pade(cfg):
    slope, precision = _resolve_slope(cfg)
    nmax = max(cfg.M + cfg.N, 3)
    series = numeric_coeffs(nmax, slope, precision)
    return pade_construct(series, cfg.M, cfg.N), precision


def _run_pade(cfg):
    P, precision = _build_pade(cfg)
    with mp.workdps(precision + GUARD_DIGITS):
        two = 2 * P.slope
    results = {
        "M": P.M, "N": P.N,
        "slope_s": _num(P.slope, precision),
        "two_f2": _num(two, precision),
        "precision": precision,
        "a": [_num(v, precision) for v in P.a],
        "b": [_num(v, precision) for v in P.b],
    }
    inputs = {"M": cfg.M, "N": cfg.N, "slope": cfg.slope,
              "d": list(cfg.d_values), "Dmax": cfg.Dmax,
              "precision": cfg.precision}
    return inputs, results


def _run_table(cfg):
    P, precision = _build_pade(cfg)
    xs = [to_bigfloat(x, precision) for x in cfg.xs]
    rows = tf_table(P, xs)
    if cfg.format == "csv":
        import io
        buf = io.StringIO()
        buf.write("x,u,uprime\n")
        for row in rows:
            if row.error is not None:
                buf.write(f"{_num(row.x, precision)},error,{row.error!r}\n")
            else:
                buf.write(",".join([_num(row.x, precision),
                                    _num(row.u, precision),
                                    _num(row.uprime, precision)]) + "\n")
        return buf.getvalue()
    results = []
    for row in rows:
        if row.error is not None:
            results.append({"x": _num(row.x, precision), "error": row.error})
        else:
            results.append({"x": _num(row.x, precision),
                            "u": _num(row.u, precision),
                            "uprime": _num(row.uprime, precision)})
    inputs = {"M": cfg.M, "N": cfg.N, "x": list(cfg.xs), "slope": cfg.slope,
              "d": list(cfg.d_values), "Dmax": cfg.Dmax,
              "precision": cfg.precision}
    return inputs, results


# ---------------------------------------------------------------------------
# Argument handling
# ---------------------------------------------------------------------------

def _int_list(text):
    return tuple(int(v) for v in text.split(",") if v)


def _str_list(text):
    return tuple(v.strip() for v in text.split(",") if v.strip())


def _precision_arg(text):
    if text == "auto":
        return "auto"
    value = int(text)
    if value < 10:
        raise argparse.ArgumentTypeError("precision must be >= 10 digits or 'auto'")
    return value


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="hankelpade",
        description="Thomas-Fermi slope at origin and Pade reconstruction "
                    "via Hankel-determinant root sequences.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--precision", type=_precision_arg, default="auto",
                       help="working precision in decimal digits, or 'auto' "
                            "(40 + 2D per dimension D)")
        p.add_argument("--output", dest="output_path", default=None,
                       help="write the report to this path instead of stdout")
        p.add_argument("--timing", action="store_true",
                       help="include wall-clock seconds in the report "
                            "(breaks byte-identical determinism)")

    p = sub.add_parser("coeffs", help="series coefficients, symbolic or numeric")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--symbolic", action="store_true",
                   help="exact polynomials in the free half-slope")
    p.add_argument("--slope", default=None,
                   help="decimal half-slope for the numeric path")
    common(p)

    p = sub.add_parser("slope", help="converged slope from root sequences")
    p.add_argument("--d", type=_int_list, default=(3,), dest="d_values",
                   help="comma list of displacements, each >= 3")
    p.add_argument("--dmax", type=int, default=30, dest="Dmax")
    common(p)

    p = sub.add_parser("converge", help="root-sequence records (figure data)")
    p.add_argument("--d", type=_int_list, default=(3,), dest="d_values")
    p.add_argument("--dmax", type=int, default=30, dest="Dmax")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    common(p)

    p = sub.add_parser("pade", help="construct an [M/N] approximant")
    p.add_argument("--m", type=int, required=True, dest="M")
    p.add_argument("--n", type=int, required=True, dest="N")
    p.add_argument("--slope", default=None,
                   help="decimal half-slope; computed by the slope pipeline "
                        "when omitted")
    p.add_argument("--d", type=_int_list, default=(3,), dest="d_values")
    p.add_argument("--dmax", type=int, default=30, dest="Dmax")
    common(p)

    p = sub.add_parser("table", help="evaluate u(x), u'(x) from an [M/N]")
    p.add_argument("--m", type=int, required=True, dest="M")
    p.add_argument("--n", type=int, required=True, dest="N")
    p.add_argument("--x", type=_str_list, required=True, dest="xs",
                   help="comma list of coordinates, each >= 0")
    p.add_argument("--slope", default=None)
    p.add_argument("--d", type=_int_list, default=(3,), dest="d_values")
    p.add_argument("--dmax", type=int, default=30, dest="Dmax")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--allow-degree-mismatch", action="store_true",
                   help="lift the N == M + 3 requirement (the decay exponent "
                        "at infinity is then wrong)")
    common(p)

    return parser


def _validate(parser, args):
    d_values = tuple(getattr(args, "d_values", (3,)))
    if any(d < 3 for d in d_values):
        parser.error("every d must be >= 3 (lower displacements have "
                     "slope-independent leading entries)")
    if getattr(args, "Dmax", 30) < 3:
        parser.error("--dmax must be >= 3")
    if args.subcommand == "coeffs" and not args.symbolic and args.slope is None:
        parser.error("numeric coefficients need --slope (or pass --symbolic)")
    if args.subcommand == "table" and not args.allow_degree_mismatch \
            and args.N != args.M + 3:
        parser.error("table requires N == M + 3 for the correct decay at "
                     "infinity; pass --allow-degree-mismatch to override")
    return RunConfig(
        subcommand=args.subcommand,
        d_values=d_values,
        Dmax=getattr(args, "Dmax", 30),
        M=getattr(args, "M", 5),
        N=getattr(args, "N", 8),
        precision=args.precision,
        nmax=getattr(args, "nmax", 10),
        symbolic=getattr(args, "symbolic", False),
        slope=getattr(args, "slope", None),
        xs=tuple(getattr(args, "xs", ())),
        format=getattr(args, "format", "json"),
        output_path=args.output_path,
        timing=args.timing,
    )


_RUNNERS = {
    "coeffs": _run_coeffs,
    "slope": _run_slope,
    "converge": _run_converge,
    "pade": _run_pade,
    "table": _run_table,
}


def run(argv):
    """Parse ``argv``, execute the subcommand, write the report.

    Returns the process exit code: 0 on success, 2 on a usage error, 3 when
    the computation itself fails (the module error message is passed
    through verbatim on stderr).
    """
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _validate(parser, args)
    except SystemExit as exc:
        return int(exc.code or 0)

    started = time.monotonic()
    try:
        outcome = _RUNNERS[cfg.subcommand](cfg)
    except HankelPadeError as exc:
        print(f"hankelpade {cfg.subcommand}: error: {exc}", file=sys.stderr)
        return 3
    elapsed = time.monotonic() - started

    if isinstance(outcome, str):  # CSV payload
        text = outcome
    else:
        inputs, results = outcome
        report = {
            "schema_version": SCHEMA_VERSION,
            "subcommand": cfg.subcommand,
            "inputs": inputs,
            "results": results,
            "timing_seconds": round(elapsed, 3) if cfg.timing else None,
        }
        text = json.dumps(report, indent=2) + "\n"

    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
