"""File-based command line: read matrices, run expansions, Sylvester solves
and validation sweeps, write deterministic JSON/CSV reports.

Matrix input is JSON ``{"rows": n, "cols": m, "data": [[...]]}`` with each
entry a real number or an ``[re, im]`` pair, or real-only CSV (one row per
line).  Every float in a report is serialized with 17 significant digits, so
reports are byte-stable across runs and round-trip exactly.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .exceptions import (
    MatchingError,
    NormalizationBreakdownError,
    NotSemiSimpleError,
    SingularOperatorError,
    UnresolvedDegeneracyError,
)
from .perturbation import PerturbationProblem, expand
from .sylvester import build_operator
from .validation import default_eps_grid, taylor_remainder_slopes

NORMALIZATION_NOTE = "W0*V0=I; Diag(W0*Vk)=0 for k>=1"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_SEMISIMPLE = 3
EXIT_UNRESOLVED_DEGENERACY = 4
EXIT_SLOPES_FAILED = 5
EXIT_MATCHING_FAILED = 6


# ---------------------------------------------------------------------------
# input parsing

def read_matrix(path, fmt=None):
    """Parse a matrix file (JSON or CSV, by flag or extension)."""
    path = Path(path)
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "json"
    text = path.read_text()
    if fmt == "json":
        return _matrix_from_json(text, path)
    return _matrix_from_csv(text, path)


def _entry_to_complex(entry, path):
    if isinstance(entry, (int, float)) and not isinstance(entry, bool):
        return complex(entry)
    if (
        isinstance(entry, list)
        and len(entry) == 2
        and all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in entry)
    ):
        return complex(entry[0], entry[1])
    raise ValueError(f"{path}: matrix entry must be a number or [re, im], got {entry!r}")


def _matrix_from_json(text, path):
    doc = json.loads(text)
    if not isinstance(doc, dict) or not {"rows", "cols", "data"} <= doc.keys():
        raise ValueError(f'{path}: expected an object with "rows", "cols", "data"')
    rows, cols, data = doc["rows"], doc["cols"], doc["data"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows >= 1 and cols >= 1):
        raise ValueError(f"{path}: rows and cols must be positive integers")
    if not isinstance(data, list) or len(data) != rows:
        raise ValueError(f"{path}: data must hold {rows} rows")
    out = np.empty((rows, cols), dtype=np.complex128)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise ValueError(f"{path}: row {i} must hold {cols} entries")
        for j, entry in enumerate(row):
            out[i, j] = _entry_to_complex(entry, path)
    if not np.all(np.isfinite(out.real)) or not np.all(np.isfinite(out.imag)):
        raise ValueError(f"{path}: matrix contains non-finite entries")
    return out


def _matrix_from_csv(text, path):
    rows = [row for row in csv.reader(text.splitlines()) if row]
    if not rows:
        raise ValueError(f"{path}: empty CSV matrix")
    width = len(rows[0])
    out = np.empty((len(rows), width), dtype=np.complex128)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"{path}: CSV row {i} has {len(row)} fields, expected {width}")
        try:
            out[i] = [float(field) for field in row]
        except ValueError as exc:
            raise ValueError(f"{path}: CSV row {i}: {exc}") from exc
    if not np.all(np.isfinite(out.real)):
        raise ValueError(f"{path}: matrix contains non-finite entries")
    return out


# ---------------------------------------------------------------------------
# deterministic serialization

def _fmt_float(x):
    x = float(x)
    if x == 0.0:  # canonicalize -0.0 so parse/re-serialize is the identity
        return "0"
    return "%.17g" % x


def dumps_stable(obj):
    """JSON text with every float at 17 significant digits (round-trip exact)."""
    pieces = []
    _dump(obj, pieces)
    return "".join(pieces)


def _dump(obj, pieces):
    if isinstance(obj, dict):
        pieces.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                pieces.append(", ")
            pieces.append(json.dumps(key))
            pieces.append(": ")
            _dump(value, pieces)
        pieces.append("}")
    elif isinstance(obj, (list, tuple)):
        pieces.append("[")
        for i, value in enumerate(obj):
            if i:
                pieces.append(", ")
            _dump(value, pieces)
        pieces.append("]")
    elif isinstance(obj, bool):
        pieces.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        pieces.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        pieces.append(_fmt_float(obj))
    elif isinstance(obj, str):
        pieces.append(json.dumps(obj))
    elif obj is None:
        pieces.append("null")
    else:
        raise TypeError(f"cannot serialize {type(obj)}")


def _pair(z):
    z = complex(z)
    return [z.real, z.imag]


def _vector(v):
    return [_pair(z) for z in v]


def _nested(M):
    return [[_pair(z) for z in row] for row in np.asarray(M)]


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def expansion_report(terms):
    lam0 = terms.base.eigenvalues
    return {
        "order": terms.order,
        "eigenvalues": [_vector(lam0)] + [_vector(l) for l in terms.Lambda],
        "V": [_nested(terms.base.V)] + [_nested(v) for v in terms.V],
        "W1": _nested(terms.W1),
        "clusters": [list(c) for c in terms.base.clusters],
        "rotated": list(terms.rotated),
        "normalization": NORMALIZATION_NOTE,
    }


def validation_report_doc(report):
    return {
        "order": report.order,
        "eps_grid": [float(e) for e in report.eps_grid],
        "lambda_errors": [float(e) for e in report.lambda_errors],
        "vector_errors": [float(e) for e in report.vector_errors],
        "fitted_slope_lambda": "exact" if report.lambda_exact else report.fitted_slope_lambda,
        "fitted_slope_V": "exact" if report.vector_exact else report.fitted_slope_V,
        "pass": report.passed,
    }


def curves_csv(report):
    lines = ["eps,lambda_error,vector_error"]
    for eps, le, ve in zip(report.eps_grid, report.lambda_errors, report.vector_errors):
        lines.append(",".join(_fmt_float(x) for x in (eps, le, ve)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands

def _cmd_expand(args):
    a0 = read_matrix(args.a0, args.format)
    a1 = read_matrix(args.a1, args.format)
    problem = PerturbationProblem(a0, a1, order=args.order, cluster_tol=args.cluster_tol)
    terms = expand(problem)
    _emit(dumps_stable(expansion_report(terms)) + "\n", args.out)
    return EXIT_OK


def _cmd_sylvester(args):
    a = read_matrix(args.a, args.format)
    b = read_matrix(args.b, args.format)
    q = read_matrix(args.q, args.format)
    op = build_operator(a, b, zero_tol=args.zero_tol)
    if args.mode == "solve":
        X = op.solve(q)
        residual = float(np.linalg.norm(op.apply(X) - q) / max(1.0, np.linalg.norm(q)))
        doc = {"X": _nested(X), "residual": residual, "solvable": True,
               "violated_positions": []}
    else:
        report = op.pseudo_solve(q)
        doc = {
            "X": _nested(report.X),
            "residual": report.residual,
            "solvable": report.solvable,
            "violated_positions": [list(p) for p in report.violated_positions],
        }
    _emit(dumps_stable(doc) + "\n", args.out)
    return EXIT_OK


def _cmd_validate(args):
    a0 = read_matrix(args.a0, args.format)
    a1 = read_matrix(args.a1, args.format)
    grid = default_eps_grid(args.eps_min, args.eps_max, args.points)
    problem = PerturbationProblem(a0, a1, order=args.order, cluster_tol=args.cluster_tol)
    terms = expand(problem)
    report = taylor_remainder_slopes(problem, terms, grid)
    _emit(dumps_stable(validation_report_doc(report)) + "\n", args.out)
    curves_path = args.curves
    if curves_path is None and args.out is not None:
        curves_path = str(Path(args.out).with_suffix(".csv"))
    if curves_path is not None:
        Path(curves_path).write_text(curves_csv(report))
    return EXIT_OK if report.passed else EXIT_SLOPES_FAILED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="eigenpert",
        description="Eigenvalue/eigenvector perturbation expansions, Sylvester "
        "solves, and brute-force validation over matrix files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=["json", "csv"], default=None,
                       help="input format (default: by file extension)")
        p.add_argument("--out", default=None, help="output path (default: stdout)")

    p = sub.add_parser("expand", help="expansion terms of A0 + eps*A1")
    p.add_argument("a0")
    p.add_argument("a1")
    p.add_argument("--order", type=int, required=True, help="expansion order K >= 1")
    p.add_argument("--cluster-tol", type=float, default=None)
    add_common(p)
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("sylvester", help="solve A X + X B = Q")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("q")
    p.add_argument("--mode", choices=["solve", "pseudo"], default="solve")
    p.add_argument("--zero-tol", type=float, default=None)
    add_common(p)
    p.set_defaults(func=_cmd_sylvester)

    p = sub.add_parser("validate", help="remainder-slope validation of an expansion")
    p.add_argument("a0")
    p.add_argument("a1")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--eps-min", type=float, default=1e-3)
    p.add_argument("--eps-max", type=float, default=1e-1)
    p.add_argument("--points", type=int, default=8)
    p.add_argument("--cluster-tol", type=float, default=None)
    p.add_argument("--curves", default=None, help="plot-ready CSV path "
                   "(default: --out with .csv suffix)")
    add_common(p)
    p.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnresolvedDegeneracyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNRESOLVED_DEGENERACY
    except (NotSemiSimpleError, SingularOperatorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_SEMISIMPLE
    except (MatchingError, NormalizationBreakdownError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATCHING_FAILED
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
