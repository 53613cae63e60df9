"""Command-line front end.

Every subcommand prints a JSON report on stdout (sorted keys) and a short
summary on stderr.  Row indices in reports are 1-based.

Exit codes: 0 success, 2 validation, 3 internal invariant, 4 I/O, 5 parse,
6 parameter.
"""

import argparse
import hashlib
import json
import math
import sys

import numpy as np

from . import _backend
from .errors import (
    ClosureError,
    CompositionError,
    DegeneratePerimeterError,
    DimensionError,
    InvariantViolation,
    NegativityError,
    OrthonormalityError,
)
from .extremal import (
    PolygonInstance,
    construct_extremal,
    detect_equality,
    polygon_defect,
    polygon_equality_classify,
)
from .formats import ParseError, read_pairs, write_matrix
from .selector import EPS_CERT, brute_force_best, certify_pair
from .spectral import (
    EPS_SPEC,
    SUPPORT_TOL,
    build_G,
    build_M,
    eigen,
    restrict_to_ones_complement,
    support_components,
)
from .stiefel import EPS_ORTH, row_squares, sample_haar, validate

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INVARIANT = 3
EXIT_IO = 4
EXIT_PARSE = 5
EXIT_PARAMETER = 6

BRUTE_TOL = 1e-12
DOMINANCE_TOL = 1e-13
SPECTRAL_TOL = 1e-9
CASE_B_TOL = 1e-12
EQUALITY_TOL = 1e-12
DEFECT_TOL = 1e-10


class ParameterError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARAMETER)


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else repr(x)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    return obj


def dumps_report(report):
    return json.dumps(_clean(report), sort_keys=True, indent=2, allow_nan=False)


def _check(name, passed, value, tolerance):
    return {"name": name, "pass": bool(passed), "value": value, "tolerance": tolerance}


def _load_matrix(args):
    if args.random is not None:
        n, seed = args.random
        if n < 3:
            raise ParameterError(f"--random needs n >= 3, got {n}")
        return sample_haar(n, seed), {"source": "haar", "n": n, "seed": seed}
    if args.path is None:
        raise ParameterError("give a matrix file or --random N SEED")
    rows = read_pairs(args.path, "matrix", args.format)
    A = validate(rows)
    return A, {"source": str(args.path), "n": A.n}


def _pair_bound(n):
    return 1.0 / math.sqrt(n)


def cmd_certify(args):
    A, summary = _load_matrix(args)
    summary["residual"] = A.residual
    cert = certify_pair(A)
    brute = brute_force_best(A)
    bound = _pair_bound(A.n)
    structure = detect_equality(A)
    checks = [
        _check("certificate_bound", cert.sigma2 >= bound - EPS_CERT, cert.sigma2, EPS_CERT),
        _check("brute_bound", brute.sigma2 >= bound - BRUTE_TOL, brute.sigma2, BRUTE_TOL),
        _check(
            "oracle_dominance",
            brute.sigma2 >= cert.sigma2 - DOMINANCE_TOL,
            brute.sigma2 - cert.sigma2,
            DOMINANCE_TOL,
        ),
    ]
    at_bound = abs(brute.sigma2 - bound) <= EQUALITY_TOL
    if structure is not None:
        checks.append(_check("equality_value", at_bound, brute.sigma2 - bound, EQUALITY_TOL))
    result = {
        "bound": bound,
        "certificate": cert.to_dict(),
        "brute_force": brute.to_dict(),
        "equality": {
            "attained": bool(at_bound),
            "structure": structure.to_dict() if structure is not None else None,
        },
    }
    code = EXIT_OK if all(c["pass"] for c in checks) else EXIT_INVARIANT
    print(
        f"certify: pair ({cert.i + 1}, {cert.j + 1}) via {cert.path.value}, "
        f"sigma2 = {cert.sigma2:.6g} >= 1/sqrt({A.n}) = {bound:.6g}",
        file=sys.stderr,
    )
    return summary, result, checks, code


def cmd_generate(args):
    if args.extremal is not None:
        n, p, q, r = args.extremal
        A, structure = construct_extremal(n, p, q, r, args.orientation)
        summary = {"kind": "extremal", "n": n, "p": p, "q": q, "r": r,
                   "orientation": args.orientation}
        result = {"structure": structure.to_dict()}
    else:
        n, seed = args.haar
        A = sample_haar(n, seed)
        summary = {"kind": "haar", "n": n, "seed": seed}
        result = {}
    result["residual"] = A.residual
    if args.out:
        write_matrix(args.out, A.rows, args.format)
        result["path"] = str(args.out)
    else:
        result["rows"] = A.rows.tolist()
    checks = [_check("orthonormality", A.residual <= EPS_ORTH, A.residual, EPS_ORTH)]
    print(f"generate: {summary['kind']} n = {A.n}, residual {A.residual:.3e}", file=sys.stderr)
    return summary, result, checks, EXIT_OK


def cmd_spectrum(args):
    A, summary = _load_matrix(args)
    n = A.n
    w = row_squares(A)
    G, M = build_G(w), build_M(w)
    sg, sm = eigen(G), eigen(M)
    ones = np.ones(n)
    g1 = float(np.max(np.abs(G.entries @ ones)))
    m1 = float(np.max(np.abs(M.entries @ ones - 2.0 / n)))
    tr = float(np.trace(G.entries))
    off = M.entries[~np.eye(n, dtype=bool)]
    min_off = float(off.min())
    lam1_perp = float(eigen(restrict_to_ones_complement(G)).eigenvalues[0])
    try:
        comps = [[k + 1 for k in c] for c in support_components(M, SUPPORT_TOL)]
    except NegativityError:
        comps = None
    checks = [
        _check("G_ones_residual", g1 <= SPECTRAL_TOL, g1, SPECTRAL_TOL),
        _check("G_trace", abs(tr - 4.0 / n) <= SPECTRAL_TOL, tr - 4.0 / n, SPECTRAL_TOL),
        _check("G_positive_count", sg.positive_count <= 2, sg.positive_count, EPS_SPEC),
        _check("G_eigenvalue_sum", abs(sg.eigenvalues.sum() - 4.0 / n) <= 1e-8,
               float(sg.eigenvalues.sum() - 4.0 / n), 1e-8),
        _check("G_lambda1_on_ones_complement", lam1_perp >= 2.0 / n - SPECTRAL_TOL,
               lam1_perp, SPECTRAL_TOL),
        _check("M_ones_residual", m1 <= SPECTRAL_TOL, m1, SPECTRAL_TOL),
        _check("M_min_offdiagonal", min_off <= CASE_B_TOL, min_off, CASE_B_TOL),
    ]
    result = {
        "G": {"eigenvalues": sg.eigenvalues, "positive_count": sg.positive_count,
              "trace": tr, "ones_residual": g1, "lambda1_on_ones_complement": lam1_perp},
        "M": {"eigenvalues": sm.eigenvalues, "positive_count": sm.positive_count,
              "ones_residual": m1, "min_offdiagonal": min_off,
              "support_components": comps, "support_tol": SUPPORT_TOL},
    }
    code = EXIT_OK if all(c["pass"] for c in checks) else EXIT_INVARIANT
    print(f"spectrum: n = {n}, i+(G) = {sg.positive_count}, min off-diag M = {min_off:.3e}",
          file=sys.stderr)
    return summary, result, checks, code


def cmd_polygon(args):
    vectors = read_pairs(args.path, "polygon", args.format)
    P = PolygonInstance.from_vectors(vectors)
    n = P.n
    defect, (i, j) = polygon_defect(P)
    bound = 2.0 / n
    checks = [_check("defect_bound", defect >= bound - DEFECT_TOL, defect, DEFECT_TOL)]
    result = {
        "defect": defect,
        "pair": [i + 1, j + 1],
        "bound": bound,
        "perimeter": P.perimeter,
        "equality": bool(abs(defect - bound) <= EQUALITY_TOL),
    }
    if args.classify:
        s = polygon_equality_classify(P)
        result["classification"] = s.to_dict() if s is not None else None
    summary = {"source": str(args.path), "n": n}
    code = EXIT_OK if checks[0]["pass"] else EXIT_INVARIANT
    print(f"polygon: n = {n}, defect {defect:.6g} >= 2/n = {bound:.6g}", file=sys.stderr)
    return summary, result, checks, code


def trial_seed(seed, n, trial):
    """Seed for one sweep trial; independent of scheduling order."""
    h = hashlib.blake2b(f"{n}:{trial}".encode(), digest_size=8).digest()
    return (int(seed) ^ int.from_bytes(h, "little")) & 0xFFFFFFFFFFFFFFFF


def cmd_sweep(args):
    a, b = args.n_range
    if a < 3 or b < a:
        raise ParameterError(f"bad --n-range {a} {b}")
    if args.trials < 1:
        raise ParameterError("--trials must be positive")
    per_n = []
    violations = []
    for n in range(a, b + 1):
        bound = _pair_bound(n)
        cert_margin = brute_margin = math.inf
        paths = {}
        for t in range(args.trials):
            A = sample_haar(n, trial_seed(args.seed, n, t))
            brute = brute_force_best(A)
            brute_margin = min(brute_margin, brute.sigma2 * math.sqrt(n) - 1.0)
            if brute.sigma2 < bound - BRUTE_TOL:
                violations.append({"n": n, "trial": t, "check": "brute_bound"})
            try:
                cert = certify_pair(A)
            except InvariantViolation as exc:
                violations.append({"n": n, "trial": t, "check": "certify", "message": str(exc)})
                continue
            paths[cert.path.value] = paths.get(cert.path.value, 0) + 1
            cert_margin = min(cert_margin, cert.sigma2 * math.sqrt(n) - 1.0)
            if brute.sigma2 < cert.sigma2 - DOMINANCE_TOL:
                violations.append({"n": n, "trial": t, "check": "oracle_dominance"})
            M = build_M(row_squares(A)).entries
            if M[~np.eye(n, dtype=bool)].min() > CASE_B_TOL:
                violations.append({"n": n, "trial": t, "check": "case_b_existence"})
        per_n.append({"n": n, "min_certificate_margin": cert_margin,
                      "min_brute_margin": brute_margin, "paths": paths})
    result = {
        "per_n": per_n,
        "violations": violations,
        "min_certificate_margin": min(r["min_certificate_margin"] for r in per_n),
        "min_brute_margin": min(r["min_brute_margin"] for r in per_n),
    }
    checks = [_check("violations", not violations, len(violations), 0)]
    summary = {"n_range": [a, b], "trials": args.trials, "seed": args.seed}
    print(f"sweep: n in [{a}, {b}], {args.trials} trials each, "
          f"{len(violations)} violations", file=sys.stderr)
    return summary, result, checks, EXIT_OK if not violations else EXIT_INVARIANT


def _matrix_source(sp):
    sp.add_argument("path", nargs="?", help="matrix file (.csv or .json)")
    sp.add_argument("--random", nargs=2, type=int, metavar=("N", "SEED"),
                    help="use a Haar-random n x 2 matrix instead of a file")
    sp.add_argument("--format", choices=("csv", "json"), help="override file-type detection")


def build_parser():
    ap = _Parser(prog="pairbound", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("certify", help="certify a row pair with sigma_2 >= 1/sqrt(n)")
    _matrix_source(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("generate", help="write an extremal or Haar-random matrix")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--extremal", nargs=4, type=int, metavar=("N", "P", "Q", "R"))
    g.add_argument("--haar", nargs=2, type=int, metavar=("N", "SEED"))
    sp.add_argument("--orientation", type=float, default=0.0)
    sp.add_argument("--out")
    sp.add_argument("--format", choices=("csv", "json"))
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("spectrum", help="eigenvalues and invariants of G and M")
    _matrix_source(sp)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("polygon", help="maximal pair defect of a closed polygon")
    sp.add_argument("path")
    sp.add_argument("--classify", action="store_true")
    sp.add_argument("--format", choices=("csv", "json"))
    sp.set_defaults(func=cmd_polygon)

    sp = sub.add_parser("sweep", help="randomized soundness sweep over n")
    sp.add_argument("--n-range", nargs=2, type=int, required=True, metavar=("A", "B"))
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.set_defaults(func=cmd_sweep)
    return ap


def _error_report(command, exc, code):
    err = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, OrthonormalityError):
        err["residual"] = exc.residual
        err["tolerance"] = exc.tol
    return {"command": command, "error": err, "exit_code": code}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        summary, result, checks, code = args.func(args)
        report = {"command": args.command, "input": summary, "result": result,
                  "checks": checks, "backend": _backend.NAME, "exit_code": code}
    except (ParameterError, CompositionError) as exc:
        code, report = EXIT_PARAMETER, _error_report(args.command, exc, EXIT_PARAMETER)
    except (OrthonormalityError, DimensionError, ClosureError, DegeneratePerimeterError) as exc:
        code, report = EXIT_VALIDATION, _error_report(args.command, exc, EXIT_VALIDATION)
    except InvariantViolation as exc:
        code, report = EXIT_INVARIANT, _error_report(args.command, exc, EXIT_INVARIANT)
    except ParseError as exc:
        code, report = EXIT_PARSE, _error_report(args.command, exc, EXIT_PARSE)
    except OSError as exc:
        code, report = EXIT_IO, _error_report(args.command, exc, EXIT_IO)
    except ValueError as exc:
        # non-finite entries and similar content problems
        code, report = EXIT_VALIDATION, _error_report(args.command, exc, EXIT_VALIDATION)
    if "error" in report:
        print(f"{args.command}: {report['error']['type']}: {report['error']['message']}",
              file=sys.stderr)
    print(dumps_report(report))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
