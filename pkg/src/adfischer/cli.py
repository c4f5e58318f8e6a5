"""Command-line entry point: ``adfischer {verify,corpus,scan,example}``.

Exit codes: 0 success, 1 a proven-theorem check failed (an implementation
bug), 2 invalid input, 3 numerical failure such as non-convergence.
"""

import argparse
import logging
import os
import sys

import numpy as np

from . import __version__
from .ad_matrix import partition
from .battery import indefinite_probe, summarize, verify_partition
from .exceptions import (ConvergenceError, DimensionError,
                         NotAccretiveDissipativeError, SingularMatrixError,
                         SoundnessError)
from .generation import ad_corpus, example_family, example_ratio
from .inequalities import DEFAULT_INEQ_TOL, bounds_for, fischer_ratio
from .linalg_core import DEFAULT_PD_TOL
from .reports import RunReport, matrix_to_json, read_matrix, to_jsonable
from .search import SearchConfig, conjecture_scan

log = logging.getLogger("adfischer")

EXIT_OK, EXIT_THEOREM, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
SEED_ENV = "ADFISCHER_SEED"
DEFAULT_SEED = 20121
DEFAULT_EPSILONS = (1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
SCAN_COLUMNS = ["n", "k", "m", "best_rho", "2^m", "lin_a", "3^m", "margin"]


class InvalidInput(Exception):
    pass


def _versions():
    return {"adfischer": __version__, "numpy": np.__version__}


def _tolerances(tol_pd, tol_ineq):
    return {"tol_pd": tol_pd, "tol_ineq": tol_ineq}


def cmd_verify(A, k=None, tol_pd=DEFAULT_PD_TOL, tol_ineq=DEFAULT_INEQ_TOL, source=None):
    """Full battery on one matrix, for ``k`` or every ``1 <= k <= n/2``."""
    n = A.shape[0]
    if A.shape[0] != A.shape[1]:
        raise InvalidInput(f"matrix must be square, got {A.shape}")
    if n < 2:
        raise InvalidInput("matrix order must be at least 2")
    ks = [k] if k is not None else list(range(1, n // 2 + 1))
    if any(not 1 <= kk <= n - 1 for kk in ks):
        raise InvalidInput(f"k={k} out of range 1..{n - 1}")
    records = [verify_partition(partition(A, kk, tol_pd), tol_ineq) for kk in ks]
    inputs = {"source": source, "n": n, "k": k, **_tolerances(tol_pd, tol_ineq),
              "matrix": matrix_to_json(A)}
    return RunReport("verify", inputs, records, summarize(records), _versions())


def cmd_corpus(count, seed, n_values=range(2, 9), k=None, tol_pd=DEFAULT_PD_TOL,
               tol_ineq=DEFAULT_INEQ_TOL):
    """Battery over ``count`` seeded random matrices.

    With ``k=None`` every ``1 <= k <= n/2`` is checked; a fixed ``k`` skips
    matrices too small for it.
    """
    records = []
    for i, A in ad_corpus(count, seed, n_values):
        n = A.shape[0]
        ks = range(1, n // 2 + 1) if k is None else ([k] if k <= n - 1 else [])
        probe = indefinite_probe(n, seed, i)
        for kk in ks:
            rec = verify_partition(partition(A, kk, tol_pd), tol_ineq, extra_hermitian=probe)
            rec["index"] = i
            records.append(rec)
    inputs = {"count": count, "seed": seed, "n_values": list(n_values), "k": k,
              **_tolerances(tol_pd, tol_ineq)}
    return RunReport("corpus", inputs, records, summarize(records), _versions())


def _scan_record(cell):
    r = cell.result
    bs = r.bound_set
    return {
        "n": cell.n, "k": cell.k, "m": bs.m, "best_rho": r.best_rho,
        "2^m": bs.conjecture, "lin_a": bs.lin_a, "3^m": bs.ikramov,
        "margin": r.conjecture_margin, "flagged": cell.flagged,
        "verified_rho": cell.verified_rho, "witness_path": cell.witness_path,
        "trajectory": list(r.trajectory), "best_restart": r.best_restart,
        "evaluations": r.evaluations, "skipped": r.skipped, "seed": r.seed,
        "pd_floor": r.pd_floor, "witness": matrix_to_json(r.witness),
    }


def cmd_scan(n_max, seed, restarts=8, steps=2000, pd_floor=1e-8, witness_dir=None):
    """Conjecture scan; raises :class:`SoundnessError` above the proven bound."""
    if n_max < 2:
        raise InvalidInput("n_max must be >= 2")
    template = SearchConfig(n=2, k=1, restarts=restarts, steps_per_restart=steps,
                            seed=seed, pd_floor=pd_floor)
    cells = conjecture_scan(n_max, template, witness_dir)
    records = [_scan_record(c) for c in cells]
    summary = {
        "cells": len(records),
        "conjecture_flags": sum(r["flagged"] for r in records),
        "max_rho_over_2m": max(r["best_rho"] / r["2^m"] for r in records),
        "all_below_lin_a": all(r["best_rho"] <= r["lin_a"] + 1e-9 for r in records),
        "outcome": ("conjecture counterexample candidates found"
                    if any(r["flagged"] for r in records)
                    else "conjecture unrefuted on this budget"),
    }
    inputs = {"n_max": n_max, "seed": seed, "restarts": restarts, "steps": steps,
              "pd_floor": pd_floor, "witness_dir": witness_dir}
    return RunReport("scan", inputs, records, summary, _versions())


def cmd_example(epsilons=DEFAULT_EPSILONS, tol_pd=DEFAULT_PD_TOL):
    """Ratio of the 2x2 example family against its closed form and 2."""
    if any(not e > 0 for e in epsilons):
        raise InvalidInput("every epsilon must be > 0")
    bs = bounds_for(2, 1)
    records = []
    for eps in epsilons:
        rho = fischer_ratio(partition(example_family(eps), 1, tol_pd))
        closed = example_ratio(eps)
        records.append({
            "epsilon": eps, "rho": rho, "closed_form": closed,
            "relative_error": abs(rho - closed) / closed,
            "conjecture_bound": bs.conjecture, "conjecture_margin": bs.conjecture - rho,
            "lin_a": bs.lin_a,
        })
    by_eps = sorted(records, key=lambda r: -r["epsilon"])
    summary = {
        "max_relative_error": max(r["relative_error"] for r in records),
        "monotone_toward_bound": all(a["rho"] < b["rho"] for a, b in zip(by_eps, by_eps[1:])),
        "rho_at_smallest_epsilon": by_eps[-1]["rho"],
    }
    inputs = {"epsilons": list(epsilons), "tol_pd": tol_pd}
    return RunReport("example", inputs, records, summary, _versions())


def _n_values(text):
    if "-" in text:
        lo, hi = (int(x) for x in text.split("-", 1))
        return list(range(lo, hi + 1))
    return [int(text)]


def _default_seed():
    value = os.environ.get(SEED_ENV)
    return int(value) if value else DEFAULT_SEED


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help=f"random seed (default: ${SEED_ENV} or {DEFAULT_SEED})")
    common.add_argument("--tol-pd", type=float, default=DEFAULT_PD_TOL)
    common.add_argument("--tol-ineq", type=float, default=DEFAULT_INEQ_TOL)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="adfischer",
        description="Verify Fischer-type determinant bounds for accretive-dissipative matrices.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run every check on one matrix file")
    p.add_argument("matrix", help="matrix text file ('-' for stdin)")
    p.add_argument("--k", type=int, default=None)

    p = sub.add_parser("corpus", parents=[common], help="checks over random matrices")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--n", type=_n_values, default=list(range(2, 9)),
                   help="order or range like 2-8")
    p.add_argument("--k", type=int, default=None)

    p = sub.add_parser("scan", parents=[common], help="search for large Fischer ratios")
    p.add_argument("--n", type=int, default=6, help="largest order n_max")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--steps", type=int, default=2000)
    p.add_argument("--pd-floor", type=float, default=1e-8)
    p.add_argument("--witness-dir", default=None)

    p = sub.add_parser("example", parents=[common], help="tabulate the 2x2 example family")
    p.add_argument("epsilons", type=float, nargs="*", default=list(DEFAULT_EPSILONS))
    return parser


def _emit(report, fmt, out):
    if fmt == "json":
        text = report.to_json()
    else:
        text = report.to_csv(SCAN_COLUMNS if report.command == "scan" else None)
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def run(args):
    seed = args.seed if args.seed is not None else _default_seed()
    if args.command == "verify":
        try:
            A = read_matrix(sys.stdin.fileno() if args.matrix == "-" else args.matrix)
        except (OSError, ValueError) as exc:
            raise InvalidInput(f"cannot read matrix: {exc}") from exc
        report = cmd_verify(A, args.k, args.tol_pd, args.tol_ineq, source=args.matrix)
        failed = report.summary["failed"] > 0
    elif args.command == "corpus":
        report = cmd_corpus(args.count, seed, args.n, args.k, args.tol_pd, args.tol_ineq)
        failed = report.summary["failed"] > 0
    elif args.command == "scan":
        report = cmd_scan(args.n, seed, args.restarts, args.steps, args.pd_floor,
                          args.witness_dir)
        failed = not report.summary["all_below_lin_a"]
    else:
        report = cmd_example(args.epsilons, args.tol_pd)
        failed = False
    _emit(report, args.format, args.out)
    return EXIT_THEOREM if failed else EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return run(args)
    except NotAccretiveDissipativeError as exc:
        cert = exc.cert_c if exc.cert_b is not None and exc.cert_b.is_pd else exc.cert_b
        log.error("%s (certificate: %s)", exc, to_jsonable(cert))
        return EXIT_INPUT
    except SoundnessError as exc:
        log.error("proven bound violated: %s", exc)
        return EXIT_THEOREM
    # LinAlgError derives from ValueError, so it must be caught first
    except (ConvergenceError, SingularMatrixError, np.linalg.LinAlgError) as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERIC
    except (InvalidInput, DimensionError, ValueError) as exc:
        log.error("invalid input: %s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
