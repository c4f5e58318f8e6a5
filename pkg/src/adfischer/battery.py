"""Full verification battery for one partitioned matrix, plus corpus
aggregation. Records are plain JSON-ready dicts."""

import statistics
from collections import defaultdict

from .ad_matrix import (CartesianPair, inverse_split, is_accretive_dissipative,
                        lemma3_margin, schur_complement)
from .generation import sample_hermitian
from .inequalities import (DEFAULT_INEQ_TOL, check_all_bounds, lemma4_verify,
                           theorem3_chain, theorem4_chain)
from .linalg_core import cholesky_pd, det
from .reports import to_jsonable

__all__ = ["verify_partition", "summarize", "indefinite_probe", "SCHUR_PD_TOL", "LEMMA2_TOL"]

SCHUR_PD_TOL = 1e-8
LEMMA2_TOL = 1e-9


def _chain_record(report):
    return {
        "chain_name": report.chain_name,
        "orientation": report.orientation,
        "overall_pass": report.overall_pass,
        "steps": [to_jsonable(s) for s in report.steps],
    }


def verify_partition(P, tol_ineq=DEFAULT_INEQ_TOL, schur_tol=SCHUR_PD_TOL,
                     extra_hermitian=None):
    """Run every lemma, both proof chains and all bound checks on ``P``.

    ``extra_hermitian`` is an optional Hermitian matrix of order ``n`` that
    is fed to the ``B + C B^{-1} C >= 2C`` check in place of ``C`` to exercise
    the indefinite case. ``theorem_ok`` is the conjunction of every proven
    statement; the conjecture flag is reported separately.
    """
    bounds = check_all_bounds(P, tol_ineq)

    schur = schur_complement(P)
    schur_ad, cert_r, cert_s = is_accretive_dissipative(schur, schur_tol)
    det_a, det_11, det_s = det(P.A), det(P.A11), det(schur)
    quotient_residual = abs(det_a - det_11 * det_s) / abs(det_a)

    split = inverse_split(P.pair, P.tol)
    e_pd = cholesky_pd(split.E, P.tol).is_pd
    f_pd = cholesky_pd(split.F, P.tol).is_pd

    lemma3 = [lemma3_margin(P.pair.B, P.pair.C, tol_ineq),
              lemma3_margin(P.pair.C, P.pair.B, tol_ineq)]
    if extra_hermitian is not None:
        lemma3.append(lemma3_margin(P.pair.B, extra_hermitian, tol_ineq))

    l4 = lemma4_verify(P.pair, tol_ineq)
    l4_eq = lemma4_verify(CartesianPair(P.pair.B, P.pair.B), tol_ineq)

    t3 = theorem3_chain(P, tol_ineq)
    t4 = theorem4_chain(P, tol_ineq)

    lemma_ok = {
        "lemma1": bool(schur_ad) and quotient_residual <= tol_ineq,
        "lemma2": split.residual <= LEMMA2_TOL and e_pd and f_pd,
        "lemma3": all(r.holds for r in lemma3),
        "lemma4": l4.passed and l4_eq.passed and abs(l4_eq.upper_margin) <= tol_ineq,
    }
    theorem_ok = (bounds.ikramov_ok and bounds.lin_ok and t3.overall_pass
                  and t4.overall_pass and all(lemma_ok.values()))
    return {
        "n": P.n, "k": P.k, "l": P.l, "m": P.m,
        "rho": bounds.rho,
        "bounds": to_jsonable(bounds),
        "lemma1": {"schur_is_ad": bool(schur_ad), "min_pivot_R": cert_r.min_pivot,
                   "min_pivot_S": cert_s.min_pivot, "tolerance": schur_tol,
                   "det_quotient_residual": quotient_residual},
        "lemma2": {"residual": split.residual, "E_pd": e_pd, "F_pd": f_pd},
        "lemma3": {"margins": [r.relative_margin for r in lemma3],
                   "holds": [r.holds for r in lemma3]},
        "lemma4": {"lower_margin": l4.lower_margin, "upper_margin": l4.upper_margin,
                   "scalar_margin": l4.scalar_margin,
                   "eigen_identity_residual": l4.eigen_identity_residual,
                   "lambdas": to_jsonable(l4.lambdas),
                   "equality_upper_margin": l4_eq.upper_margin, "passed": l4.passed},
        "theorem3": _chain_record(t3),
        "theorem4": _chain_record(t4),
        "lemma_ok": lemma_ok,
        "conjecture_ok": bounds.conjecture_ok,
        "theorem_ok": bool(theorem_ok),
    }


def summarize(records):
    """Pass counts plus min/median margin for every chain step and bound."""
    margins = defaultdict(list)
    for r in records:
        for chain in ("theorem3", "theorem4"):
            for step in r[chain]["steps"]:
                margins[f"{chain}: {step['description']}"].append(step["margin"])
        for name, value in r["bounds"]["relative_margins"].items():
            margins[f"bound {name} (relative)"].append(value)
    passed = sum(r["theorem_ok"] for r in records)
    return {
        "total": len(records),
        "passed": passed,
        "failed": len(records) - passed,
        "conjecture_flags": sum(not r["conjecture_ok"] for r in records),
        "ikramov_ok": sum(r["bounds"]["ikramov_ok"] for r in records),
        "lin_ok": sum(r["bounds"]["lin_ok"] for r in records),
        "max_rho": max((r["rho"] for r in records), default=None),
        "margins": {key: {"min": min(v), "median": statistics.median(v)}
                    for key, v in sorted(margins.items())},
    }


def indefinite_probe(n, seed, index):
    """Hermitian (usually indefinite) matrix for the indefinite-C check."""
    return sample_hermitian(n, seed, index, 99)
