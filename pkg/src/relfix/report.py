"""Structured report assembly: plain dicts with stable ordering, JSON-ready."""

from __future__ import annotations

import dataclasses
import hashlib
from datetime import datetime, timezone

from . import __version__
from .bmetric import verify_bmetric_axioms
from .contraction import linear_lambda_threshold, verify_all_hypotheses
from .problemfile import ProblemBundle
from .relation import build_relation_report
from .simulation import check_zeta_axioms
from .solver import (
    CertificationError,
    certify,
    compute_mfr,
    picard_iterate,
    ratio_diagnostics,
)

SCHEMA_VERSION = 1


def _plain(obj):
    """Recursively convert dataclasses/sets/tuples into JSON-serializable values."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(_plain(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, float) and obj != obj:  # NaN is not valid JSON
        return None
    return obj


def header(input_bytes: bytes) -> dict:
    # generated_at is the only nondeterministic field; consumers comparing
    # reports should drop the header
    return {
        "toolkit_version": __version__,
        "schema_version": SCHEMA_VERSION,
        "input_digest": hashlib.sha256(input_bytes).hexdigest(),
        "generated_at": datetime.now(timezone.utc).isoformat(),
    }


def axioms_fragment(bundle: ProblemBundle, tol: float | None = None) -> tuple[dict, bool]:
    problem = bundle.problem
    axiom_report = verify_bmetric_axioms(problem.space, tol)
    zeta_report = check_zeta_axioms(problem.zeta)
    ok = axiom_report.all_ok and zeta_report.all_ok
    return {"bmetric_axioms": _plain(axiom_report), "zeta_axioms": _plain(zeta_report)}, ok


def verify_fragment(bundle: ProblemBundle, tol: float | None = None) -> tuple[dict, bool]:
    problem = bundle.problem
    hyp = verify_all_hypotheses(problem, tol)
    rel = build_relation_report(problem.space, problem.relation, problem.map.mapping)
    frag = {
        "relation": _plain(rel),
        "hypotheses": _plain(hyp),
    }
    if problem.zeta.family == "linear":
        frag["linear_lambda_threshold"] = linear_lambda_threshold(problem)
    return frag, hyp.all_hypotheses_ok


def _default_start(problem):
    mfr = compute_mfr(problem.space, problem.relation, problem.map)
    if not mfr:
        raise ValueError("M(F;R) is empty: no admissible starting point")
    return min(mfr, key=lambda p: p.id)


def _solve(bundle: ProblemBundle, start=None, tol=None, max_iter=None):
    problem = bundle.problem
    if start is None:
        start = bundle.solver.start
    point = _default_start(problem) if start is None else problem.space.point_by_value(float(start))
    trace = picard_iterate(
        problem,
        point,
        tol=bundle.solver.tol if tol is None else tol,
        max_iter=max_iter if max_iter is not None else bundle.solver.max_iter,
    )
    frag = {"trace": _plain(trace)}
    if trace.steps:
        frag["ratio_diagnostics"] = _plain(ratio_diagnostics(trace, tol=problem.default_tol()))
    return frag, trace.terminated_by != "max-iterations", trace


def solve_fragment(bundle: ProblemBundle, start=None, tol=None, max_iter=None) -> tuple[dict, bool]:
    frag, ok, _ = _solve(bundle, start=start, tol=tol, max_iter=max_iter)
    return frag, ok


def certify_fragment(bundle: ProblemBundle, start=None, tol=None, max_iter=None) -> tuple[dict, bool]:
    frag, solved, trace = _solve(bundle, start=start, tol=tol, max_iter=max_iter)
    if not solved:
        return frag, False
    problem = bundle.problem
    try:
        cert = certify(problem, trace)
    except CertificationError as exc:
        frag["certificate_error"] = str(exc)
        return frag, False
    frag["certificate"] = _plain(cert)
    return frag, not cert.contradictions


def run_command(
    command: str,
    bundle: ProblemBundle,
    input_bytes: bytes = b"",
    start=None,
    tol=None,
    max_iter=None,
) -> tuple[dict, bool]:
    """Dispatch one CLI command; returns (report, pass) with pass driving the exit code."""
    report = {"header": header(input_bytes), "command": command}
    ok = True
    if command in ("axioms", "report"):
        frag, frag_ok = axioms_fragment(bundle, tol)
        report.update(frag)
        ok = ok and frag_ok
    if command in ("verify", "report"):
        frag, frag_ok = verify_fragment(bundle, tol)
        report.update(frag)
        ok = ok and frag_ok
    if command == "solve":
        frag, frag_ok = solve_fragment(bundle, start=start, tol=tol, max_iter=max_iter)
        report.update(frag)
        ok = ok and frag_ok
    if command in ("certify", "report"):
        frag, frag_ok = certify_fragment(bundle, start=start, tol=tol, max_iter=max_iter)
        report.update(frag)
        ok = ok and frag_ok
    if command not in ("axioms", "verify", "solve", "certify", "report"):
        raise ValueError(f"unknown command {command!r}")
    report["overall_pass"] = ok
    return report, ok
