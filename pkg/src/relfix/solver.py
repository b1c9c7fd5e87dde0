"""Relation-preserving Picard iteration, proof-derived diagnostics, and oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bmetric import BMetricSpace, Point, _pid, distance
from .contraction import ContractionProblem, SelfMap, compute_mfr, verify_contraction, verify_uniqueness_condition


class StartNotAdmissible(ValueError):
    """Start point is not related to its own image and no override was given."""


class RelationBroken(RuntimeError):
    """The orbit produced a consecutive pair outside the relation."""

    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"orbit pair {pair} left the relation; F-closedness premise is broken")


@dataclass
class IterationTrace:
    orbit: list                 # point values sigma_0 .. sigma_N
    orbit_ids: list
    steps: list                 # C_n = d(sigma_{n-1}, sigma_n), n = 1..N
    ratios: list                # C_{n+1}/C_n at indices with C_n > 0
    phi_values: list
    phi_limit_estimate: float
    residual: float
    terminated_by: str          # exact-fixed-point | tolerance | max-iterations
    rho: float | None = None    # max ratio over the tail of positive steps
    n0: int | None = None       # first index past which ratios stay <= rho
    inadmissible_start: bool = False

    @property
    def positive_steps(self) -> list:
        return [c for c in self.steps if c > 0]

    @property
    def terminal_id(self) -> int:
        return self.orbit_ids[-1]


def picard_iterate(
    problem: ContractionProblem,
    start,
    tol: float = 0.0,
    max_iter: int | None = None,
    allow_inadmissible_start: bool = False,
) -> IterationTrace:
    """Iterate sigma_{n+1} = F sigma_n from an admissible start, recording the trace.

    Stops on exact repetition (a fixed point), on a step of size <= tol when
    tol > 0, or at max_iter.  Every recorded consecutive pair is required to
    lie in the relation; a violation aborts with the witness since it
    falsifies the closedness premise the proof relies on.
    """
    space, R, F, phi = problem.space, problem.relation, problem.map, problem.potential
    if max_iter is None:
        max_iter = 10 * len(space)
    sid = _pid(start) if not isinstance(start, float) else space.point_by_value(start).id
    inadmissible = (sid, F(sid)) not in R.pairs
    if inadmissible and not allow_inadmissible_start:
        raise StartNotAdmissible(
            f"start point id {sid} is not in the admissible set M(F;R); "
            "pass allow_inadmissible_start to record the violation and proceed"
        )

    ids = [sid]
    steps = []
    terminated_by = "max-iterations"
    for _ in range(max_iter):
        cur = ids[-1]
        nxt = F(cur)
        if (cur, nxt) not in R.pairs and not inadmissible:
            raise RelationBroken((space.point(cur).value, space.point(nxt).value))
        c = distance(space, cur, nxt)
        ids.append(nxt)
        steps.append(c)
        if nxt == cur:
            terminated_by = "exact-fixed-point"
            break
        if tol > 0 and c <= tol:
            terminated_by = "tolerance"
            break

    ratios = [steps[n + 1] / steps[n] for n in range(len(steps) - 1) if steps[n] > 0]
    rho, n0 = _estimate_rho(steps)
    terminal = ids[-1]
    trace = IterationTrace(
        orbit=[space.point(i).value for i in ids],
        orbit_ids=ids,
        steps=steps,
        ratios=ratios,
        phi_values=[phi(i) for i in ids],
        phi_limit_estimate=phi(terminal),
        residual=distance(space, terminal, F(terminal)),
        terminated_by=terminated_by,
        rho=rho,
        n0=n0,
        inadmissible_start=inadmissible,
    )
    return trace


def _estimate_rho(steps):
    """A posteriori contraction factor: max ratio over the last half of positive steps."""
    ratios = []
    for n in range(len(steps) - 1):
        if steps[n] > 0 and steps[n + 1] > 0:
            ratios.append((n + 1, steps[n + 1] / steps[n]))
    if len(ratios) < 3:
        return None, None
    tail = ratios[len(ratios) // 2:]
    rho = max(r for _, r in tail)
    n0 = None
    for i, (idx, _) in enumerate(ratios):
        if all(r <= rho for _, r in ratios[i:]):
            n0 = idx
            break
    return rho, n0


@dataclass
class RatioDiagnostics:
    per_index_bound_ok: bool
    per_index_witnesses: list
    telescoping_ok: bool
    ratio_sum: float
    phi_budget: float            # phi(sigma_0) - phi limit estimate
    rho: float | None
    n0: int | None
    geometric_decay_ok: bool | None   # None = not exercised (trace too short)
    asymptotics_exercised: bool


def ratio_diagnostics(trace: IterationTrace, tol: float = 0.0) -> RatioDiagnostics:
    """Check the proof's step-ratio mechanics on a recorded trace.

    Per index n with C_n, C_{n+1} > 0: C_{n+1}/C_n <= phi(sigma_{n-1}) -
    phi(sigma_n).  The ratio partial sum must stay within the total
    potential drop.  On traces with at least three positive steps the
    estimated rho < 1 must dominate every ratio from n0 on (the eventual
    geometric decay); shorter traces leave the asymptotic checks
    not-exercised.
    """
    if not trace.steps:
        raise ValueError("trace has no steps")
    phi = trace.phi_values
    witnesses = []
    ratio_sum = 0.0
    for n in range(len(trace.steps) - 1):
        if trace.steps[n] <= 0:
            continue
        ratio = trace.steps[n + 1] / trace.steps[n]
        ratio_sum += ratio
        drop = phi[n] - phi[n + 1]
        if ratio > drop + tol:
            witnesses.append({"n": n + 1, "ratio": ratio, "phi_drop": drop})
    budget = phi[0] - trace.phi_limit_estimate
    telescoping_ok = ratio_sum <= budget + tol

    decay_ok = None
    exercised = trace.rho is not None
    if exercised:
        decay_ok = trace.rho < 1
        for n in range(trace.n0 - 1, len(trace.steps) - 1):
            if trace.steps[n] > 0 and trace.steps[n + 1] > trace.rho * trace.steps[n] + tol:
                decay_ok = False
    return RatioDiagnostics(
        per_index_bound_ok=not witnesses,
        per_index_witnesses=witnesses,
        telescoping_ok=telescoping_ok,
        ratio_sum=ratio_sum,
        phi_budget=budget,
        rho=trace.rho,
        n0=trace.n0,
        geometric_decay_ok=decay_ok,
        asymptotics_exercised=exercised,
    )


def enumerate_fixed_points(space: BMetricSpace, fmap: SelfMap) -> list:
    """Brute-force oracle: every point equal to its own image."""
    fmap.validate(space)
    return [p for p in space.points if fmap(p) == p.id]


class CertificationError(RuntimeError):
    """Solver terminal point is not a fixed point (typically tolerance misuse)."""


@dataclass
class FixedPointCertificate:
    fixed_points: list           # values, oracle-enumerated
    solver_result: float
    unique: bool
    contradictions: list = field(default_factory=list)
    unconnected_pairs: list = field(default_factory=list)


def certify(problem: ContractionProblem, trace: IterationTrace, tol: float | None = None) -> FixedPointCertificate:
    """Cross-check a terminated trace against the exhaustive fixed-point oracle.

    With several fixed points, any pair joined by a relation path while the
    contraction verdict holds on at least one active pair contradicts the
    uniqueness theorem, so the pair is recorded as a data inconsistency
    instead of being trusted.  A wholly vacuous verdict (the map fixes the
    relation's support) claims nothing either way.
    """
    if trace.terminated_by == "max-iterations":
        raise ValueError("trace did not terminate; cannot certify")
    space = problem.space
    fps = enumerate_fixed_points(space, problem.map)
    fp_ids = {p.id for p in fps}
    terminal = trace.terminal_id
    if trace.residual == 0 and terminal not in fp_ids:
        raise CertificationError("terminal point has zero residual but is not an oracle fixed point")
    if trace.residual > 0 and trace.terminated_by == "exact-fixed-point":
        raise CertificationError("exact termination with positive residual")
    if terminal not in fp_ids and trace.terminated_by == "tolerance":
        raise CertificationError(
            "tolerance-terminated trace did not land on a fixed point; tighten tol"
        )

    cert = FixedPointCertificate(
        fixed_points=sorted(p.value for p in fps),
        solver_result=space.point(terminal).value,
        unique=len(fps) == 1,
    )
    if len(fps) >= 2:
        verdict = verify_contraction(problem, tol)
        contraction_ok = verdict.ok and bool(verdict.active_rows)
        ids = sorted(fp_ids)
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                check = verify_uniqueness_condition(problem, a, b)
                if not check.path_exists:
                    check = verify_uniqueness_condition(problem, b, a)
                if check.path_exists and contraction_ok:
                    cert.contradictions.append(
                        {
                            "pair": (space.point(a).value, space.point(b).value),
                            "path": check.path.value_nodes(space),
                            "note": "connected fixed points under a passing contraction "
                            "verdict contradict the uniqueness theorem; data inconsistent",
                        }
                    )
                elif not check.path_exists:
                    cert.unconnected_pairs.append((space.point(a).value, space.point(b).value))
    return cert
