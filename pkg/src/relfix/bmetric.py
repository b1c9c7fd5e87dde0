"""Finite b-metric spaces and exhaustive verification of the relaxed metric axioms."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

FORMULA_METRICS = ("squared-difference", "absolute-difference")


class UnknownPointError(KeyError):
    """Raised when a point id or value does not belong to the space."""


@dataclass(frozen=True)
class Point:
    id: int
    value: float


@dataclass(frozen=True)
class BMetricSpace:
    """A finite point set with a distance function and relaxation coefficient s >= 1.

    The metric is either a named formula over point values
    ("squared-difference" or "absolute-difference") or an explicit table
    indexed by point id.  ``complete`` is a user assertion: completeness is
    never computed from finite data.  ``grid_sample`` marks spaces sampled
    from a continuum, which disables the discrete-space arguments
    (see relation.check_bd_self_closed).
    """

    points: tuple[Point, ...]
    metric: str = "squared-difference"
    table: tuple[tuple[float, ...], ...] | None = None
    s: float = 1.0
    complete: bool = True
    grid_sample: bool = False

    def __post_init__(self):
        if not self.points:
            raise ValueError("space needs at least one point")
        if self.s < 1.0:
            raise ValueError("s >= 1 required")
        if not math.isfinite(self.s):
            raise ValueError("s must be finite")
        ids = [p.id for p in self.points]
        if ids != list(range(len(ids))):
            raise ValueError("point ids must be dense 0..n-1 in order")
        for p in self.points:
            if not math.isfinite(p.value):
                raise ValueError(f"point {p.id} has non-finite value")
        if self.metric == "table":
            if self.table is None:
                raise ValueError("table metric requires a table")
            n = len(self.points)
            if len(self.table) != n or any(len(row) != n for row in self.table):
                raise ValueError("metric table must be square, one row per point")
            for row in self.table:
                for v in row:
                    if not math.isfinite(v) or v < 0:
                        raise ValueError("metric table entries must be finite and nonnegative")
        elif self.metric not in FORMULA_METRICS:
            raise ValueError(f"unknown metric {self.metric!r}")

    @classmethod
    def from_values(cls, values, **kw) -> "BMetricSpace":
        pts = tuple(Point(i, float(v)) for i, v in enumerate(values))
        return cls(points=pts, **kw)

    def point(self, pid: int) -> Point:
        if not 0 <= pid < len(self.points):
            raise UnknownPointError(pid)
        return self.points[pid]

    def point_by_value(self, value: float, atol: float = 1e-12) -> Point:
        for p in self.points:
            if abs(p.value - value) <= atol:
                return p
        raise UnknownPointError(value)

    def min_nonzero_distance(self) -> float:
        """Smallest positive pairwise distance; +inf on a single-point space."""
        best = math.inf
        for a, b in itertools.combinations(self.points, 2):
            d = distance(self, a, b)
            if 0 < d < best:
                best = d
        return best

    def __len__(self):
        return len(self.points)


def _pid(p) -> int:
    return p.id if isinstance(p, Point) else int(p)


def distance(space: BMetricSpace, a, b) -> float:
    """d(a, b) under the space's metric definition."""
    ia, ib = _pid(a), _pid(b)
    pa, pb = space.point(ia), space.point(ib)
    if space.metric == "squared-difference":
        return (pa.value - pb.value) ** 2
    if space.metric == "absolute-difference":
        return abs(pa.value - pb.value)
    return space.table[ia][ib]


def default_axiom_tol(space: BMetricSpace) -> float:
    # formula evaluation rounds; explicit tables are taken as exact
    return 1e-12 if space.metric in FORMULA_METRICS else 0.0


@dataclass
class AxiomReport:
    identity_ok: bool
    symmetry_ok: bool
    triangle_ok: bool
    min_feasible_s: float
    s: float
    tol: float
    identity_witnesses: list = field(default_factory=list)
    symmetry_witnesses: list = field(default_factory=list)
    triangle_witnesses: list = field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return self.identity_ok and self.symmetry_ok and self.triangle_ok


def verify_bmetric_axioms(space: BMetricSpace, tol: float | None = None) -> AxiomReport:
    """Exhaustively check the three b-metric axioms at the space's coefficient s.

    A triangle violation for the ordered triple (a, w, b) means
    d(a, w) > s * (d(a, b) + d(b, w)) + tol; witnesses are recorded as value
    triples (a, w, via=b).  min_feasible_s is the max of d(a, w) / (d(a, b)
    + d(b, w)) over triples with positive denominator, reported even when
    the declared s already suffices.
    """
    if tol is None:
        tol = default_axiom_tol(space)
    rep = AxiomReport(True, True, True, 1.0, space.s, tol)

    pts = space.points
    for a in pts:
        if distance(space, a, a) > tol:
            rep.identity_ok = False
            rep.identity_witnesses.append((a.value, a.value))
    for a, b in itertools.combinations(pts, 2):
        dab, dba = distance(space, a, b), distance(space, b, a)
        if dab <= tol:
            rep.identity_ok = False
            rep.identity_witnesses.append((a.value, b.value))
        if abs(dab - dba) > tol:
            rep.symmetry_ok = False
            rep.symmetry_witnesses.append((a.value, b.value))

    worst = 0.0
    for a, b, w in itertools.product(pts, repeat=3):
        lhs = distance(space, a, w)
        rhs = distance(space, a, b) + distance(space, b, w)
        if rhs > 0:
            worst = max(worst, lhs / rhs)
        if lhs > space.s * rhs + tol:
            rep.triangle_ok = False
            rep.triangle_witnesses.append((a.value, w.value, b.value))
    rep.min_feasible_s = max(worst, 1.0) if len(pts) > 1 else 1.0
    return rep
