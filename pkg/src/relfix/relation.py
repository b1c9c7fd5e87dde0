"""Binary relations over a finite b-metric space and the relational hypotheses.

Relations are stored as frozen sets of ordered point-id pairs; every query
here is a pure read-only function, so concurrent use is safe.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .bmetric import BMetricSpace, Point, _pid


@dataclass(frozen=True)
class BinaryRelation:
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset((int(a), int(b)) for a, b in self.pairs))

    @classmethod
    def from_value_pairs(cls, space: BMetricSpace, value_pairs) -> "BinaryRelation":
        ids = set()
        for a, b in value_pairs:
            ids.add((space.point_by_value(a).id, space.point_by_value(b).id))
        return cls(frozenset(ids))

    def sorted_pairs(self) -> list:
        return sorted(self.pairs)

    def value_pairs(self, space: BMetricSpace) -> list:
        return sorted((space.point(a).value, space.point(b).value) for a, b in self.pairs)

    def successors(self, a) -> list:
        ia = _pid(a)
        return sorted(b for (x, b) in self.pairs if x == ia)

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, pair):
        return (_pid(pair[0]), _pid(pair[1])) in self.pairs


def related(R: BinaryRelation, a, b) -> bool:
    return (_pid(a), _pid(b)) in R.pairs


def symmetric_closure(R: BinaryRelation) -> BinaryRelation:
    """R union its inverse, making every related pair comparable both ways."""
    return BinaryRelation(R.pairs | frozenset((b, a) for a, b in R.pairs))


def transitive_closure(R: BinaryRelation) -> BinaryRelation:
    """Smallest transitive superset of R (Warshall on the pair set); idempotent."""
    pairs = set(R.pairs)
    nodes = sorted({x for p in pairs for x in p})
    for k in nodes:
        for i in nodes:
            if (i, k) in pairs:
                for j in nodes:
                    if (k, j) in pairs:
                        pairs.add((i, j))
    return BinaryRelation(frozenset(pairs))


def is_transitive(R: BinaryRelation):
    """True iff (a,b),(b,c) in R implies (a,c) in R; witnesses are failing triples."""
    succ = {}
    for a, b in R.pairs:
        succ.setdefault(a, set()).add(b)
    witnesses = []
    for a, b in sorted(R.pairs):
        for c in sorted(succ.get(b, ())):
            if c not in succ.get(a, ()):
                witnesses.append((a, b, c))
    return (not witnesses), witnesses


def is_complete(R: BinaryRelation, space: BMetricSpace):
    """Every unordered pair of *distinct* points is related in some direction.

    The distinct-pair reading is deliberate: quantifying over equal pairs
    would force reflexivity, which the worked instances do not have.
    """
    witnesses = []
    n = len(space)
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) not in R.pairs and (b, a) not in R.pairs:
                witnesses.append((a, b))
    return (not witnesses), witnesses


def is_f_closed(R: BinaryRelation, mapping: dict):
    """(a,b) in R implies (F a, F b) in R; witnesses are violating pairs."""
    witnesses = []
    for a, b in sorted(R.pairs):
        if (mapping[a], mapping[b]) not in R.pairs:
            witnesses.append((a, b))
    return (not witnesses), witnesses


def is_r_directed(D, R: BinaryRelation, space: BMetricSpace):
    """Every pair in D (equal pairs included) has a common R-successor in the space."""
    ids = sorted(_pid(p) for p in D)
    witnesses = []
    n = len(space)
    for i, a in enumerate(ids):
        for b in ids[i:]:
            if not any((a, e) in R.pairs and (b, e) in R.pairs for e in range(n)):
                witnesses.append((a, b))
    return (not witnesses), witnesses


@dataclass(frozen=True)
class Path:
    nodes: tuple

    @property
    def length(self) -> int:
        return len(self.nodes) - 1

    def value_nodes(self, space: BMetricSpace) -> list:
        return [space.point(i).value for i in self.nodes]


def find_path(R: BinaryRelation, source, target, max_len: int | None = None) -> Path | None:
    """Shortest path from source to target in R viewed as a digraph.

    Paths have length >= 1, so source == target needs an actual cycle.
    BFS expands successors in increasing id order, which breaks ties toward
    the smallest intermediate ids deterministically.
    """
    src, dst = _pid(source), _pid(target)
    if max_len is not None and max_len < 1:
        raise ValueError("max_len must be >= 1")
    parent = {}
    queue = deque()
    for b in R.successors(src):
        if b == dst:
            return Path((src, dst))
        if b not in parent:
            parent[b] = src
            queue.append((b, 1))
    while queue:
        node, depth = queue.popleft()
        if max_len is not None and depth >= max_len:
            continue
        for b in R.successors(node):
            if b == dst:
                nodes = [node]
                while nodes[-1] != src:
                    nodes.append(parent[nodes[-1]])
                nodes.reverse()
                nodes.append(dst)
                return Path(tuple(nodes))
            if b not in parent:
                parent[b] = node
                queue.append((b, depth + 1))
    return None


@dataclass
class BdSelfClosedResult:
    applicable: bool
    holds: bool | None
    justification: str


def check_bd_self_closed(space: BMetricSpace, R: BinaryRelation) -> BdSelfClosedResult:
    """Decide b-d-self-closedness on spaces with a positive minimal nonzero gap.

    On such spaces every convergent sequence is eventually constant, so any
    relation-preserving convergent sequence has a constant tail whose pairs
    are (limit, limit) in R; the constant tail is the required subsequence,
    related to the limit in either direction.  Spaces flagged as grid
    samples of a continuum fall outside this argument and get
    not-applicable.
    """
    if space.grid_sample:
        return BdSelfClosedResult(False, None, "grid sample of a continuum: eventually-constant argument unavailable")
    gap = space.min_nonzero_distance()
    if gap <= 0 or not math.isfinite(space.s):
        return BdSelfClosedResult(False, None, "no positive minimal nonzero distance")
    return BdSelfClosedResult(
        True,
        True,
        "eventually-constant tails: minimal nonzero distance "
        f"{gap:g} > 0 forces convergent sequences to stabilize; tail pairs "
        "(limit, limit) lie in the relation by preservation",
    )


@dataclass
class RelationDiagnostics:
    reflexive: bool
    irreflexive: bool
    symmetric: bool
    antisymmetric: bool
    witnesses: dict = field(default_factory=dict)


def relation_diagnostics(R: BinaryRelation, space: BMetricSpace) -> RelationDiagnostics:
    """Order-theoretic diagnostics (reflexivity, symmetry, antisymmetry)."""
    n = len(space)
    missing_loops = [a for a in range(n) if (a, a) not in R.pairs]
    present_loops = sorted(a for a, b in R.pairs if a == b)
    asym = sorted((a, b) for a, b in R.pairs if (b, a) not in R.pairs)
    sym_distinct = sorted((a, b) for a, b in R.pairs if a != b and (b, a) in R.pairs)
    return RelationDiagnostics(
        reflexive=not missing_loops,
        irreflexive=not present_loops,
        symmetric=not asym,
        antisymmetric=not sym_distinct,
        witnesses={
            "reflexive": missing_loops,
            "irreflexive": present_loops,
            "symmetric": asym,
            "antisymmetric": sym_distinct,
        },
    )


@dataclass
class RelationReport:
    transitive: bool
    complete: bool
    f_closed: bool
    bd_self_closed: bool | None
    counterexamples: dict
    diagnostics: RelationDiagnostics
    bd_justification: str = ""


def build_relation_report(space: BMetricSpace, R: BinaryRelation, mapping: dict) -> RelationReport:
    trans, trans_w = is_transitive(R)
    comp, comp_w = is_complete(R, space)
    fcl, fcl_w = is_f_closed(R, mapping)
    bd = check_bd_self_closed(space, R)
    return RelationReport(
        transitive=trans,
        complete=comp,
        f_closed=fcl,
        bd_self_closed=bd.holds if bd.applicable else None,
        counterexamples={"transitive": trans_w, "complete": comp_w, "f_closed": fcl_w},
        diagnostics=relation_diagnostics(R, space),
        bd_justification=bd.justification,
    )
