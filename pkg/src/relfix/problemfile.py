"""Line-oriented problem files: parsing, validation, serialization, assembly.

A problem file is a sequence of ``[section]`` headers and ``key = value``
lines; ``#`` starts a comment.  Sections: space, relation, map, potential,
zeta, solver.  Repeated keys (``row``, ``piece``, ``pair``) accumulate in
order.  Point-valued fields always refer to points by their value, which is
how fixtures are written and diffed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, asdict

from .bmetric import BMetricSpace
from .relation import BinaryRelation, symmetric_closure, transitive_closure
from .contraction import ContractionProblem, SelfMap, Potential
from .simulation import SimulationFunction


class ProblemFileError(ValueError):
    """Syntax or semantic error, anchored to a source line when known."""

    def __init__(self, message, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True)
class Piece:
    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool
    image: float

    def contains(self, v: float) -> bool:
        above = v > self.lo or (self.lo_closed and v == self.lo)
        below = v < self.hi or (self.hi_closed and v == self.hi)
        return above and below


@dataclass(frozen=True)
class SpaceBlock:
    points: tuple
    metric: str = "squared-difference"
    rows: tuple = ()
    s: float = 1.0
    complete: bool = True
    grid_sample: bool = False


@dataclass(frozen=True)
class RelationBlock:
    pairs: tuple
    transitive_closure: bool = False
    symmetric_closure: bool = False


@dataclass(frozen=True)
class MapBlock:
    entries: tuple = ()
    pieces: tuple = ()
    r_continuous: bool = False


@dataclass(frozen=True)
class PotentialBlock:
    entries: tuple = ()
    linear_coeff: float | None = None


@dataclass(frozen=True)
class ZetaBlock:
    family: str = "linear"
    lam: float | None = None
    mu: float | None = None


@dataclass(frozen=True)
class SolverBlock:
    start: float | None = None
    tol: float = 0.0
    max_iter: int | None = None


@dataclass(frozen=True)
class ProblemFile:
    space: SpaceBlock
    relation: RelationBlock
    map: MapBlock
    potential: PotentialBlock
    zeta: ZetaBlock
    solver: SolverBlock = SolverBlock()


_SECTION_RE = re.compile(r"^\[([a-z-]+)\]$")
_KV_RE = re.compile(r"^([^=]+?)\s*=\s*(.*)$")
_PAIR_RE = re.compile(r"\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\)")
_PIECE_RE = re.compile(
    r"^([\[\(])\s*([^,\s]+)\s*,\s*([^\]\)\s]+)\s*([\]\)])\s*->\s*(\S+)$"
)
_ARROW_RE = re.compile(r"^(\S+)\s*->\s*(\S+)$")

_KNOWN_SECTIONS = ("space", "relation", "map", "potential", "zeta", "solver")


def _num(text: str, line: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise ProblemFileError(f"expected a number, got {text!r}", line)


def _flag(text: str, line: int) -> bool:
    t = text.strip().lower()
    if t in ("true", "yes", "1"):
        return True
    if t in ("false", "no", "0"):
        return False
    raise ProblemFileError(f"expected true/false, got {text!r}", line)


def parse_problem(text: str) -> ProblemFile:
    """Parse problem-file text; the first error raises with its line number."""
    sections: dict[str, list] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION_RE.match(line)
        if m:
            current = m.group(1)
            if current not in _KNOWN_SECTIONS:
                raise ProblemFileError(f"unknown section [{current}]", lineno)
            sections.setdefault(current, [])
            continue
        if current is None:
            raise ProblemFileError("content before the first [section] header", lineno)
        m = _KV_RE.match(line)
        if not m:
            raise ProblemFileError(f"expected 'key = value', got {line!r}", lineno)
        sections[current].append((m.group(1).strip(), m.group(2).strip(), lineno))

    for required in ("space", "relation", "map", "potential", "zeta"):
        if required not in sections:
            raise ProblemFileError(f"missing required section [{required}]")

    return ProblemFile(
        space=_parse_space(sections["space"]),
        relation=_parse_relation(sections["relation"]),
        map=_parse_map(sections["map"]),
        potential=_parse_potential(sections["potential"]),
        zeta=_parse_zeta(sections["zeta"]),
        solver=_parse_solver(sections.get("solver", [])),
    )


def _parse_space(items) -> SpaceBlock:
    points, metric, rows, s, complete, grid = None, "squared-difference", [], 1.0, True, False
    for key, value, line in items:
        if key == "points":
            points = tuple(_num(v, line) for v in value.split())
            if not points:
                raise ProblemFileError("points list is empty", line)
        elif key == "metric":
            metric = value
        elif key == "row":
            rows.append(tuple(_num(v, line) for v in value.split()))
        elif key == "s":
            s = _num(value, line)
            if s < 1:
                raise ProblemFileError("s >= 1 required", line)
        elif key == "complete":
            complete = _flag(value, line)
        elif key == "grid-sample":
            grid = _flag(value, line)
        else:
            raise ProblemFileError(f"unknown key {key!r} in [space]", line)
    if points is None:
        raise ProblemFileError("[space] requires a points line")
    if len(set(points)) != len(points):
        raise ProblemFileError("duplicate point values in [space]")
    return SpaceBlock(points=points, metric=metric, rows=tuple(rows), s=s,
                      complete=complete, grid_sample=grid)


def _parse_relation(items) -> RelationBlock:
    pairs, tc, sc = [], False, False
    for key, value, line in items:
        if key in ("pairs", "pair"):
            found = _PAIR_RE.findall(value)
            if not found:
                raise ProblemFileError("expected pairs like (1,2) (2,3)", line)
            pairs.extend((_num(a, line), _num(b, line)) for a, b in found)
        elif key == "transitive-closure":
            tc = _flag(value, line)
        elif key == "symmetric-closure":
            sc = _flag(value, line)
        else:
            raise ProblemFileError(f"unknown key {key!r} in [relation]", line)
    return RelationBlock(pairs=tuple(pairs), transitive_closure=tc, symmetric_closure=sc)


def _parse_map(items) -> MapBlock:
    entries, pieces, rc = [], [], False
    for key, value, line in items:
        if key == "piece":
            m = _PIECE_RE.match(value)
            if not m:
                raise ProblemFileError("expected a piece like [1,2] -> 1", line)
            lo_b, lo, hi, hi_b, img = m.groups()
            pieces.append(Piece(_num(lo, line), _num(hi, line),
                                lo_b == "[", hi_b == "]", _num(img, line)))
        elif key == "r-continuous":
            rc = _flag(value, line)
        else:
            entries.append((_num(key, line), _num(value, line)))
    if entries and pieces:
        raise ProblemFileError("[map] mixes explicit entries and piecewise rows")
    if not entries and not pieces:
        raise ProblemFileError("[map] requires entries or pieces")
    return MapBlock(entries=tuple(entries), pieces=tuple(pieces), r_continuous=rc)


def _parse_potential(items) -> PotentialBlock:
    entries, coeff = [], None
    for key, value, line in items:
        if key == "formula":
            parts = value.split()
            if len(parts) != 2 or parts[0] != "linear":
                raise ProblemFileError("potential formula must be 'linear C'", line)
            coeff = _num(parts[1], line)
        else:
            v = _num(value, line)
            if v < 0:
                raise ProblemFileError("potential codomain [0, ∞) violated", line)
            entries.append((_num(key, line), v))
    if entries and coeff is not None:
        raise ProblemFileError("[potential] mixes explicit entries and a formula")
    if not entries and coeff is None:
        raise ProblemFileError("[potential] requires entries or a formula")
    return PotentialBlock(entries=tuple(entries), linear_coeff=coeff)


def _parse_zeta(items) -> ZetaBlock:
    family, lam, mu = "linear", None, None
    for key, value, line in items:
        if key == "family":
            family = value
        elif key == "lambda":
            lam = _num(value, line)
        elif key == "mu":
            mu = _num(value, line)
        else:
            raise ProblemFileError(f"unknown key {key!r} in [zeta]", line)
    return ZetaBlock(family=family, lam=lam, mu=mu)


def _parse_solver(items) -> SolverBlock:
    start, tol, max_iter = None, 0.0, None
    for key, value, line in items:
        if key == "start":
            start = _num(value, line)
        elif key == "tol":
            tol = _num(value, line)
            if tol < 0:
                raise ProblemFileError("tol must be nonnegative", line)
        elif key == "max-iter":
            max_iter = int(_num(value, line))
            if max_iter < 1:
                raise ProblemFileError("max-iter must be positive", line)
        else:
            raise ProblemFileError(f"unknown key {key!r} in [solver]", line)
    return SolverBlock(start=start, tol=tol, max_iter=max_iter)


@dataclass
class ProblemBundle:
    """A fully assembled problem plus solver options, ready for the modules."""

    problem: ContractionProblem
    solver: SolverBlock
    file: ProblemFile


def build_problem(pf: ProblemFile, s_override: float | None = None) -> ProblemBundle:
    """Assemble module objects from a parsed file; semantic errors name the invariant."""
    sb = pf.space
    space = BMetricSpace.from_values(
        sb.points,
        metric=sb.metric,
        table=sb.rows or None,
        s=s_override if s_override is not None else sb.s,
        complete=sb.complete,
        grid_sample=sb.grid_sample,
    )

    try:
        relation = BinaryRelation.from_value_pairs(space, pf.relation.pairs)
    except KeyError as exc:
        raise ProblemFileError(f"relation endpoint {exc.args[0]} is not a point of the space")
    if pf.relation.symmetric_closure:
        relation = symmetric_closure(relation)
    if pf.relation.transitive_closure:
        relation = transitive_closure(relation)

    mapping = {}
    if pf.map.pieces:
        for p in space.points:
            piece = next((pc for pc in pf.map.pieces if pc.contains(p.value)), None)
            if piece is None:
                raise ProblemFileError(f"map not total: no piece covers point {p.value}")
            mapping[p.id] = space.point_by_value(piece.image).id
    else:
        for src, img in pf.map.entries:
            mapping[space.point_by_value(src).id] = space.point_by_value(img).id
    fmap = SelfMap(mapping=mapping, r_continuous=pf.map.r_continuous)

    if pf.potential.linear_coeff is not None:
        values = {p.id: pf.potential.linear_coeff * p.value for p in space.points}
    else:
        values = {space.point_by_value(v).id: x for v, x in pf.potential.entries}
    potential = Potential(values=values)

    zb = pf.zeta
    if zb.family == "linear":
        zeta = SimulationFunction(family="linear", lam=zb.lam)
    elif zb.family == "scaled":
        zeta = SimulationFunction(family="scaled", lam=zb.lam, mu=zb.mu)
    else:
        raise ProblemFileError(f"zeta family {zb.family!r} not available in problem files")

    problem = ContractionProblem(space=space, relation=relation, map=fmap,
                                 potential=potential, zeta=zeta)
    return ProblemBundle(problem=problem, solver=pf.solver, file=pf)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def serialize_problem(pf: ProblemFile) -> str:
    """Canonical text form; parse(serialize(pf)) == pf."""
    out = ["[space]"]
    out.append("points = " + " ".join(_fmt(v) for v in pf.space.points))
    out.append(f"metric = {pf.space.metric}")
    for row in pf.space.rows:
        out.append("row = " + " ".join(_fmt(v) for v in row))
    out.append(f"s = {_fmt(pf.space.s)}")
    out.append(f"complete = {str(pf.space.complete).lower()}")
    out.append(f"grid-sample = {str(pf.space.grid_sample).lower()}")

    out.append("")
    out.append("[relation]")
    if pf.relation.pairs:
        out.append("pairs = " + " ".join(f"({_fmt(a)},{_fmt(b)})" for a, b in pf.relation.pairs))
    out.append(f"transitive-closure = {str(pf.relation.transitive_closure).lower()}")
    out.append(f"symmetric-closure = {str(pf.relation.symmetric_closure).lower()}")

    out.append("")
    out.append("[map]")
    for pc in pf.map.pieces:
        lo_b = "[" if pc.lo_closed else "("
        hi_b = "]" if pc.hi_closed else ")"
        out.append(f"piece = {lo_b}{_fmt(pc.lo)},{_fmt(pc.hi)}{hi_b} -> {_fmt(pc.image)}")
    for src, img in pf.map.entries:
        out.append(f"{_fmt(src)} = {_fmt(img)}")
    out.append(f"r-continuous = {str(pf.map.r_continuous).lower()}")

    out.append("")
    out.append("[potential]")
    if pf.potential.linear_coeff is not None:
        out.append(f"formula = linear {_fmt(pf.potential.linear_coeff)}")
    for v, x in pf.potential.entries:
        out.append(f"{_fmt(v)} = {_fmt(x)}")

    out.append("")
    out.append("[zeta]")
    out.append(f"family = {pf.zeta.family}")
    if pf.zeta.lam is not None:
        out.append(f"lambda = {_fmt(pf.zeta.lam)}")
    if pf.zeta.mu is not None:
        out.append(f"mu = {_fmt(pf.zeta.mu)}")

    out.append("")
    out.append("[solver]")
    if pf.solver.start is not None:
        out.append(f"start = {_fmt(pf.solver.start)}")
    out.append(f"tol = {_fmt(pf.solver.tol)}")
    if pf.solver.max_iter is not None:
        out.append(f"max-iter = {pf.solver.max_iter}")
    return "\n".join(out) + "\n"
