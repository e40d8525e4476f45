"""Proof-guided (F2, F)-partitioner.

Peel reducible configurations off the graph until nothing is left, then put
the vertices back one configuration at a time, extending the partition of the
smaller graph by the case analysis attached to each configuration.  Whenever
an extension is impossible the exact solver takes over at that level.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import Embedding, Graph, delete_vertices, in_class
from .partition import F2_F, Partition, Requirement, meets, normalize, verify, RequirementUnmeetable
from .solver import Outcome, solve
from .structure import Configuration, Kind, find_reducible

log = logging.getLogger(__name__)

V1, V2 = 0, 1
FALLBACK_BUDGET = 5_000_000


class ExtensionFailed(RuntimeError):
    pass


class TableRowSuspect(ExtensionFailed):
    """The printed case table cannot be applied as written."""


class Unpartitionable(RuntimeError):
    pass


def _check_cover(g: Graph, p_sub: Partition, removed: Sequence[int]) -> None:
    expect = set(g.vertices) - set(removed)
    if set(p_sub.assignment) != expect:
        raise ExtensionFailed("sub-partition does not cover the reduced graph")


def _finish(g: Graph, p_sub: Partition, placed: dict[int, int], label: str) -> Partition:
    p = p_sub.with_parts(placed)
    verdict = verify(g, p)
    if not verdict:
        raise ExtensionFailed(f"{label}: extension does not verify ({verdict.witness})")
    return p


def extend_c0(g: Graph, p_sub: Partition, v: int) -> Partition:
    """Put back a vertex of degree <= 2.

    Any V1 neighbour sends ``v`` to V2 (it then has at most one V2
    neighbour); two V2 neighbours send it to V1 with no V1 neighbour.  An
    isolated vertex goes to V2.
    """
    _check_cover(g, p_sub, [v])
    nbrs = g.neighbors(v)
    if len(nbrs) > 2:
        raise ExtensionFailed(f"C0 anchor {v} has degree {len(nbrs)}")
    if not nbrs or any(p_sub[u] == V1 for u in nbrs):
        part = V2
    else:
        part = V1
    return _finish(g, p_sub, {v: part}, "C0")


def extend_c1(g: Graph, p_sub: Partition, v: int) -> Partition:
    """Put back a 3-vertex whose neighbours are unsaturated or in V2."""
    _check_cover(g, p_sub, [v])
    nbrs = g.neighbors(v)
    if len(nbrs) != 3:
        raise ExtensionFailed(f"C1 anchor {v} has degree {len(nbrs)}")
    sub = g.induced(p_sub.assignment)
    if not meets(sub, p_sub, {u: Requirement.NOT_SATURATED for u in nbrs}):
        raise ExtensionFailed("C1: a V1 neighbour is saturated")
    in_v1 = sum(1 for u in nbrs if p_sub[u] == V1)
    return _finish(g, p_sub, {v: V2 if in_v1 >= 2 else V1}, "C1")


def c2_case(p_sub: Partition, v: int, v1p: int, v2p: int) -> str:
    side = "v1" if p_sub[v] == V1 else "v2"
    pend = "".join("1" if p_sub[x] == V1 else "2" for x in (v1p, v2p))
    return f"C2:{side}:{pend}"


def extend_c2(
    g: Graph, p_sub: Partition, v: int, v1: int, v2: int, v1p: int, v2p: int
) -> Partition:
    """Put back the two terrible 3-vertices of a poor 3-face at a 5-vertex."""
    _check_cover(g, p_sub, [v1, v2])
    sub = g.induced(p_sub.assignment)
    if not meets(sub, p_sub, {x: Requirement.NOT_SATURATED for x in (v, v1p, v2p)}):
        raise ExtensionFailed("C2: normalisation precondition violated")
    a, b = p_sub[v1p] == V1, p_sub[v2p] == V1
    if p_sub[v] == V1:
        if a or b:
            placed = {v1: V2, v2: V2}
        else:
            placed = {v1: V1, v2: V2}
    else:
        if not a and not b:
            placed = {v1: V1, v2: V1}
        elif a and not b:
            placed = {v1: V2, v2: V1}
        elif b and not a:
            placed = {v1: V1, v2: V2}
        else:
            placed = {v1: V1, v2: V2}
    return _finish(g, p_sub, placed, c2_case(p_sub, v, v1p, v2p))


# Rows of the C3 case table: (v's part, face A has a V1 pendent, face B has
# a V1 pendent) -> (vertices of v1..v4 going to V1, going to V2), with
# indices 0..3 standing for v1..v4.  Row 6 as printed puts v2 on both sides.
C3_PRINTED = {
    1: ((V1, True, True), ((), (0, 1, 2, 3))),
    2: ((V1, True, False), ((3,), (0, 1, 2))),
    3: ((V1, False, False), ((1, 3), (0, 2))),
    4: ((V2, True, True), ((0, 1, 2, 3), ())),
    5: ((V2, True, False), ((0, 1, 2), (3,))),
    6: ((V2, False, False), ((0, 1, 2), (1, 3))),
}
C3_ROW6_REPAIRED = ((0, 1, 2, 3), ())


def c3_row(p_sub: Partition, v: int, pend: Sequence[int]) -> tuple[int, bool]:
    """Table row for the current sub-partition and whether faces were swapped."""
    a = p_sub[pend[0]] == V1 or p_sub[pend[1]] == V1
    b = p_sub[pend[2]] == V1 or p_sub[pend[3]] == V1
    swapped = b and not a
    if swapped:
        a, b = b, a
    key = (p_sub[v], a, b)
    for row, (cond, _) in C3_PRINTED.items():
        if cond == key:
            return row, swapped
    raise AssertionError(key)


def c3_placement(p_sub: Partition, v: int, dels: Sequence[int], pend: Sequence[int],
                 printed: bool = False) -> tuple[dict[int, int], int, bool]:
    """Placement of ``v1..v4`` per the case table.

    Returns ``(placement, row, suspect)``; ``suspect`` marks a placement that
    differs from the printed row.  With ``printed=False`` the rows with ``v``
    in V2 are applied face by face: both vertices of a face go to V1 unless
    both of its pendent neighbours are in V1, in which case the first goes to
    V1 and the second to V2.  This agrees with printed rows 4 and 5 except
    where those rows can close a cycle, and replaces the contradictory row 6.
    """
    row, swapped = c3_row(p_sub, v, pend)
    order = [2, 3, 0, 1] if swapped else [0, 1, 2, 3]
    d = [dels[i] for i in order]
    pd = [pend[i] for i in order]
    to_v1, to_v2 = C3_PRINTED[row][1]
    if printed:
        if row == 6:
            raise TableRowSuspect("C3 row 6 as printed places v2 in both parts")
        placement = {d[i]: V1 for i in to_v1}
        placement.update({d[i]: V2 for i in to_v2})
        return placement, row, False
    if p_sub[v] == V1:
        placement = {d[i]: V1 for i in to_v1}
        placement.update({d[i]: V2 for i in to_v2})
        return placement, row, False
    placement = {}
    for x, y, px, py in ((d[0], d[1], pd[0], pd[1]), (d[2], d[3], pd[2], pd[3])):
        if p_sub[px] == V1 and p_sub[py] == V1:
            placement[x], placement[y] = V1, V2
        else:
            placement[x], placement[y] = V1, V1
    if row == 6:
        literal = {d[i]: V1 for i in C3_ROW6_REPAIRED[0]}
    else:
        literal = {d[i]: V1 for i in to_v1}
        literal.update({d[i]: V2 for i in to_v2})
    return placement, row, row == 6 or placement != literal


def extend_c3(
    g: Graph, p_sub: Partition, v: int, dels: Sequence[int], pend: Sequence[int],
    printed: bool = False,
) -> Partition:
    """Put back the four terrible 3-vertices of two poor 3-faces at a 6-vertex.

    ``dels`` is ``(v1, v2, v3, v4)`` with ``v1 v2`` and ``v3 v4`` the two
    faces, ``pend`` the matching pendent neighbours.
    """
    _check_cover(g, p_sub, dels)
    sub = g.induced(p_sub.assignment)
    reqs = {x: Requirement.NOT_SATURATED for x in pend}
    reqs[v] = Requirement.NO_V1_NEIGHBORS
    if not meets(sub, p_sub, reqs):
        raise ExtensionFailed("C3: normalisation precondition violated")
    placement, row, _ = c3_placement(p_sub, v, dels, pend, printed)
    return _finish(g, p_sub, placement, f"C3:row{row}")


def requirements(conf: Configuration, g: Graph) -> dict[int, Requirement]:
    """Normalisation needed on the reduced graph before extending ``conf``."""
    if conf.kind is Kind.C0:
        return {}
    if conf.kind is Kind.C1:
        return {u: Requirement.NOT_SATURATED for u in g.neighbors(conf.anchor)}
    reqs = {x: Requirement.NOT_SATURATED for x in conf.pendent}
    if conf.kind is Kind.C2:
        reqs[conf.anchor] = Requirement.NOT_SATURATED
    else:
        reqs[conf.anchor] = Requirement.NO_V1_NEIGHBORS
    return reqs


# --- driver -------------------------------------------------------------------


@dataclass
class Step:
    kind: str
    anchor: Optional[int]
    case: str
    moved: list[int] = field(default_factory=list)
    placed: dict[int, int] = field(default_factory=dict)
    fallback: bool = False
    suspect: bool = False

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "anchor": self.anchor,
            "case": self.case,
            "moved": self.moved,
            "placed": {str(v): p for v, p in sorted(self.placed.items())},
            "fallback": self.fallback,
            "suspect": self.suspect,
        }


@dataclass
class ExtensionTrace:
    steps: list[Step] = field(default_factory=list)
    partition: Optional[Partition] = None
    events: list[str] = field(default_factory=list)

    @property
    def fallbacks(self) -> int:
        return sum(s.fallback for s in self.steps)

    @property
    def suspects(self) -> int:
        return sum(s.suspect for s in self.steps)

    def replay(self) -> Partition:
        """Rebuild the final partition from the recorded steps alone."""
        assignment: dict[int, int] = {}
        for s in self.steps:
            if s.fallback:
                assignment = dict(s.placed)
                continue
            for x in s.moved:
                assignment[x] = V2
            assignment.update(s.placed)
        return Partition(assignment, F2_F)

    def to_json(self) -> dict:
        kinds: dict[str, int] = {}
        for s in self.steps:
            kinds[s.kind] = kinds.get(s.kind, 0) + 1
        return {
            "steps": [s.to_json() for s in self.steps],
            "kinds": dict(sorted(kinds.items())),
            "fallbacks": self.fallbacks,
            "suspects": self.suspects,
            "events": self.events,
        }


def _fallback(g: Graph, budget: int) -> Partition:
    res = solve(g, F2_F, budget)
    if res.outcome is Outcome.INFEASIBLE:
        raise Unpartitionable(f"no (F2, F)-partition exists for {g}")
    if res.outcome is Outcome.BUDGET_EXCEEDED:
        raise Unpartitionable(f"exact solver ran out of budget on {g}")
    return res.partition


def _extend(conf: Configuration, g: Graph, p_sub: Partition) -> tuple[Partition, str, bool]:
    if conf.kind is Kind.C0:
        return extend_c0(g, p_sub, conf.anchor), "C0", False
    if conf.kind is Kind.C1:
        return extend_c1(g, p_sub, conf.anchor), "C1", False
    if conf.kind is Kind.C2:
        v1, v2 = conf.deletion
        v1p, v2p = conf.pendent
        case = c2_case(p_sub, conf.anchor, v1p, v2p)
        return extend_c2(g, p_sub, conf.anchor, v1, v2, v1p, v2p), case, False
    _, row, suspect = c3_placement(p_sub, conf.anchor, conf.deletion, conf.pendent)
    p = extend_c3(g, p_sub, conf.anchor, conf.deletion, conf.pendent)
    return p, f"C3:row{row}", suspect


def construct(
    g: Graph, e: Embedding, *, check_class: bool = True, budget: int = FALLBACK_BUDGET
) -> tuple[Partition, ExtensionTrace]:
    """Build an (F2, F)-partition of ``g`` by reduction and extension.

    Raises:
        Unpartitionable: the exact solver proves some level has no partition.
    """
    trace = ExtensionTrace()
    if not in_class(g):
        trace.events.append("input has a 4- or 6-cycle; solved directly")
        p = _fallback(g, budget)
        trace.steps.append(Step("base", None, "out-of-class", placed=dict(p.assignment), fallback=True))
        trace.partition = p
        return p, trace

    stack: list[tuple[Configuration, Graph]] = []
    cur_g, cur_e = g, e
    while cur_g.n:
        conf = find_reducible(cur_g, cur_e)
        if conf is None:
            msg = f"no reducible configuration in an in-class graph on {cur_g.n} vertices"
            log.warning(msg)
            trace.events.append(msg)
            break
        if not conf.distinct():
            msg = f"{conf.kind.value} at {conf.anchor}: pendent neighbours coincide"
            log.warning(msg)
            trace.events.append(msg)
            break
        stack.append((conf, cur_g))
        cur_g, cur_e = delete_vertices(cur_g, cur_e, conf.deletion)
        if check_class and not in_class(cur_g):
            raise AssertionError("vertex deletion produced a 4- or 6-cycle")

    if cur_g.n:
        p = _fallback(cur_g, budget)
        trace.steps.append(Step("base", None, "solver", placed=dict(p.assignment), fallback=True))
    else:
        p = Partition({}, F2_F)
        trace.steps.append(Step("base", None, "empty"))

    for conf, level in reversed(stack):
        sub = level.induced(v for v in level.vertices if v not in set(conf.deletion))
        try:
            p_norm, moved = normalize(sub, p, requirements(conf, level))
            p_new, case, suspect = _extend(conf, level, p_norm)
        except (ExtensionFailed, RequirementUnmeetable) as exc:
            msg = f"{conf.kind.value} at {conf.anchor}: {exc}; falling back to exact solver"
            log.warning(msg)
            trace.events.append(msg)
            p = _fallback(level, budget)
            trace.steps.append(Step(conf.kind.value, conf.anchor, "fallback",
                                    placed=dict(p.assignment), fallback=True))
            continue
        if suspect:
            msg = f"{case} at {conf.anchor}: placement deviates from the printed table"
            log.info(msg)
            trace.events.append(msg)
        trace.steps.append(Step(conf.kind.value, conf.anchor, case, moved,
                                {x: p_new[x] for x in conf.deletion}, suspect=suspect))
        p = p_new
    if not verify(g, p):
        raise AssertionError("constructed partition fails verification")
    trace.partition = p
    return p, trace
