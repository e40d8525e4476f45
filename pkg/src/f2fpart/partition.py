"""Vertex partitions, target classes and their verification."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .graph import Graph


class PartitionError(ValueError):
    pass


class PartsMismatch(PartitionError):
    pass


class WrongPart(PartitionError):
    pass


class RequirementUnmeetable(PartitionError):
    pass


class Kind(enum.Enum):
    FOREST = "F"
    DEGREE = "D"


@dataclass(frozen=True)
class ClassSpec:
    """Target class of one part: forests or arbitrary graphs, degree-capped.

    ``maxdeg=None`` means unbounded.  ``DegreeOnly(0)`` is normalised to
    ``Forest(0)`` so both spellings of the independent-set class compare equal.
    """

    kind: Kind
    maxdeg: Optional[int] = None

    def __post_init__(self):
        if self.maxdeg is not None and self.maxdeg < 0:
            raise ValueError("maxdeg must be non-negative")
        if self.kind is Kind.DEGREE and self.maxdeg is None:
            raise ValueError("an unbounded degree-only class admits every graph")
        if self.kind is Kind.DEGREE and self.maxdeg == 0:
            object.__setattr__(self, "kind", Kind.FOREST)

    @classmethod
    def forest(cls, maxdeg: Optional[int] = None) -> "ClassSpec":
        return cls(Kind.FOREST, maxdeg)

    @classmethod
    def degree(cls, maxdeg: int) -> "ClassSpec":
        return cls(Kind.DEGREE, maxdeg)

    @property
    def acyclic(self) -> bool:
        return self.kind is Kind.FOREST

    def __str__(self) -> str:
        if self.maxdeg == 0:
            return "I"
        if self.maxdeg is None:
            return "F"
        return f"{self.kind.value}{self.maxdeg}"


F = ClassSpec.forest()
F1 = ClassSpec.forest(1)
F2 = ClassSpec.forest(2)
I = ClassSpec.forest(0)
F2_F = (F2, F)


@dataclass(frozen=True)
class Partition:
    """Total map vertex -> part index, with one ClassSpec per part.

    Part 0 is the restricted part (``V1``); for ``(F2, F)`` part 1 is ``V2``.
    """

    assignment: Mapping[int, int]
    specs: tuple[ClassSpec, ...] = F2_F

    def __post_init__(self):
        object.__setattr__(self, "assignment", dict(sorted(self.assignment.items())))
        object.__setattr__(self, "specs", tuple(self.specs))
        k = len(self.specs)
        for v, p in self.assignment.items():
            if not 0 <= p < k:
                raise PartsMismatch(f"vertex {v} mapped to part {p}, only {k} specs")

    @property
    def k(self) -> int:
        return len(self.specs)

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def __contains__(self, v: int) -> bool:
        return v in self.assignment

    def members(self, part: int) -> frozenset[int]:
        return frozenset(v for v, p in self.assignment.items() if p == part)

    def parts(self) -> tuple[frozenset[int], ...]:
        return tuple(self.members(i) for i in range(self.k))

    def vector(self) -> tuple[int, ...]:
        return tuple(self.assignment.values())

    def with_parts(self, changes: Mapping[int, int]) -> "Partition":
        merged = dict(self.assignment)
        merged.update(changes)
        return Partition(merged, self.specs)

    def restricted(self, vertices: Iterable[int]) -> "Partition":
        return Partition({v: self.assignment[v] for v in vertices}, self.specs)

    def __hash__(self) -> int:
        return hash((tuple(self.assignment.items()), self.specs))


@dataclass(frozen=True)
class CycleWitness:
    part: int
    cycle: tuple[int, ...]


@dataclass(frozen=True)
class DegreeWitness:
    part: int
    vertex: int
    degree: int
    cap: int


Witness = Union[CycleWitness, DegreeWitness]


@dataclass(frozen=True)
class Verdict:
    valid: bool
    witness: Optional[Witness] = None

    def __bool__(self) -> bool:
        return self.valid

    def recheck(self, g: Graph, p: Partition) -> bool:
        """Confirm the witness really violates ``p`` on ``g``."""
        w = self.witness
        if w is None:
            return self.valid
        if isinstance(w, DegreeWitness):
            inside = [u for u in g.neighbors(w.vertex) if p[u] == w.part]
            return p[w.vertex] == w.part and len(inside) == w.degree > w.cap
        cyc = w.cycle
        return (
            len(cyc) >= 3
            and len(set(cyc)) == len(cyc)
            and all(p[v] == w.part for v in cyc)
            and all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
        )


def find_cycle(g: Graph, subset: Iterable[int]) -> Optional[tuple[int, ...]]:
    """One cycle of ``g[subset]`` as a vertex sequence, or None if acyclic."""
    inside = set(subset)
    parent: dict[int, int] = {}
    depth: dict[int, int] = {}
    for root in sorted(inside):
        if root in parent:
            continue
        parent[root] = root
        depth[root] = 0
        stack = [root]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y not in inside or y == parent[x]:
                    continue
                if y in parent:
                    # non-tree edge x-y closes a cycle through their common ancestor
                    a, b = x, y
                    left, right = [], []
                    while depth[a] > depth[b]:
                        left.append(a)
                        a = parent[a]
                    while depth[b] > depth[a]:
                        right.append(b)
                        b = parent[b]
                    while a != b:
                        left.append(a)
                        right.append(b)
                        a, b = parent[a], parent[b]
                    return tuple(left + [a] + right[::-1])
                parent[y] = x
                depth[y] = depth[x] + 1
                stack.append(y)
    return None


def induces_forest(g: Graph, subset: Iterable[int]) -> tuple[bool, Optional[tuple[int, ...]]]:
    cyc = find_cycle(g, subset)
    return cyc is None, cyc


def verify(g: Graph, p: Partition) -> Verdict:
    """Check every part of ``p`` against its class on ``g``."""
    missing = [v for v in g.vertices if v not in p]
    if missing or len(p.assignment) != g.n:
        raise PartsMismatch(f"partition does not cover the graph (missing {missing[:5]})")
    for i, spec in enumerate(p.specs):
        members = p.members(i)
        if spec.maxdeg is not None:
            for v in sorted(members):
                d = sum(1 for u in g.neighbors(v) if u in members)
                if d > spec.maxdeg:
                    return Verdict(False, DegreeWitness(i, v, d, spec.maxdeg))
        if spec.acyclic:
            cyc = find_cycle(g, members)
            if cyc is not None:
                return Verdict(False, CycleWitness(i, cyc))
    return Verdict(True)


def v1_neighbors(g: Graph, p: Partition, v: int) -> list[int]:
    return [u for u in g.neighbors(v) if p[u] == 0]


def v1_saturated(g: Graph, p: Partition, v: int) -> bool:
    """True iff the V1 vertex ``v`` already has two V1-neighbours."""
    if p[v] != 0:
        raise WrongPart(f"vertex {v} is not in V1")
    return len(v1_neighbors(g, p, v)) >= 2


class Requirement(enum.Enum):
    NOT_SATURATED = "not-saturated"
    NO_V1_NEIGHBORS = "no-v1-neighbors"


_ARITY = {Requirement.NOT_SATURATED: 3, Requirement.NO_V1_NEIGHBORS: 2}
_LIMIT = {Requirement.NOT_SATURATED: 1, Requirement.NO_V1_NEIGHBORS: 0}


def normalize(g: Graph, p: Partition, requirements: Mapping[int, Requirement]) -> tuple[Partition, list[int]]:
    """Move constrained V1 vertices to V2 until every requirement holds.

    A NOT_SATURATED vertex may keep at most one V1-neighbour, a
    NO_V1_NEIGHBORS vertex none.  A vertex of degree <= 3 (resp. <= 2) that
    violates its requirement has at most one V2-neighbour, so moving it into
    the forest part cannot close a cycle there; leaving V1 never hurts V1.

    Returns the new partition and the moved vertices in move order.
    """
    if p.k != 2 or p.specs[1] != F:
        raise PartitionError("normalize needs a two-part partition whose second part is F")
    for v, req in requirements.items():
        if g.degree(v) > _ARITY[req]:
            raise RequirementUnmeetable(
                f"vertex {v} has degree {g.degree(v)} > {_ARITY[req]} for {req.value}"
            )
    assignment = dict(p.assignment)
    moved: list[int] = []
    changed = True
    while changed:
        changed = False
        for v in sorted(requirements):
            if assignment[v] != 0:
                continue
            inside = sum(1 for u in g.neighbors(v) if assignment[u] == 0)
            if inside > _LIMIT[requirements[v]]:
                assignment[v] = 1
                moved.append(v)
                changed = True
    return Partition(assignment, p.specs), moved


def meets(g: Graph, p: Partition, requirements: Mapping[int, Requirement]) -> bool:
    return all(
        p[v] != 0 or len(v1_neighbors(g, p, v)) <= _LIMIT[req] for v, req in requirements.items()
    )
