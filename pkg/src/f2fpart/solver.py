"""Exhaustive backtracking search for partitions under arbitrary class lists."""

from __future__ import annotations

import enum
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .dsu import RollbackDSU
from .graph import Graph
from .partition import ClassSpec, Partition, verify


class Outcome(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass
class SolveResult:
    outcome: Outcome
    partition: Optional[Partition] = None
    nodes: int = 0
    millis: float = 0.0

    @property
    def feasible(self) -> bool:
        return self.outcome is Outcome.FEASIBLE

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "partition": None if self.partition is None else
            {str(v): p for v, p in self.partition.assignment.items()},
            "nodes": self.nodes,
            "millis": round(self.millis, 3),
        }


class _BudgetExceeded(Exception):
    pass


@dataclass
class SearchState:
    """Partial assignment plus incremental per-part bookkeeping.

    Vertices are addressed by their position in ``order``; ``part[i] == -1``
    means unassigned.  ``inner_deg[i]`` is the number of assigned neighbours
    of ``i`` sharing its part.
    """

    graph: Graph
    specs: tuple[ClassSpec, ...]
    order: list[int]
    part: list[int] = field(init=False)
    inner_deg: list[int] = field(init=False)
    nbrs: list[list[int]] = field(init=False)
    forests: list[Optional[RollbackDSU]] = field(init=False)

    def __post_init__(self):
        n = len(self.order)
        index = {v: i for i, v in enumerate(self.order)}
        self.nbrs = [[index[u] for u in self.graph.neighbors(v) if u in index] for v in self.order]
        self.part = [-1] * n
        self.inner_deg = [0] * n
        self.forests = [
            RollbackDSU(n) if spec.acyclic and spec.maxdeg != 0 else None for spec in self.specs
        ]

    def legal(self, i: int, p: int) -> bool:
        spec = self.specs[p]
        same = [j for j in self.nbrs[i] if self.part[j] == p]
        cap = spec.maxdeg
        if cap is not None:
            if len(same) > cap:
                return False
            for j in same:
                if self.inner_deg[j] >= cap:
                    return False
        dsu = self.forests[p]
        if dsu is not None and len(same) > 1:
            roots = {dsu.find(j) for j in same}
            if len(roots) < len(same):
                return False
        return True

    def place(self, i: int, p: int) -> int:
        dsu = self.forests[p]
        mark = dsu.checkpoint() if dsu is not None else 0
        self.part[i] = p
        for j in self.nbrs[i]:
            if self.part[j] == p:
                self.inner_deg[j] += 1
                self.inner_deg[i] += 1
                if dsu is not None:
                    dsu.union(i, j)
        return mark

    def unplace(self, i: int, mark: int) -> None:
        p = self.part[i]
        for j in self.nbrs[i]:
            if self.part[j] == p and j != i:
                self.inner_deg[j] -= 1
        self.inner_deg[i] = 0
        self.part[i] = -1
        dsu = self.forests[p]
        if dsu is not None:
            dsu.rollback(mark)

    def partial(self) -> Partition:
        return Partition(
            {self.order[i]: p for i, p in enumerate(self.part) if p >= 0}, self.specs
        )


def search_order(g: Graph, vertices: Sequence[int], seed: Optional[int] = None) -> list[int]:
    """Descending degree, ties by id (or by a seeded shuffle)."""
    verts = list(vertices)
    if seed is None:
        return sorted(verts, key=lambda v: (-g.degree(v), v))
    rng = random.Random(seed)
    tie = {v: rng.random() for v in verts}
    return sorted(verts, key=lambda v: (-g.degree(v), tie[v]))


def _check_state(state: SearchState) -> None:
    p = state.partial()
    sub = state.graph.induced(p.assignment)
    if not verify(sub, p):
        raise AssertionError("incremental legality accepted an invalid partial assignment")
    for i, part in enumerate(state.part):
        if part < 0:
            continue
        recomputed = sum(1 for j in state.nbrs[i] if state.part[j] == part)
        if recomputed != state.inner_deg[i]:
            raise AssertionError(f"degree counter drift at {state.order[i]}")


def _search(
    state: SearchState,
    budget: Optional[int],
    counter: list[int],
    on_solution: Callable[[SearchState], bool],
    self_check: bool,
    start: int = 0,
) -> bool:
    """Depth-first search from position ``start``.

    ``on_solution`` returns True to stop the search.  Returns True if stopped.
    """
    n = len(state.order)
    k = len(state.specs)

    def rec(i: int) -> bool:
        if i == n:
            return on_solution(state)
        for p in range(k):
            if not state.legal(i, p):
                continue
            counter[0] += 1
            if budget is not None and counter[0] > budget:
                raise _BudgetExceeded
            mark = state.place(i, p)
            if self_check:
                _check_state(state)
            stop = rec(i + 1)
            state.unplace(i, mark)
            if stop:
                return True
        return False

    limit = sys.getrecursionlimit()
    if n + 100 > limit:
        sys.setrecursionlimit(n + 1000)
    return rec(start)


def _solve_component(
    g: Graph,
    order: list[int],
    specs: tuple[ClassSpec, ...],
    budget: Optional[int],
    self_check: bool,
    root_part: Optional[int] = None,
) -> tuple[Optional[dict[int, int]], int, bool]:
    state = SearchState(g, specs, order)
    counter = [0]
    found: dict[int, int] = {}

    def keep(s: SearchState) -> bool:
        found.update({s.order[i]: p for i, p in enumerate(s.part)})
        return True

    try:
        if root_part is None:
            _search(state, budget, counter, keep, self_check)
        elif state.legal(0, root_part):
            counter[0] += 1
            state.place(0, root_part)
            _search(state, budget, counter, keep, self_check, start=1)
    except _BudgetExceeded:
        return None, counter[0], True
    return (found or None), counter[0], False


def _branch_worker(args):
    return _solve_component(*args)


def solve(
    g: Graph,
    specs: Sequence[ClassSpec],
    budget: Optional[int] = None,
    *,
    order: Optional[Sequence[int]] = None,
    seed: Optional[int] = None,
    workers: int = 1,
    self_check: bool = False,
) -> SolveResult:
    """Find a partition of ``g`` into parts meeting ``specs``, or prove none exists.

    Components are solved independently.  ``budget`` caps the number of
    search nodes (legal placements tried) across the whole run.  With
    ``workers > 1`` each component's first vertex is split over its part
    choices in separate processes; the lowest-index feasible branch wins, so
    the answer does not depend on scheduling (each branch then gets the full
    budget).  ``self_check`` re-verifies the partial assignment from scratch
    at every node.
    """
    specs = tuple(specs)
    if not specs:
        raise ValueError("need at least one class spec")
    t0 = time.perf_counter()
    if order is not None:
        if sorted(order) != list(g.vertices):
            raise ValueError("order must be a permutation of the vertices")
        rank = {v: i for i, v in enumerate(order)}
    else:
        rank = {v: i for i, v in enumerate(search_order(g, g.vertices, seed))}
    assignment: dict[int, int] = {}
    nodes = 0

    def done(outcome: Outcome, part: Optional[Partition] = None) -> SolveResult:
        return SolveResult(outcome, part, nodes, (time.perf_counter() - t0) * 1000)

    for comp in g.components():
        comp_order = sorted(comp, key=rank.__getitem__)
        sub = g.induced(comp) if len(comp) < g.n else g
        remaining = None if budget is None else budget - nodes
        if workers > 1 and len(comp) > 1:
            jobs = [(sub, comp_order, specs, remaining, self_check, p) for p in range(len(specs))]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_branch_worker, jobs))
            found, over = None, False
            for res, used, exceeded in results:
                nodes += used
                if res is not None:
                    found = res
                    break
                over = over or exceeded
            if found is None and over:
                return done(Outcome.BUDGET_EXCEEDED)
        else:
            found, used, over = _solve_component(sub, comp_order, specs, remaining, self_check)
            nodes += used
            if over:
                return done(Outcome.BUDGET_EXCEEDED)
        if found is None:
            return done(Outcome.INFEASIBLE)
        assignment.update(found)
    part = Partition(assignment, specs)
    if not verify(g, part):
        raise AssertionError("solver produced a partition that fails verification")
    return done(Outcome.FEASIBLE, part)


def enumerate_all(g: Graph, specs: Sequence[ClassSpec], cap: Optional[int] = None) -> list[Partition]:
    """All valid partitions (up to ``cap``), lexicographic in the vector by vertex id."""
    specs = tuple(specs)
    state = SearchState(g, specs, list(g.vertices))
    out: list[Partition] = []

    def collect(s: SearchState) -> bool:
        out.append(Partition(dict(zip(s.order, s.part)), specs))
        return cap is not None and len(out) >= cap

    if cap is None or cap > 0:
        _search(state, None, [0], collect, False)
    return out
