"""Concrete test graphs around a 6-vertex on two poor 3-faces, and a sampler
of random valid partitions.

The C3 gadget is drawn with the anchor ``v`` in the centre and every other
vertex on one convex outer cycle::

    v1' v1 v2 v2' (k-1 path vertices) a (k-1) v3' v3 v4 v4' (k-1) b (k-1)

with spokes ``v-v1, v-v2, v-a, v-v3, v-v4, v-b``.  The pendent neighbours
``vi'`` are tied back to ``a`` and ``b`` by paths of length ``k``, so a
sub-partition can connect ``vi'`` to ``v`` inside either part.  Optional
``bridge`` paths of that many edges join ``v1'`` to ``v2'`` (and ``v3'`` to
``v4'``) outside the cycle, so two pendent neighbours of one face can also be
connected to each other.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .graph import Embedding, Graph, build_graph, embedding_from_positions, in_class
from .partition import F2_F, ClassSpec, Partition, verify

V, V1S, PENDS, A, B = 0, (1, 2, 3, 4), (5, 6, 7, 8), 9, 10


@dataclass(frozen=True)
class Gadget:
    graph: Graph
    embedding: Embedding
    anchor: int
    deletion: tuple[int, int, int, int]
    pendent: tuple[int, int, int, int]
    k: int
    bridge: Optional[int]
    # interior vertices of the v1'-v2' and v3'-v4' bridges, in path order
    bridges: tuple[tuple[int, ...], ...] = ()


def c3_gadget(k: int = 4, bridge: Optional[int] = None) -> Gadget:
    """Build the gadget; ``k`` is the length of the tie paths to ``a``/``b``.

    Raises ValueError when the parameters create a 4- or 6-cycle.
    """
    if k < 1:
        raise ValueError("tie paths need at least one edge")
    if bridge is not None and bridge < 2:
        raise ValueError("bridge must have length >= 2")
    nxt = 11
    ring: list[int] = []
    edges: list[tuple[int, int]] = []

    def path(x: int, y: int, length: int) -> list[int]:
        nonlocal nxt
        inner = list(range(nxt, nxt + length - 1))
        nxt += length - 1
        seq = [x, *inner, y]
        edges.extend(zip(seq, seq[1:]))
        return inner

    v1, v2, v3, v4 = V1S
    p1, p2, p3, p4 = PENDS
    edges += [(v1, v2), (v3, v4), (p1, v1), (v2, p2), (p3, v3), (v4, p4)]
    ring += [p1, v1, v2, p2, *path(p2, A, k), A, *path(A, p3, k), p3, v3, v4, p4,
             *path(p4, B, k), B, *path(B, p1, k)]
    edges += [(V, x) for x in (v1, v2, A, v3, v4, B)]

    pos: dict[int, tuple[float, float]] = {V: (0.0, 0.0)}
    angle = {}
    for i, x in enumerate(ring):
        t = 2 * math.pi * i / len(ring)
        angle[x] = t
        pos[x] = (math.cos(t), math.sin(t))
    bridges = []
    if bridge is not None:
        for x, y in ((p1, p2), (p3, p4)):
            inner = path(x, y, bridge)
            bridges.append(tuple(inner))
            # outside the ring, spread over the short arc from x to y
            t0, t1 = angle[x], angle[y]
            for j, z in enumerate(inner):
                t = t0 + (t1 - t0) * (j + 1) / (len(inner) + 1)
                pos[z] = (2 * math.cos(t), 2 * math.sin(t))
    g = build_graph(nxt, edges)
    if not in_class(g):
        raise ValueError(f"gadget k={k} bridge={bridge} has a 4- or 6-cycle")
    e = embedding_from_positions(g, pos)
    return Gadget(g, e, V, V1S, PENDS, k, bridge, tuple(bridges))


def gadget_parameters() -> list[tuple[int, Optional[int]]]:
    """Parameter pairs (k, bridge) with k, bridge <= 8 that stay in class."""
    out = []
    for k in range(2, 9):
        for bridge in (None, *range(2, 9)):
            try:
                c3_gadget(k, bridge)
            except ValueError:
                continue
            out.append((k, bridge))
    return out


def random_partition(
    g: Graph,
    rng: random.Random,
    fixed: Optional[Mapping[int, int]] = None,
    specs: Sequence[ClassSpec] = F2_F,
    attempts: int = 200,
) -> Optional[Partition]:
    """Greedy random valid partition extending ``fixed``, or None.

    Vertices are taken in random order and placed in a random part that keeps
    the partial assignment valid.
    """
    fixed = dict(fixed or {})
    specs = tuple(specs)
    if not verify(g.induced(fixed), Partition(fixed, specs)):
        return None
    free = [v for v in g.vertices if v not in fixed]
    for _ in range(attempts):
        assignment = dict(fixed)
        rng.shuffle(free)
        ok = True
        for v in free:
            parts = list(range(len(specs)))
            rng.shuffle(parts)
            for part in parts:
                assignment[v] = part
                if verify(g.induced(assignment), Partition(assignment, specs)):
                    break
            else:
                ok = False
                break
        if ok:
            return Partition(assignment, specs)
    return None
