"""Generators for embedded planar graphs without 4- and 6-cycles."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .graph import (
    Embedding,
    Graph,
    build_embedding,
    build_graph,
    cycles_of_length,
    embedding_from_positions,
    in_class,
)


class BadParameter(ValueError):
    pass


@dataclass(frozen=True)
class Family:
    """Corpus family and its parameters.

    ``name`` is one of ``cycle``, ``tree``, ``dodecahedron``,
    ``double_subdivision`` (with ``base`` = ``K4`` or ``C<n>``) and
    ``random_class``.
    """

    name: str
    n: Optional[int] = None
    seed: Optional[int] = None
    base: Optional[str] = None

    @property
    def label(self) -> str:
        parts = [self.name]
        if self.base is not None:
            parts.append(self.base)
        if self.n is not None:
            parts.append(f"n{self.n}")
        if self.seed is not None:
            parts.append(f"s{self.seed}")
        return "-".join(parts)


def cycle(n: int) -> tuple[Graph, Embedding]:
    if n < 3 or n in (4, 6):
        raise BadParameter(f"cycle length {n} is not allowed")
    g = build_graph(n, [(i, (i + 1) % n) for i in range(n)])
    return g, build_embedding(g, {v: list(g.neighbors(v)) for v in g.vertices})


def complete4() -> tuple[Graph, Embedding]:
    g = build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    return g, build_embedding(g, {0: [1, 2, 3], 1: [0, 3, 2], 2: [0, 1, 3], 3: [0, 2, 1]})


def random_tree(n: int, seed: int) -> tuple[Graph, Embedding]:
    if n < 1:
        raise BadParameter("a tree needs at least one vertex")
    rng = random.Random(seed)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    g = build_graph(n, edges)
    rot = {}
    for v in g.vertices:
        nb = list(g.neighbors(v))
        rng.shuffle(nb)
        rot[v] = nb
    return g, build_embedding(g, rot)


def dodecahedron() -> tuple[Graph, Embedding]:
    """Schlegel drawing: outer pentagon, middle 10-cycle, inner pentagon."""
    outer = list(range(5))
    middle = list(range(5, 15))
    inner = list(range(15, 20))
    edges = []
    for k in range(5):
        edges.append((outer[k], outer[(k + 1) % 5]))
        edges.append((outer[k], middle[2 * k]))
        edges.append((middle[2 * k + 1], inner[k]))
        edges.append((inner[k], inner[(k + 1) % 5]))
    for j in range(10):
        edges.append((middle[j], middle[(j + 1) % 10]))
    g = build_graph(20, edges)
    pos = {}
    for k in range(5):
        a = 2 * math.pi * k / 5
        pos[outer[k]] = (3 * math.cos(a), 3 * math.sin(a))
        b = a + math.pi / 5
        pos[inner[k]] = (math.cos(b), math.sin(b))
    for j in range(10):
        a = 2 * math.pi * j / 10
        pos[middle[j]] = (2 * math.cos(a), 2 * math.sin(a))
    return g, embedding_from_positions(g, pos)


def double_subdivision(g: Graph, e: Embedding) -> tuple[Graph, Embedding]:
    """Replace every edge ``u-v`` by a path ``u-a-b-v``; new ids follow the old ones."""
    nxt = max(g.vertices, default=-1) + 1
    near: dict[tuple[int, int], int] = {}
    edges = []
    for u, v in g.edges():
        a, b = nxt, nxt + 1
        nxt += 2
        near[(u, v)], near[(v, u)] = a, b
        edges += [(u, a), (a, b), (b, v)]
    adj: dict[int, list[int]] = {v: [] for v in g.vertices}
    for x in range(max(g.vertices, default=-1) + 1, nxt):
        adj[x] = []
    for x, y in edges:
        adj[x].append(y)
        adj[y].append(x)
    h = Graph(adj)
    rot = {v: [near[(v, u)] for u in e.rotation[v]] for v in g.vertices}
    for (u, v), a in near.items():
        rot[a] = [u, near[(v, u)]]
    return h, Embedding(h, rot)


def _insert_vertex(rot: dict[int, list[int]], face_walk: list[tuple[int, int]],
                   corners: list[int], z: int) -> None:
    """Add ``z`` inside the face, joined to the walk positions ``corners``.

    At a corner entered by ``u -> v`` the new edge goes right after ``u`` in
    the rotation at ``v``; the rotation at ``z`` lists the corners in reverse
    walk order so that every new face closes up.
    """
    for i in corners:
        u, v = face_walk[i]
        r = rot[v]
        r.insert(r.index(u) + 1, z)
    rot[z] = [face_walk[i][1] for i in sorted(corners, reverse=True)]


def _traced(rot: dict[int, list[int]]) -> Embedding:
    return build_embedding(Graph(rot), rot)


def random_planar(n: int, seed: int) -> tuple[Graph, Embedding]:
    """Grow a triangle by dropping each new vertex into a random face and
    joining it to 2 or 3 distinct vertices of that face."""
    if n < 3:
        raise BadParameter("random planar graphs start from a triangle")
    rng = random.Random(seed)
    rot: dict[int, list[int]] = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
    e = _traced(rot)
    for z in range(3, n):
        face = e.faces[rng.randrange(len(e.faces))]
        walk = list(face.walk)
        # walk position i is the corner at walk[i][1]
        first: dict[int, int] = {}
        for i, (_, v) in enumerate(walk):
            first.setdefault(v, i)
        k = min(len(first), rng.choice((2, 3)))
        corners = rng.sample(sorted(first.values()), k)
        _insert_vertex(rot, walk, corners, z)
        e = _traced(rot)
    return e.graph, e


def offending_edge(g: Graph) -> Optional[tuple[int, int]]:
    """Smallest edge of the lexicographically first shortest 4- or 6-cycle."""
    for length in (4, 6):
        cycles = cycles_of_length(g, length)
        if cycles:
            cyc = cycles[0]
            edges = [tuple(sorted((cyc[i], cyc[(i + 1) % length]))) for i in range(length)]
            return min(edges)
    return None


def random_class(n: int, seed: int) -> tuple[Graph, Embedding]:
    """Random embedded planar graph with every 4- and 6-cycle broken by edge deletion."""
    g, e = random_planar(n, seed)
    rot = {v: list(r) for v, r in e.rotation.items()}
    while True:
        edge = offending_edge(g)
        if edge is None:
            break
        u, v = edge
        rot[u].remove(v)
        rot[v].remove(u)
        g = g.without_edge(u, v)
    e = build_embedding(g, rot)
    return g, e


def gen(family: Family) -> tuple[Graph, Embedding]:
    name = family.name
    if name == "cycle":
        g, e = cycle(_need(family.n, "n"))
    elif name == "tree":
        g, e = random_tree(_need(family.n, "n"), family.seed or 0)
    elif name == "dodecahedron":
        g, e = dodecahedron()
    elif name == "double_subdivision":
        base = family.base or "K4"
        if base == "K4":
            g, e = double_subdivision(*complete4())
        elif base.startswith("C") and base[1:].isdigit():
            g, e = double_subdivision(*cycle(int(base[1:])))
        else:
            raise BadParameter(f"unknown base graph {base!r}")
    elif name == "random_class":
        g, e = random_class(_need(family.n, "n"), family.seed or 0)
    else:
        raise BadParameter(f"unknown family {name!r}")
    if not in_class(g):
        raise AssertionError(f"{family.label} produced a 4- or 6-cycle")
    return g, e


def _need(x: Optional[int], what: str) -> int:
    if x is None:
        raise BadParameter(f"family parameter {what} is required")
    return x


def default_corpus(random_count: int = 470, max_n: int = 18) -> Iterator[Family]:
    """The acceptance corpus: cycles, trees, fixed graphs and random members."""
    for n in range(3, 20, 2):
        yield Family("cycle", n=n)
    for s in range(20):
        yield Family("tree", n=1 + s % max_n, seed=s)
    yield Family("dodecahedron")
    yield Family("double_subdivision", base="K4")
    yield Family("double_subdivision", base="C3")
    for s in range(random_count):
        yield Family("random_class", n=5 + s % (max_n - 4), seed=s)
