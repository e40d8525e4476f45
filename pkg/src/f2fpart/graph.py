"""Simple graphs, rotation-system embeddings and face tracing.

Vertex ids are arbitrary non-negative integers.  ``build_graph`` produces the
contiguous ids ``0..n-1``; induced subgraphs keep the ids of the parent graph
so that partitions computed on a subgraph can be lifted back without any
relabelling.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence


class GraphError(ValueError):
    """Base class for malformed graph or embedding input."""


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class NotAPermutation(GraphError):
    pass


class Disconnected(GraphError):
    pass


class NotPlanarEmbedding(GraphError):
    pass


class InvalidFaceId(GraphError):
    pass


Edge = tuple[int, int]


class Graph:
    """Immutable simple undirected graph.

    ``adj`` maps every vertex to its sorted tuple of neighbours.
    """

    __slots__ = ("_adj", "_nbrsets", "_vertices")

    def __init__(self, adj: Mapping[int, Iterable[int]]):
        self._adj = {v: tuple(sorted(nb)) for v, nb in sorted(adj.items())}
        self._nbrsets = {v: frozenset(nb) for v, nb in self._adj.items()}
        self._vertices = tuple(self._adj)
        for v, nb in self._adj.items():
            if v in self._nbrsets[v]:
                raise SelfLoop(f"self-loop at {v}")
            if len(nb) != len(self._nbrsets[v]):
                raise DuplicateEdge(f"parallel edge at {v}")
            for u in nb:
                if u not in self._nbrsets or v not in self._nbrsets[u]:
                    raise GraphError(f"adjacency not symmetric on edge {v}-{u}")

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def adj(self) -> Mapping[int, tuple[int, ...]]:
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._nbrsets and v in self._nbrsets[u]

    def edges(self) -> Iterator[Edge]:
        for v, nb in self._adj.items():
            for u in nb:
                if v < u:
                    yield (v, u)

    def max_degree(self) -> int:
        return max((len(nb) for nb in self._adj.values()), default=0)

    def min_degree(self) -> int:
        return min((len(nb) for nb in self._adj.values()), default=0)

    def induced(self, keep: Iterable[int]) -> "Graph":
        keep = set(keep)
        return Graph({v: [u for u in self._adj[v] if u in keep] for v in keep})

    def without_edge(self, u: int, v: int) -> "Graph":
        adj = dict(self._adj)
        adj[u] = tuple(w for w in adj[u] if w != v)
        adj[v] = tuple(w for w in adj[v] if w != u)
        return Graph(adj)

    def components(self) -> list[tuple[int, ...]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen: set[int] = set()
        comps = []
        for s in self._vertices:
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(tuple(sorted(comp)))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def relabeled(self) -> tuple["Graph", dict[int, int]]:
        """Copy with ids ``0..n-1`` in sorted order, plus the old->new map."""
        index = {v: i for i, v in enumerate(self._vertices)}
        return Graph({index[v]: [index[u] for u in nb] for v, nb in self._adj.items()}), index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(tuple(self._adj.items()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a simple graph on vertices ``0..n-1``.

    Raises:
        VertexOutOfRange: an endpoint is outside ``[0, n)``.
        SelfLoop: an edge joins a vertex to itself.
        DuplicateEdge: the same unordered pair appears twice.
    """
    if n < 0:
        raise VertexOutOfRange(f"negative vertex count {n}")
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for e in edges:
        u, v = e
        for x in (u, v):
            if not 0 <= x < n:
                raise VertexOutOfRange(f"vertex {x} not in [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        if v in adj[u]:
            raise DuplicateEdge(f"duplicate edge {min(u, v)}-{max(u, v)}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(adj)


@dataclass(frozen=True)
class Face:
    """A face with its boundary walk.

    ``walk`` is the cyclic sequence of directed edges; ``vertices`` lists the
    tail of each walk edge, so a cut vertex appears once per visit.  The face
    of an isolated vertex has an empty walk and ``vertices == (v,)``.
    """

    id: int
    walk: tuple[Edge, ...]
    vertices: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.walk)

    def undirected_edges(self) -> frozenset[Edge]:
        return frozenset((min(u, v), max(u, v)) for u, v in self.walk)

    def is_simple(self) -> bool:
        """True when the boundary walk visits no vertex twice (a cycle)."""
        return len(set(self.vertices)) == len(self.vertices)

    def multiplicity(self, v: int) -> int:
        if not self.walk:
            return 0
        return self.vertices.count(v)


class Embedding:
    """A rotation system over a graph together with its traced faces.

    Faces are traced per connected component (each component is treated as
    embedded on its own sphere), so every component satisfies Euler's formula
    ``n_c - m_c + f_c = 2`` on its own.
    """

    def __init__(self, graph: Graph, rotation: Mapping[int, Sequence[int]]):
        self.graph = graph
        self.rotation: dict[int, tuple[int, ...]] = {}
        for v in graph.vertices:
            rot = tuple(rotation.get(v, ()))
            if sorted(rot) != list(graph.neighbors(v)):
                raise NotAPermutation(f"rotation at {v} is not a permutation of its neighbours")
            self.rotation[v] = rot
        extra = set(rotation) - set(graph.vertices)
        if extra:
            raise NotAPermutation(f"rotation given for unknown vertices {sorted(extra)}")
        self._next = {}
        for v, rot in self.rotation.items():
            k = len(rot)
            for i, u in enumerate(rot):
                self._next[(v, u)] = rot[(i + 1) % k]
        self.faces = self._trace()
        self.components = graph.components()
        self._check_euler()
        self._incidence: dict[int, list[int]] = {v: [] for v in graph.vertices}
        for f in self.faces:
            for v in f.vertices:
                self._incidence[v].append(f.id)

    def _trace(self) -> tuple[Face, ...]:
        faces = []
        self.edge_face: dict[Edge, int] = {}
        for start in sorted((v, u) for v in self.graph.vertices for u in self.graph.neighbors(v)):
            if start in self.edge_face:
                continue
            fid = len(faces)
            walk = []
            e = start
            while e not in self.edge_face:
                self.edge_face[e] = fid
                walk.append(e)
                u, v = e
                e = (v, self._next[(v, u)])
            if e != start:
                raise NotPlanarEmbedding("face tracing did not close")
            faces.append(Face(fid, tuple(walk), tuple(u for u, _ in walk)))
        for v in self.graph.vertices:
            if not self.graph.neighbors(v):
                faces.append(Face(len(faces), (), (v,)))
        return tuple(faces)

    def _check_euler(self) -> None:
        comp_of = {}
        for i, comp in enumerate(self.components):
            for v in comp:
                comp_of[v] = i
        nf = [0] * len(self.components)
        for f in self.faces:
            nf[comp_of[f.vertices[0]]] += 1
        for i, comp in enumerate(self.components):
            ne = sum(self.graph.degree(v) for v in comp) // 2
            chi = len(comp) - ne + nf[i]
            if chi != 2:
                raise NotPlanarEmbedding(
                    f"component at {comp[0]}: n - m + f = {len(comp)} - {ne} + {nf[i]} = {chi} != 2"
                )

    def face(self, fid: int) -> Face:
        if not 0 <= fid < len(self.faces):
            raise InvalidFaceId(f"no face {fid}")
        return self.faces[fid]

    def faces_at(self, v: int) -> list[int]:
        """Face ids incident to ``v``, one entry per angle (walk multiplicity)."""
        return self._incidence[v]

    def left_face(self, u: int, v: int) -> Face:
        return self.faces[self.edge_face[(u, v)]]

    def split(self) -> list["Embedding"]:
        """One connected embedding per component."""
        if len(self.components) == 1:
            return [self]
        return [
            Embedding(self.graph.induced(comp), {v: self.rotation[v] for v in comp})
            for comp in self.components
        ]

    def __repr__(self) -> str:
        return f"Embedding(n={self.graph.n}, m={self.graph.m}, faces={len(self.faces)})"


def build_embedding(g: Graph, rotation: Mapping[int, Sequence[int]]) -> Embedding:
    """Trace faces of a connected graph under ``rotation`` and certify planarity.

    The successor of the directed edge ``(u, v)`` is ``(v, w)`` where ``w``
    follows ``u`` in the cyclic rotation at ``v``.

    Raises:
        NotAPermutation: a rotation is not a permutation of the neighbours.
        Disconnected: ``g`` has more than one component.
        NotPlanarEmbedding: the traced faces fail Euler's formula.
    """
    if not g.is_connected():
        raise Disconnected(f"graph has {len(g.components())} components")
    return Embedding(g, rotation)


def delete_vertices(g: Graph, e: Embedding, removed: Iterable[int]) -> tuple[Graph, Embedding]:
    """Induced subgraph on ``V - removed`` with the restricted rotation.

    If the result is disconnected the returned embedding carries one traced
    face set per component; ``Embedding.split`` separates them.
    """
    removed = set(removed)
    missing = removed - set(g.vertices)
    if missing:
        raise VertexOutOfRange(f"vertices {sorted(missing)} not in graph")
    if not removed:
        return g, e
    sub = g.induced(v for v in g.vertices if v not in removed)
    rot = {v: [u for u in e.rotation[v] if u not in removed] for v in sub.vertices}
    return sub, Embedding(sub, rot)


def embedding_from_positions(g: Graph, pos: Mapping[int, tuple[float, float]]) -> Embedding:
    """Rotation system read off a straight-line drawing (neighbours by angle)."""
    rot = {}
    for v in g.vertices:
        x0, y0 = pos[v]
        rot[v] = sorted(g.neighbors(v), key=lambda u: math.atan2(pos[u][1] - y0, pos[u][0] - x0))
    return build_embedding(g, rot)


# --- short cycles -----------------------------------------------------------


def _cycles_through_min(g: Graph, max_len: int, exact: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield each cycle of length <= max_len once, in canonical form.

    Canonical form starts at the smallest vertex and walks towards the smaller
    of its two cycle neighbours.
    """
    adj = g.adj
    for s in g.vertices:
        path = [s]
        on_path = {s}

        def extend() -> Iterator[tuple[int, ...]]:
            last = path[-1]
            k = len(path)
            for w in adj[last]:
                if w == s and k >= 3 and path[1] < last and (exact is None or k == exact):
                    yield tuple(path)
                elif w > s and w not in on_path and k < max_len:
                    path.append(w)
                    on_path.add(w)
                    yield from extend()
                    path.pop()
                    on_path.discard(w)

        yield from extend()


def short_cycles(g: Graph, max_len: int) -> dict[int, bool]:
    """For each length 3..max_len, whether ``g`` has a cycle of exactly that length."""
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    found = {k: False for k in range(3, max_len + 1)}
    remaining = max_len - 2
    for cyc in _cycles_through_min(g, max_len):
        if not found[len(cyc)]:
            found[len(cyc)] = True
            remaining -= 1
            if remaining == 0:
                break
    return found


def has_cycle_of_length(g: Graph, length: int) -> bool:
    return next(_cycles_through_min(g, length, exact=length), None) is not None


def cycles_of_length(g: Graph, length: int) -> list[tuple[int, ...]]:
    """All cycles of exactly ``length`` in canonical form, sorted."""
    return sorted(_cycles_through_min(g, length, exact=length))


def in_class(g: Graph) -> bool:
    """True iff ``g`` has neither a 4-cycle nor a 6-cycle."""
    return not has_cycle_of_length(g, 4) and not has_cycle_of_length(g, 6)


# --- face adjacency ---------------------------------------------------------


def faces_adjacent(e: Embedding, f1: int, f2: int) -> bool:
    """True iff the two faces share at least one undirected edge."""
    a, b = e.face(f1), e.face(f2)
    if f1 == f2:
        raise InvalidFaceId("faces_adjacent needs two distinct faces")
    return not a.undirected_edges().isdisjoint(b.undirected_edges())


def adjacent_faces(e: Embedding, fid: int) -> set[int]:
    """Other faces sharing an edge with ``fid``."""
    out = set()
    for u, v in e.face(fid).walk:
        other = e.edge_face[(v, u)]
        if other != fid:
            out.add(other)
    return out


@dataclass(frozen=True)
class FaceViolation:
    kind: str  # "4-face" or "3-face next to face of degree <= 6"
    faces: tuple[int, ...]
    # True when a face involved has a non-simple boundary walk (cut vertex or
    # bridge), i.e. the verdict depends on the walk-multiplicity convention.
    convention_dependent: bool


def check_face_structure(g: Graph, e: Embedding) -> list[FaceViolation]:
    """No 4-face, and no 3-face sharing an edge with a face of degree <= 6."""
    out = []
    for f in e.faces:
        if f.degree == 4:
            out.append(FaceViolation("4-face", (f.id,), not f.is_simple()))
    for f in e.faces:
        if f.degree != 3:
            continue
        for other in sorted(adjacent_faces(e, f.id)):
            h = e.faces[other]
            if h.degree <= 6:
                out.append(
                    FaceViolation(
                        "3-face next to face of degree <= 6",
                        (f.id, h.id),
                        not (f.is_simple() and h.is_simple()),
                    )
                )
    return out
