"""Local structure on embedded graphs: pendent faces, terrible 3-vertices,
poor 3-faces, incidence counters, counting bounds and reducible configurations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .graph import Embedding, Face, Graph, in_class


class StructureError(ValueError):
    pass


class NotA3Vertex(StructureError):
    pass


class WrongFaceDegree(StructureError):
    pass


class NotInClass(StructureError):
    pass


def pendent_relation(g: Graph, e: Embedding, v: int) -> dict[int, list[int]]:
    """Pendent faces of ``v`` mapped to the 3-vertices of that face adjacent to ``v``.

    ``f`` is pendent for ``v`` when ``v`` is not on the boundary of ``f`` but
    some neighbour ``u`` of ``v`` with degree 3 is; ``v`` is then the pendent
    neighbour of ``u`` with respect to ``f``.
    """
    out: dict[int, list[int]] = {}
    for u in g.neighbors(v):
        if g.degree(u) != 3:
            continue
        for fid in dict.fromkeys(e.faces_at(u)):
            if v in e.faces[fid].vertices:
                continue
            out.setdefault(fid, []).append(u)
    return dict(sorted(out.items()))


def off_face_neighbors(g: Graph, face: Face, u: int) -> list[int]:
    on = set(face.vertices)
    return [w for w in g.neighbors(u) if w not in on]


def is_terrible(g: Graph, e: Embedding, u: int, fid: int) -> bool:
    """Whether the 3-vertex ``u`` on the 3- or 5-face ``fid`` has a pendent 4^- neighbour."""
    face = e.face(fid)
    if g.degree(u) != 3:
        raise NotA3Vertex(f"vertex {u} has degree {g.degree(u)}")
    if face.degree not in (3, 5):
        raise WrongFaceDegree(f"face {fid} has degree {face.degree}")
    if u not in face.vertices:
        raise StructureError(f"vertex {u} is not on face {fid}")
    return any(g.degree(w) <= 4 for w in off_face_neighbors(g, face, u))


def terrible_vertices(g: Graph, e: Embedding, fid: int) -> list[int]:
    face = e.face(fid)
    return [
        u for u in dict.fromkeys(face.vertices)
        if g.degree(u) == 3 and is_terrible(g, e, u, fid)
    ]


def is_poor_3face(g: Graph, e: Embedding, fid: int) -> bool:
    """A 3-face with at least two terrible 3-vertices."""
    if e.face(fid).degree != 3:
        raise WrongFaceDegree(f"face {fid} has degree {e.face(fid).degree}")
    return len(terrible_vertices(g, e, fid)) >= 2


@dataclass(frozen=True)
class Counts:
    n3: int = 0
    n5: int = 0
    m3: int = 0
    m5: int = 0


def vertex_counts(g: Graph, e: Embedding, v: int) -> Counts:
    degs = [e.faces[f].degree for f in e.faces_at(v)]
    pend = [e.faces[f].degree for f in pendent_relation(g, e, v)]
    return Counts(degs.count(3), degs.count(5), pend.count(3), pend.count(5))


def incidence_profile(g: Graph, e: Embedding) -> dict[int, Counts]:
    """n3, n5 (with walk multiplicity) and m3, m5 (distinct faces) for every vertex."""
    return {v: vertex_counts(g, e, v) for v in g.vertices}


# --- counting bounds ----------------------------------------------------------


@dataclass(frozen=True)
class BoundCheck:
    bound: str
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs


def _n5_cap(k: int, s: int, middle: int) -> int:
    if s == k:
        return 0
    if s == 0:
        return middle
    return k - s - 1


# bounds asserted on in-class graphs; the rest are reported only
ASSERTED_BOUNDS = ("i", "ii", "iii", "iv")
REPORTED_BOUNDS = ("ii_alt", "iv_printed")


def check_counting_bounds(
    g: Graph, e: Embedding, v: int, counts: Optional[Counts] = None, *, assume_in_class: bool = False
) -> dict[str, BoundCheck]:
    """Evaluate the per-vertex counting bounds on n3, n5, m3, m5.

    ``ii`` is the piecewise bound on n5 and ``ii_alt`` the same with ``k - 1``
    in the ``m3 + 2 n3 = 0`` branch.  ``iv`` bounds m5 by ``k - m3 - 2 n3``;
    ``iv_printed`` is the ``k - 3 m3`` form.
    """
    if not assume_in_class and not in_class(g):
        raise NotInClass("graph has a 4- or 6-cycle")
    c = counts or vertex_counts(g, e, v)
    k = g.degree(v)
    s = c.m3 + 2 * c.n3
    return {
        "i": BoundCheck("i", c.n3, k // 2),
        "ii": BoundCheck("ii", c.n5, _n5_cap(k, s, k)),
        "ii_alt": BoundCheck("ii_alt", c.n5, _n5_cap(k, s, k - 1)),
        "iii": BoundCheck("iii", c.m3, k - 2 * c.n3),
        "iv": BoundCheck("iv", c.m5, k - c.m3 - 2 * c.n3),
        "iv_printed": BoundCheck("iv_printed", c.m5, k - c.m3 - 2 * c.m3),
    }


# --- reducible configurations -------------------------------------------------


class Kind(enum.Enum):
    C0 = "C0"  # vertex of degree <= 2
    C1 = "C1"  # 3-vertex whose neighbours all have degree <= 4
    C2 = "C2"  # 5-vertex on a poor 3-face
    C3 = "C3"  # 6-vertex on two poor 3-faces


@dataclass(frozen=True)
class Configuration:
    """A reducible configuration anchored at ``anchor``.

    For C2/C3, ``deletion`` lists the terrible 3-vertices face by face
    (``v1, v2`` then ``v3, v4``) and ``pendent[i]`` is the off-face neighbour
    of ``deletion[i]``.
    """

    kind: Kind
    anchor: int
    deletion: tuple[int, ...]
    pendent: tuple[int, ...] = ()
    faces: tuple[int, ...] = field(default=(), compare=False)

    def vertices(self) -> set[int]:
        return {self.anchor, *self.deletion, *self.pendent}

    def distinct(self) -> bool:
        """The pendent neighbours are pairwise distinct and avoid anchor and deletion set."""
        if self.kind in (Kind.C0, Kind.C1):
            return True
        allv = [self.anchor, *self.deletion, *self.pendent]
        return len(set(allv)) == len(allv)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "anchor": self.anchor,
            "deletion": list(self.deletion),
            "pendent": list(self.pendent),
        }


def _poor_face_triples(g: Graph, e: Embedding, v: int) -> Iterator[tuple[int, tuple[int, int], tuple[int, int]]]:
    """(face id, (v1, v2), (v1', v2')) for each poor 3-face at ``v`` whose
    other two vertices are both terrible."""
    for fid in dict.fromkeys(e.faces_at(v)):
        face = e.faces[fid]
        if face.degree != 3 or not is_poor_3face(g, e, fid):
            continue
        i = face.vertices.index(v)
        a, b = face.vertices[(i + 1) % 3], face.vertices[(i + 2) % 3]
        bad = set(terrible_vertices(g, e, fid))
        if a not in bad or b not in bad:
            continue
        pa = off_face_neighbors(g, face, a)
        pb = off_face_neighbors(g, face, b)
        yield fid, (a, b), (pa[0], pb[0])


def configurations(g: Graph, e: Embedding) -> Iterator[Configuration]:
    """All configurations, kinds in order C0..C3, anchors ascending within a kind."""
    verts = g.vertices
    for v in verts:
        if g.degree(v) <= 2:
            yield Configuration(Kind.C0, v, (v,))
    for v in verts:
        if g.degree(v) == 3 and all(g.degree(u) <= 4 for u in g.neighbors(v)):
            yield Configuration(Kind.C1, v, (v,))
    for v in verts:
        if g.degree(v) == 5:
            for fid, (a, b), (pa, pb) in _poor_face_triples(g, e, v):
                yield Configuration(Kind.C2, v, (a, b), (pa, pb), (fid,))
    for v in verts:
        if g.degree(v) == 6:
            poor = list(_poor_face_triples(g, e, v))
            if len(poor) >= 2:
                (f1, (a, b), (pa, pb)), (f2, (c, d), (pc, pd)) = poor[:2]
                yield Configuration(Kind.C3, v, (a, b, c, d), (pa, pb, pc, pd), (f1, f2))


def find_reducible(g: Graph, e: Embedding) -> Optional[Configuration]:
    return next(configurations(g, e), None)


# --- tabular report -------------------------------------------------------------


def stats_rows(g: Graph, e: Embedding) -> list[list[str]]:
    """Header plus one row per vertex and one per face."""
    rows = [["kind", "id", "degree", "n3", "n5", "m3", "m5", "terrible", "poor"]]
    terrible: dict[int, int] = {v: 0 for v in g.vertices}
    poor: dict[int, bool] = {}
    for f in e.faces:
        if f.degree in (3, 5):
            for u in terrible_vertices(g, e, f.id):
                terrible[u] += 1
        if f.degree == 3:
            poor[f.id] = is_poor_3face(g, e, f.id)
    for v, c in incidence_profile(g, e).items():
        rows.append(["vertex", str(v), str(g.degree(v)), str(c.n3), str(c.n5), str(c.m3), str(c.m5),
                     str(terrible[v]), "-"])
    for f in e.faces:
        flag = "-" if f.id not in poor else ("1" if poor[f.id] else "0")
        rows.append(["face", str(f.id), str(f.degree), "-", "-", "-", "-", "-", flag])
    return rows
