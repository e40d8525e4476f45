"""Text formats: PGE embedded graphs, partition files, corpus manifests.

PGE::

    # comment
    n m
    0: 1 2 3
    1: 0 3 2
    ...

One rotation line per vertex ``0..n-1``.  Written files rotate each cyclic
order to start at its smallest neighbour, so output is byte-stable.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .graph import Embedding, Graph, GraphError, build_embedding
from .partition import F2_F, ClassSpec, Partition

PathLike = Union[str, Path]


class ParseError(ValueError):
    def __init__(self, msg: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + msg)


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body


def _column(raw_line: str, token: str) -> int:
    return raw_line.find(token) + 1


def parse_pge(text: str, strict: bool = True) -> tuple[Graph, Optional[Embedding]]:
    """Parse a PGE file.

    With ``strict=False`` a rotation system that is not a planar embedding of
    a connected graph is tolerated and the embedding comes back as None;
    commands that only need the abstract graph use this.
    """
    lines = list(_content_lines(text))
    raw = text.splitlines()
    if not lines:
        raise ParseError("empty file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError("header must be 'n m'", lineno, 1)
    n, m = int(parts[0]), int(parts[1])
    rot: dict[int, list[int]] = {}
    for lineno, body in lines[1:]:
        if ":" not in body:
            raise ParseError("rotation line must look like 'v: u1 u2 ...'", lineno, 1)
        head, tail = body.split(":", 1)
        head = head.strip()
        if not head.isdigit():
            raise ParseError(f"bad vertex id {head!r}", lineno, _column(raw[lineno - 1], head))
        v = int(head)
        if v >= n:
            raise ParseError(f"vertex {v} out of range", lineno, _column(raw[lineno - 1], head))
        if v in rot:
            raise ParseError(f"duplicate rotation for vertex {v}", lineno, 1)
        nbrs = []
        for tok in tail.split():
            if not tok.isdigit() or int(tok) >= n:
                raise ParseError(f"bad neighbour {tok!r}", lineno, _column(raw[lineno - 1], tok))
            nbrs.append(int(tok))
        rot[v] = nbrs
    missing = [v for v in range(n) if v not in rot]
    if missing:
        raise ParseError(f"no rotation for vertices {missing}")
    adj = {v: set(r) for v, r in rot.items()}
    for v, r in rot.items():
        if len(set(r)) != len(r):
            raise ParseError(f"repeated neighbour in rotation of {v}")
        for u in r:
            if v not in adj[u]:
                raise ParseError(f"edge {v}-{u} listed at {v} but not at {u}")
    try:
        g = Graph(adj)
        if g.m != m:
            raise ParseError(f"header says {m} edges, rotations give {g.m}")
    except GraphError as exc:
        raise ParseError(str(exc)) from exc
    try:
        e = build_embedding(g, rot)
    except GraphError as exc:
        if strict:
            raise ParseError(str(exc)) from exc
        e = None
    return g, e


def format_pge(e: Embedding) -> str:
    g = e.graph
    if list(g.vertices) != list(range(g.n)):
        raise ValueError("PGE needs vertex ids 0..n-1; relabel first")
    out = [f"{g.n} {g.m}"]
    for v in g.vertices:
        r = list(e.rotation[v])
        if r:
            i = r.index(min(r))
            r = r[i:] + r[:i]
        out.append(f"{v}: " + " ".join(map(str, r)) if r else f"{v}:")
    return "\n".join(out) + "\n"


def read_pge(path: PathLike, strict: bool = True) -> tuple[Graph, Optional[Embedding]]:
    return parse_pge(Path(path).read_text(), strict)


def write_pge(path: PathLike, e: Embedding) -> None:
    Path(path).write_bytes(format_pge(e).encode())


def parse_partition(text: str, vertices: Sequence[int], specs: Sequence[ClassSpec] = F2_F) -> Partition:
    assignment: dict[int, int] = {}
    raw = text.splitlines()
    for lineno, body in _content_lines(text):
        toks = body.split()
        if len(toks) != 2 or not all(t.isdigit() for t in toks):
            raise ParseError("expected 'vertex part'", lineno, 1)
        v, p = int(toks[0]), int(toks[1])
        if v in assignment:
            raise ParseError(f"vertex {v} assigned twice", lineno, 1)
        if p >= len(specs):
            line = raw[lineno - 1]
            col = line.find(toks[1], line.find(toks[0]) + len(toks[0])) + 1
            raise ParseError(f"part {p} out of range for {len(specs)} classes", lineno, col)
        assignment[v] = p
    missing = [v for v in vertices if v not in assignment]
    if missing:
        raise ParseError(f"missing vertices {missing}")
    extra = sorted(set(assignment) - set(vertices))
    if extra:
        raise ParseError(f"unknown vertices {extra}")
    return Partition(assignment, specs)


def format_partition(p: Partition) -> str:
    return "".join(f"{v} {part}\n" for v, part in sorted(p.assignment.items()))


def read_partition(path: PathLike, vertices: Sequence[int], specs: Sequence[ClassSpec] = F2_F) -> Partition:
    return parse_partition(Path(path).read_text(), vertices, specs)


def write_partition(path: PathLike, p: Partition) -> None:
    Path(path).write_bytes(format_partition(p).encode())


def write_manifest(path: PathLike, entries: Iterable[dict]) -> None:
    """JSON list of corpus members: id, family, seed, n, m, file."""
    Path(path).write_text(json.dumps(list(entries), indent=2, sort_keys=True) + "\n")


def read_manifest(path: PathLike) -> list[dict]:
    return json.loads(Path(path).read_text())
