"""Small hand-drawn embedded graphs shared by several test modules."""

import math

from f2fpart.graph import build_graph, embedding_from_positions


def embed(n, edges, pos):
    g = build_graph(n, edges)
    return g, embedding_from_positions(g, pos)


def face_with(e, verts):
    verts = set(verts)
    return next(f.id for f in e.faces if set(f.vertices) == verts)


def fan(center, xy, k, start, r=1.0):
    """Leaves around ``center``: returns edges and positions for ids start..start+k-1."""
    edges, pos = [], {}
    for i in range(k):
        t = 2 * math.pi * (i + 0.5) / k
        pos[start + i] = (xy[0] + r * math.cos(t), xy[1] + r * math.sin(t))
        edges.append((center, start + i))
    return edges, pos


def triangle_with_tail(tail_leaves):
    """Triangle 0,1,2 (0 at the origin), vertex 0 joined to 3 at (-2, 0)
    which carries ``tail_leaves`` further leaves."""
    edges = [(0, 1), (1, 2), (2, 0), (0, 3)]
    pos = {0: (0, 0), 1: (2, -1), 2: (2, 1), 3: (-2, 0)}
    e2, p2 = fan(3, (-2, 0), tail_leaves, 4, r=0.5)
    pos.update({k: (x - 0.5, y) for k, (x, y) in p2.items()})
    return embed(4 + tail_leaves, edges + e2, pos)


def poor_gadget(b_tail_leaves):
    """Triangle v=0, a=1, b=2; v has three extra leaves, a and b one
    outside neighbour each (b's neighbour carries ``b_tail_leaves`` leaves)."""
    edges = [(0, 1), (1, 2), (2, 0), (1, 3), (2, 4)]
    pos = {0: (0, 0), 1: (2, -1), 2: (2, 1), 3: (3, -2), 4: (3, 2)}
    e2, p2 = fan(0, (0, 0), 3, 5)
    pos.update({k: (x - 0.5, y) for k, (x, y) in p2.items()})
    edges += e2
    nxt = 8
    for i in range(b_tail_leaves):
        pos[nxt] = (3 + 0.4 * (i - b_tail_leaves / 2), 3)
        edges.append((4, nxt))
        nxt += 1
    return embed(nxt, edges, pos)
