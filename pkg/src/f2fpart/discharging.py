"""Charges in exact twelfths, the four transfer rules, and the audit report.

Every charge is an ``int`` counting twelfths: 1/3 is 4, 1/4 is 3, 7/3 is 28.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .graph import Embedding, Graph, in_class
from .structure import configurations, is_poor_3face, pendent_relation, vertex_counts

DENOM = 12

ONE_THIRD = 4
HALF = 6
QUARTER = 3
SIXTH = 2
TWO_THIRDS = 8
FIVE_THIRDS = 20
SEVEN_THIRDS = 28
ONE = 12

# element keys: ("v", vertex id) or ("f", face id)
Element = tuple[str, int]


def twelfths(x: int) -> str:
    return f"{x}/{DENOM}"


def as_fraction(x: int) -> Fraction:
    return Fraction(x, DENOM)


@dataclass(frozen=True)
class Transfer:
    sender: Element
    receiver: Element
    amount: int
    rule: str


@dataclass
class ChargeLedger:
    initial: dict[Element, int]
    final: dict[Element, int] = field(default_factory=dict)
    transfers: list[Transfer] = field(default_factory=list)

    def __post_init__(self):
        if not self.final:
            self.final = dict(self.initial)

    def total_initial(self) -> int:
        return sum(self.initial.values())

    def total_final(self) -> int:
        return sum(self.final.values())

    def send(self, sender: Element, receiver: Element, amount: int, rule: str) -> None:
        self.transfers.append(Transfer(sender, receiver, amount, rule))
        self.final[sender] -= amount
        self.final[receiver] += amount

    def replay(self, element: Element) -> int:
        """Final charge of one element recomputed from the transfer log."""
        x = self.initial[element]
        for t in self.transfers:
            if t.sender == element:
                x -= t.amount
            if t.receiver == element:
                x += t.amount
        return x


def initial_charges(g: Graph, e: Embedding) -> ChargeLedger:
    """Vertex charge ``2 d(v) - 6``, face charge ``d(f) - 6``, in twelfths."""
    init: dict[Element, int] = {}
    for v in g.vertices:
        init[("v", v)] = (2 * g.degree(v) - 6) * DENOM
    for f in e.faces:
        init[("f", f.id)] = (f.degree - 6) * DENOM
    return ChargeLedger(init)


def apply_rules(g: Graph, e: Embedding, ledger: ChargeLedger) -> ChargeLedger:
    """Run R1-R4 on ``ledger`` in place and return it.

    Incidences count with walk multiplicity; pendent faces count once per
    (vertex, face) pair.
    """
    poor = {f.id: is_poor_3face(g, e, f.id) for f in e.faces if f.degree == 3}
    for v in g.vertices:
        d = g.degree(v)
        src = ("v", v)
        if d == 3:
            for fid in e.faces_at(v):
                if e.faces[fid].degree == 3:
                    ledger.send(src, ("f", fid), ONE_THIRD, "R1")
        elif d == 4:
            for fid in e.faces_at(v):
                fd = e.faces[fid].degree
                if fd == 3:
                    ledger.send(src, ("f", fid), ONE, "R2")
                elif fd == 5:
                    ledger.send(src, ("f", fid), HALF, "R2")
        elif d >= 5:
            for fid in e.faces_at(v):
                fd = e.faces[fid].degree
                if fd == 3:
                    ledger.send(src, ("f", fid), SEVEN_THIRDS if poor[fid] else FIVE_THIRDS, "R3")
                elif fd == 5:
                    ledger.send(src, ("f", fid), HALF, "R3")
            for fid in pendent_relation(g, e, v):
                fd = e.faces[fid].degree
                if fd == 3:
                    ledger.send(src, ("f", fid), TWO_THIRDS, "R3")
                elif fd == 5:
                    ledger.send(src, ("f", fid), QUARTER, "R3")
    on_triangle = {v for f in e.faces if f.degree == 3 for v in f.vertices}
    for f in e.faces:
        if f.degree < 7:
            continue
        for v in f.vertices:
            if g.degree(v) == 3 and v in on_triangle:
                ledger.send(("f", f.id), ("v", v), SIXTH, "R4")
    return ledger


def final_charges(g: Graph, e: Embedding) -> ChargeLedger:
    return apply_rules(g, e, initial_charges(g, e))


def case_label(g: Graph, e: Embedding, element: Element, counts=None) -> str:
    """Which case of the final-charge analysis an element falls under (diagnostic)."""
    kind, x = element
    if kind == "f":
        d = e.faces[x].degree
        if d == 3:
            return "CASE1"
        if d == 5:
            return "CASE2"
        if d >= 7:
            return "CASE3"
        if d == 6:
            return "6-face"
        return f"{d}-face"
    d = g.degree(x)
    if d <= 2:
        return "C0"
    on3 = any(e.faces[f].degree == 3 for f in e.faces_at(x))
    if d == 3:
        return "CASE4" if on3 else "3-vertex"
    if d == 4:
        return "CASE5"
    if counts is None:
        counts = vertex_counts(g, e, x)
    s = 2 * counts.n3 + counts.m3
    if s == 0:
        return "CASE6"
    sub = ".1" if s == d else ".2"
    if d == 5:
        return "CASE7" + sub
    if d == 6:
        return "CASE8" + sub
    return "CASE9" + sub


@dataclass
class AuditRow:
    element: Element
    degree: int
    case: str
    mu: int
    mu_star: int
    nearest: Optional[str] = None


@dataclass
class AuditReport:
    rows: list[AuditRow]
    total_initial: int
    total_final: int
    components: int
    in_class: bool

    @property
    def expected_total(self) -> int:
        return -12 * DENOM * self.components

    @property
    def conserved(self) -> bool:
        return self.total_initial == self.total_final == self.expected_total

    @property
    def negatives(self) -> list[AuditRow]:
        return [r for r in self.rows if r.mu_star < 0]

    def tsv(self) -> str:
        lines = ["element\tkind\tdegree\tcase\tmu\tmu_star\tnearest"]
        for r in self.rows:
            lines.append("\t".join([
                f"{r.element[0]}{r.element[1]}",
                "vertex" if r.element[0] == "v" else "face",
                str(r.degree), r.case, twelfths(r.mu), twelfths(r.mu_star), r.nearest or "-",
            ]))
        return "\n".join(lines) + "\n"

    def summary(self) -> dict:
        return {
            "in_class": self.in_class,
            "components": self.components,
            "sum_initial": twelfths(self.total_initial),
            "sum_final": twelfths(self.total_final),
            "conserved": self.conserved,
            "negative": [
                {"element": f"{r.element[0]}{r.element[1]}", "case": r.case,
                 "mu_star": twelfths(r.mu_star), "nearest": r.nearest}
                for r in self.negatives
            ],
        }


def _distances(g: Graph, sources: set[int]) -> dict[int, int]:
    dist = {s: 0 for s in sources}
    queue = deque(sources)
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def audit(g: Graph, e: Embedding) -> AuditReport:
    """Charges before and after the rules for every vertex and face.

    Each element ending with negative charge is annotated with the closest
    reducible configuration (graph distance to any of its vertices).
    """
    ledger = final_charges(g, e)
    confs = list(configurations(g, e))
    rows = []
    for el in ledger.initial:
        kind, x = el
        deg = g.degree(x) if kind == "v" else e.faces[x].degree
        rows.append(AuditRow(el, deg, case_label(g, e, el), ledger.initial[el], ledger.final[el]))
    for r in rows:
        if r.mu_star >= 0:
            continue
        if not confs:
            r.nearest = "none"
            continue
        kind, x = r.element
        src = {x} if kind == "v" else set(e.faces[x].vertices)
        dist = _distances(g, src)
        best = min(
            confs, key=lambda c: min((dist.get(y, 10**9) for y in c.vertices()), default=10**9)
        )
        dmin = min((dist.get(y, 10**9) for y in best.vertices()), default=10**9)
        r.nearest = f"{best.kind.value}@{best.anchor}(d={dmin})"
    return AuditReport(
        rows, ledger.total_initial(), ledger.total_final(), len(e.components), in_class(g)
    )
