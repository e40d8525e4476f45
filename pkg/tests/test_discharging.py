from fractions import Fraction

from hypothesis import given, settings

from conftest import class_graphs
from shapes import face_with, poor_gadget, triangle_with_tail

from f2fpart.corpus import complete4, cycle, dodecahedron, double_subdivision
from f2fpart.discharging import (
    DENOM,
    apply_rules,
    as_fraction,
    audit,
    case_label,
    final_charges,
    initial_charges,
    twelfths,
)
from f2fpart.graph import in_class
from f2fpart.structure import Kind, configurations


def test_fraction_helpers():
    assert twelfths(-18) == "-18/12"
    assert as_fraction(-18) == Fraction(-3, 2)


def test_initial_charge_formulas():
    g, e = poor_gadget(0)
    led = initial_charges(g, e)
    assert led.initial[("v", 0)] == 4 * DENOM  # degree 5
    assert led.initial[("v", 1)] == 0  # degree 3
    g2, e2 = cycle(5)
    assert {led2 for led2 in initial_charges(g2, e2).initial.values()} == {-2 * DENOM, -1 * DENOM}
    g3, e3 = cycle(7)
    faces = [v for k, v in initial_charges(g3, e3).initial.items() if k[0] == "f"]
    assert faces == [DENOM, DENOM]


def test_k4_charges():
    g, e = complete4()
    led = final_charges(g, e)
    assert led.total_initial() == led.total_final() == -12 * DENOM
    for f in e.faces:
        assert led.initial[("f", f.id)] == -3 * DENOM
        assert led.final[("f", f.id)] == -2 * DENOM
    for v in g.vertices:
        assert led.final[("v", v)] == -DENOM
    assert {t.rule for t in led.transfers} == {"R1"}


def test_dodecahedron_charges_do_not_move():
    g, e = dodecahedron()
    led = final_charges(g, e)
    assert led.transfers == []
    assert all(led.final[("v", v)] == 0 for v in g.vertices)
    assert all(led.final[("f", f.id)] == -DENOM for f in e.faces)
    assert led.total_final() == -12 * DENOM


def test_double_subdivided_k4_audit():
    g, e = double_subdivision(*complete4())
    rep = audit(g, e)
    assert rep.conserved
    neg = {r.element for r in rep.negatives}
    assert neg == {("v", v) for v in g.vertices if g.degree(v) == 2}
    assert all(r.mu == -2 * DENOM and r.case == "C0" for r in rep.negatives)
    assert all(r.nearest.startswith("C0@") and r.nearest.endswith("(d=0)") for r in rep.negatives)
    assert {r.case for r in rep.rows if r.element[0] == "f"} == {"CASE3"}


def test_rule_amounts_at_5vertex():
    g, e = poor_gadget(0)
    tri = face_with(e, [0, 1, 2])
    led = final_charges(g, e)
    sent = [t for t in led.transfers if t.sender == ("v", 0) and t.receiver == ("f", tri)]
    assert [(t.amount, t.rule) for t in sent] == [(28, "R3")]
    g2, e2 = poor_gadget(4)
    tri2 = face_with(e2, [0, 1, 2])
    sent2 = [t for t in final_charges(g2, e2).transfers if t.sender == ("v", 0) and t.receiver == ("f", tri2)]
    assert [t.amount for t in sent2] == [20]


def test_big_face_feeds_3vertex_on_triangle():
    g, e = triangle_with_tail(2)
    outer = next(f for f in e.faces if f.degree >= 7)
    led = final_charges(g, e)
    r4 = [(t.sender, t.receiver, t.amount) for t in led.transfers if t.rule == "R4"]
    # vertex 0 is a cut vertex with two corners on the outer face;
    # vertex 3 has degree 3 but lies on no 3-face
    assert r4 == [(("f", outer.id), ("v", 0), 2)] * 2


def test_pendent_transfers():
    # the tail vertex 3 of triangle_with_tail(4) has degree 5 and a pendent 3-face
    g, e = triangle_with_tail(4)
    tri = face_with(e, [0, 1, 2])
    led = final_charges(g, e)
    sent = [(t.amount, t.rule) for t in led.transfers if t.sender == ("v", 3) and t.receiver == ("f", tri)]
    assert sent == [(8, "R3")]


def test_case_labels():
    g, e = dodecahedron()
    assert case_label(g, e, ("v", 0)) == "3-vertex"
    assert case_label(g, e, ("f", 0)) == "CASE2"
    g, e = complete4()
    assert case_label(g, e, ("v", 0)) == "CASE4"
    assert case_label(g, e, ("f", 0)) == "CASE1"
    g, e = poor_gadget(0)
    assert case_label(g, e, ("v", 0)) == "CASE7.2"


def test_audit_report_formats():
    rep = audit(*dodecahedron())
    lines = rep.tsv().splitlines()
    assert lines[0].split("\t") == ["element", "kind", "degree", "case", "mu", "mu_star", "nearest"]
    assert len(lines) == 1 + 20 + 12
    summary = rep.summary()
    assert summary["sum_final"] == "-144/12" and summary["conserved"]
    assert len(summary["negative"]) == 12


def test_transfer_log_replays():
    g, e = poor_gadget(0)
    led = final_charges(g, e)
    t = led.transfers[0]
    before = initial_charges(g, e)
    before.send(t.sender, t.receiver, t.amount, t.rule)
    assert before.final[t.sender] == before.initial[t.sender] - t.amount
    assert before.final[t.receiver] == before.initial[t.receiver] + t.amount


@settings(max_examples=50, deadline=None)
@given(class_graphs(max_n=18))
def test_conservation_and_replay(ge):
    g, e = ge
    led = final_charges(g, e)
    assert led.total_initial() == led.total_final() == -12 * DENOM
    for el in led.initial:
        assert led.replay(el) == led.final[el]


def naive_rule_sets(g, e):
    """R3 senders and R4 receivers straight from the face lists."""
    faces = [(f.id, f.degree, set(f.vertices)) for f in e.faces]
    on_triangle = {v for _, d, vs in faces if d == 3 for v in vs}
    senders = set()
    for v in g.vertices:
        if g.degree(v) < 5:
            continue
        for fid, d, vs in faces:
            if d not in (3, 5):
                continue
            if v in vs or any(g.degree(u) == 3 and u in vs for u in g.neighbors(v)):
                senders.add(v)
    receivers = {v for _, d, vs in faces if d >= 7 for v in vs if g.degree(v) == 3 and v in on_triangle}
    return senders, receivers


@settings(max_examples=50, deadline=None)
@given(class_graphs(max_n=18))
def test_rule_sets_two_ways(ge):
    g, e = ge
    led = apply_rules(g, e, initial_charges(g, e))
    senders = {t.sender[1] for t in led.transfers if t.rule == "R3"}
    receivers = {t.receiver[1] for t in led.transfers if t.rule == "R4"}
    assert (senders, receivers) == naive_rule_sets(g, e)


def test_no_counterexample_shape_in_corpus(small_corpus):
    for fam, g, e in small_corpus:
        if not in_class(g):
            continue
        led = final_charges(g, e)
        big_kinds = {c.kind for c in configurations(g, e)} - {Kind.C0}
        all_nonneg = all(x >= 0 for x in led.final.values())
        assert not (g.min_degree() >= 3 and not big_kinds and all_nonneg), fam.label
