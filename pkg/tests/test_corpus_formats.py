import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f2fpart.corpus import (
    BadParameter,
    Family,
    complete4,
    cycle,
    default_corpus,
    double_subdivision,
    gen,
    random_class,
    random_tree,
)
from f2fpart.formats import (
    ParseError,
    format_partition,
    format_pge,
    parse_partition,
    parse_pge,
    read_manifest,
    read_pge,
    write_manifest,
    write_pge,
)
from f2fpart.graph import in_class
from f2fpart.partition import Partition

C5 = "5 5\n0: 1 4\n1: 0 2\n2: 1 3\n3: 2 4\n4: 0 3\n"


# --- PGE -------------------------------------------------------------------------------


def test_pge_parse_c5():
    g, e = parse_pge(C5)
    assert (g.n, g.m) == (5, 5)
    assert sorted(f.degree for f in e.faces) == [5, 5]
    assert format_pge(e) == C5


def test_pge_comments_and_blank_lines():
    text = "# a pentagon\n\n" + C5.replace("2: 1 3", "2: 1 3   # middle")
    g, _ = parse_pge(text)
    assert g.m == 5


def test_pge_file_round_trip(tmp_path):
    _, e = double_subdivision(*complete4())
    path = tmp_path / "g.pge"
    write_pge(path, e)
    g2, e2 = read_pge(path)
    assert sorted(g2.edges()) == sorted(e.graph.edges())
    assert sorted(f.degree for f in e2.faces) == sorted(f.degree for f in e.faces)


@pytest.mark.parametrize("text,line,column", [
    ("", None, None),
    ("5\n", 1, 1),
    ("5 5\n0: 1 4\n1: 0 x\n", 3, 6),
    ("5 5\n0: 1 4\n7: 0 2\n", 3, 1),
    ("3 3\n0 1 2\n", 2, 1),
])
def test_pge_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_pge(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_pge_rejects_inconsistent_rotations():
    with pytest.raises(ParseError, match="not at"):
        parse_pge("3 1\n0: 1\n1:\n2:\n")
    with pytest.raises(ParseError, match="header says"):
        parse_pge("3 3\n0: 1\n1: 0\n2:\n")
    with pytest.raises(ParseError, match="no rotation"):
        parse_pge("3 1\n0: 1\n1: 0\n")


def test_pge_nonplanar_rotation():
    # K3,3 with any rotation system cannot satisfy Euler's formula
    rot = {0: [3, 4, 5], 1: [3, 4, 5], 2: [3, 4, 5], 3: [0, 1, 2], 4: [0, 1, 2], 5: [0, 1, 2]}
    text = "6 9\n" + "".join(f"{v}: {' '.join(map(str, r))}\n" for v, r in rot.items())
    with pytest.raises(ParseError):
        parse_pge(text)
    g, e = parse_pge(text, strict=False)
    assert g.m == 9 and e is None


# --- partitions ------------------------------------------------------------------------------


def test_partition_round_trip():
    p = Partition({0: 0, 1: 1, 2: 0})
    assert parse_partition(format_partition(p), [0, 1, 2]) == p


def test_partition_missing_vertex():
    with pytest.raises(ParseError, match=r"missing vertices \[2\]"):
        parse_partition("0 0\n1 1\n", [0, 1, 2])


def test_partition_bad_part():
    with pytest.raises(ParseError) as err:
        parse_partition("0 0\n1 2\n", [0, 1])
    assert (err.value.line, err.value.column) == (2, 3)


def test_partition_unknown_and_duplicate():
    with pytest.raises(ParseError, match="unknown"):
        parse_partition("0 0\n5 1\n", [0])
    with pytest.raises(ParseError, match="twice"):
        parse_partition("0 0\n0 1\n", [0])


# --- generators -------------------------------------------------------------------------------


def test_cycle_lengths():
    assert cycle(7)[0].m == 7
    for bad in (2, 4, 6):
        with pytest.raises(BadParameter):
            cycle(bad)


def test_double_subdivided_k4():
    g0, e0 = complete4()
    g, e = double_subdivision(g0, e0)
    assert g.n == 4 + 2 * 6 and g.m == 3 * 6
    assert [g.degree(v) for v in range(4)] == [3, 3, 3, 3]
    assert all(g.degree(v) == 2 for v in range(4, 16))
    assert in_class(g)
    assert sorted(f.degree for f in e.faces) == [9, 9, 9, 9]


def test_random_class_is_in_class():
    g, e = random_class(30, seed=1)
    assert in_class(g)
    assert g.n == 30 and len(e.faces) > 0


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 25), st.integers(0, 10_000))
def test_random_class_terminates_in_class(n, seed):
    g, _ = random_class(n, seed)
    assert g.n == n and in_class(g)


def test_random_class_deterministic():
    a, _ = random_class(20, seed=9)
    b, _ = random_class(20, seed=9)
    assert sorted(a.edges()) == sorted(b.edges())


def test_random_tree():
    g, _ = random_tree(10, 3)
    assert g.m == 9
    with pytest.raises(BadParameter):
        random_tree(0, 1)


def test_gen_dispatch_and_errors():
    assert gen(Family("dodecahedron"))[0].n == 20
    assert gen(Family("double_subdivision", base="C3"))[0].n == 9
    assert gen(Family("random_class", n=12, seed=4))[0].n == 12
    with pytest.raises(BadParameter):
        gen(Family("petersen"))
    with pytest.raises(BadParameter):
        gen(Family("cycle"))
    with pytest.raises(BadParameter):
        gen(Family("double_subdivision", base="K5"))


def test_family_label():
    assert Family("random_class", n=7, seed=3).label == "random_class-n7-s3"
    assert Family("double_subdivision", base="K4").label == "double_subdivision-K4"


def test_default_corpus_size():
    fams = list(default_corpus())
    assert len(fams) == 502
    assert len({f.label for f in fams}) == 502


def test_manifest_round_trip(tmp_path):
    entries = [{"id": 0, "family": "cycle", "seed": None, "n": 5, "m": 5, "file": "0000.pge"}]
    path = tmp_path / "manifest.json"
    write_manifest(path, entries)
    assert read_manifest(path) == entries


def test_random_class_needs_a_triangle():
    with pytest.raises(BadParameter):
        random_class(2, seed=0)
