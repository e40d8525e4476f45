import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from f2fpart.corpus import Family, gen  # noqa: E402
from f2fpart.graph import build_graph  # noqa: E402


@st.composite
def small_graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return build_graph(n, chosen)


@st.composite
def class_graphs(draw, max_n=14):
    """Embedded random in-class graphs from the corpus generator."""
    n = draw(st.integers(5, max_n))
    seed = draw(st.integers(0, 10_000))
    return gen(Family("random_class", n=n, seed=seed))


@pytest.fixture(scope="session")
def small_corpus():
    fams = [Family("cycle", n=n) for n in (3, 5, 7)]
    fams += [Family("tree", n=n, seed=n) for n in (1, 2, 6, 11)]
    fams += [Family("dodecahedron"), Family("double_subdivision", base="K4")]
    fams += [Family("random_class", n=5 + s % 12, seed=s) for s in range(40)]
    return [(f, *gen(f)) for f in fams]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
