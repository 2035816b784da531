import itertools

import pytest
from hypothesis import strategies as st

from desctour.digraph import Digraph

THREE_CYCLE = Digraph(3, [(0, 1), (1, 2), (2, 0)])
# Strong tournament on 4 vertices; vertex 1 has out-degree 2, in-degree 1.
STRONG4 = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])


def transitive(n):
    return Digraph(n, [(u, v) for u, v in itertools.combinations(range(n), 2)])


def all_tournaments(n):
    """Every labelled tournament on ``n`` vertices (2^(n choose 2) of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Digraph(n, [(u, v) if bits >> i & 1 else (v, u) for i, (u, v) in enumerate(pairs)])


def brute_reach(g, u):
    seen = {u}
    todo = [u]
    while todo:
        x = todo.pop()
        for y in range(g.n):
            if (x, y) in g.arcs and y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def brute_components(g):
    """Strong components by pairwise mutual reachability."""
    reach = [brute_reach(g, v) for v in range(g.n)]
    comps = []
    for v in range(g.n):
        comp = frozenset(w for w in range(g.n) if w in reach[v] and v in reach[w])
        if comp not in comps:
            comps.append(comp)
    return comps


@st.composite
def digraphs(draw, max_n=7, max_arcs=None):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    if not pairs:
        return Digraph(n)
    arcs = draw(st.sets(st.sampled_from(pairs), max_size=max_arcs or len(pairs)))
    return Digraph(n, arcs)


@st.composite
def tournaments(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    flips = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    pairs = itertools.combinations(range(n), 2)
    return Digraph(n, [(u, v) if f else (v, u) for f, (u, v) in zip(flips, pairs)])


@pytest.fixture
def strong4():
    return STRONG4


# Acceptance tests carry ``@pytest.mark.acceptance(number, title)``; their
# outcomes are collected here and printed as one line each at the end.
_criteria: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or not mark.args:
        return
    number, title = mark.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        status = "PASS" if report.passed else "SKIP" if report.skipped else "FAIL"
        _criteria[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
