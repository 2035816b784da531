from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from desctour.digraph import Digraph, Instance, excess, is_balanced, is_eulerian, is_tournament
from desctour.fileformat import read_instance
from desctour.generator import planted_instance, random_tournament, rotational_tournament
from desctour.solver import desc_bruteforce, solve

FIXTURES = Path(__file__).parent / "fixtures"

seeds = st.integers(0, 2**64 - 1)


def test_random_single_vertex():
    assert random_tournament(1, 5) == Digraph(1)


@given(st.integers(1, 25), seeds)
def test_random_is_tournament(n, seed):
    g = random_tournament(n, seed)
    assert is_tournament(g) and len(g.arcs) == n * (n - 1) // 2


@given(st.integers(1, 25), seeds)
def test_random_is_deterministic(n, seed):
    assert random_tournament(n, seed) == random_tournament(n, seed)


def test_random_frozen_fixture():
    assert read_instance(str(FIXTURES / "random_6_seed42.txt")).graph == random_tournament(6, 42)


def test_seeds_differ():
    assert len({random_tournament(12, s) for s in range(20)}) == 20


def test_random_rejects_bad_arguments():
    with pytest.raises(ValueError):
        random_tournament(0, 1)
    with pytest.raises(ValueError):
        random_tournament(3, -1)
    with pytest.raises(ValueError):
        random_tournament(3, 2**64)


def test_rotational_small():
    assert rotational_tournament(3) == Digraph(3, [(0, 1), (1, 2), (2, 0)])
    g = rotational_tournament(5)
    assert g.arcs == {(i, (i + j) % 5) for i in range(5) for j in (1, 2)}
    assert g.out_degrees() == [2] * 5


@pytest.mark.parametrize("n", range(1, 100, 2))
def test_rotational_is_eulerian(n):
    g = rotational_tournament(n)
    assert is_tournament(g) and is_balanced(g) and is_eulerian(g)


def test_rotational_rejects_even():
    with pytest.raises(ValueError):
        rotational_tournament(4)


def test_planted_without_reversals_is_free():
    g, bound = planted_instance(5, 3, 0, seed=1)
    assert bound == 0 and desc_bruteforce(g, 0).yes


def test_planted_three_three():
    for seed in range(6):
        g, bound = planted_instance(3, 3, 1, seed)
        assert bound == 1 and desc_bruteforce(g, None).desc_value == 1


@given(
    st.sampled_from([1, 3, 5, 7]),
    st.sampled_from([1, 3, 5, 7]),
    st.integers(0, 4),
    seeds,
)
def test_planted_properties(n1, n2, r, seed):
    r = min(r, n1 * n2)
    g, bound = planted_instance(n1, n2, r, seed)
    assert is_tournament(g) and bound == r
    assert planted_instance(n1, n2, r, seed) == (g, bound)
    back = [(u, v) for u, v in g.arcs if u >= n1 > v]
    assert len(back) == r
    # Undoing the reversals leaves two regular blocks, all arcs pointing forward.
    for v in range(n1):
        assert excess(g, v) + 2 * sum(1 for a in back if v in a) == n2


def test_planted_solves_at_bound():
    for seed in range(3):
        g, bound = planted_instance(7, 5, 2, seed)
        assert solve(Instance(g, bound)).yes


def test_planted_rejects_bad_arguments():
    with pytest.raises(ValueError):
        planted_instance(4, 3, 1, 0)
    with pytest.raises(ValueError):
        planted_instance(3, 3, 10, 0)
