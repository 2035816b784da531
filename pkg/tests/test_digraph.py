import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import STRONG4, THREE_CYCLE, brute_components, digraphs, tournaments, transitive
from desctour.digraph import (
    Digraph,
    GraphError,
    delete_arcs,
    desc_check_masks,
    excess,
    induced,
    is_balanced,
    is_desc_set,
    is_eulerian,
    is_tournament,
    strong_components,
)
from desctour.generator import rotational_tournament


def test_rejects_self_loops_and_bad_ids():
    with pytest.raises(GraphError):
        Digraph(2, [(1, 1)])
    with pytest.raises(GraphError):
        Digraph(2, [(0, 2)])
    with pytest.raises(GraphError):
        Digraph(-1)


def test_digraph_is_hashable_value():
    assert Digraph(3, [(0, 1)]) == Digraph(3, [(0, 1)])
    assert len({Digraph(3, [(0, 1)]), Digraph(3, [(0, 1)])}) == 1


class TestStrongComponents:
    def test_cycle_is_one_component(self):
        assert strong_components(THREE_CYCLE).components == (frozenset({0, 1, 2}),)

    def test_transitive_order(self):
        cond = strong_components(transitive(3))
        assert cond.components == (frozenset({0}), frozenset({1}), frozenset({2}))

    def test_rotational_five_is_strong(self):
        g = rotational_tournament(5)
        assert brute_components(g) == [frozenset(range(5))]
        assert strong_components(g).components == (frozenset(range(5)),)

    def test_tie_break_smallest_vertex_first(self):
        # Two isolated 2-cycles-free pieces: {0}, {1}, {2} with no arcs.
        assert strong_components(Digraph(3)).components == tuple(frozenset({v}) for v in range(3))
        # 2 -> 0 forces {2} before {0}; {1} is free and holds the smaller id.
        cond = strong_components(Digraph(3, [(2, 0)]))
        assert cond.components == (frozenset({1}), frozenset({2}), frozenset({0}))

    @given(digraphs())
    def test_matches_pairwise_reachability(self, g):
        assert set(strong_components(g).components) == set(brute_components(g))

    @given(digraphs())
    def test_arcs_go_forward(self, g):
        cond = strong_components(g)
        for u, v in g.arcs:
            assert cond.index[u] <= cond.index[v]

    @given(digraphs(), st.data())
    def test_deletion_refines(self, g, data):
        doomed = data.draw(st.sets(st.sampled_from(sorted(g.arcs)))) if g.arcs else set()
        before = strong_components(g)
        for comp in strong_components(delete_arcs(g, doomed)).components:
            assert len({before.index[v] for v in comp}) == 1

    @given(tournaments())
    def test_tournament_condensation_is_linear(self, g):
        cond = strong_components(g)
        for i, a in enumerate(cond.components):
            for b in cond.components[i + 1 :]:
                assert all(g.has_arc(x, y) for x in a for y in b)


class TestDegrees:
    def test_excess(self):
        assert excess(THREE_CYCLE, 0) == 0
        arc = Digraph(2, [(0, 1)])
        assert excess(arc, 0) == 1 and excess(arc, 1) == -1
        assert excess(transitive(3), 0) == 2
        with pytest.raises(GraphError):
            excess(arc, 2)

    @given(digraphs())
    def test_excess_sums_to_zero(self, g):
        assert sum(excess(g, v) for v in g.vertices) == 0

    def test_is_balanced(self):
        assert is_balanced(THREE_CYCLE)
        assert not is_balanced(Digraph(2, [(0, 1)]))
        assert is_balanced(Digraph(4))


class TestEulerian:
    def test_examples(self):
        assert is_eulerian(Digraph(1))
        assert is_eulerian(THREE_CYCLE)
        four_cycle_chord = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
        assert not is_eulerian(four_cycle_chord)

    def test_disconnected_balanced_is_not_eulerian(self):
        two_cycles = Digraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
        assert is_balanced(two_cycles) and not is_eulerian(two_cycles)

    @given(tournaments(min_n=2))
    def test_even_strong_tournament_never_eulerian(self, g):
        if g.n % 2 == 0:
            assert not is_eulerian(g)

    @given(digraphs())
    def test_strong_graph_eulerian_iff_empty_set_works(self, g):
        if len(strong_components(g)) == 1:
            assert is_eulerian(g) == is_desc_set(g, ())


class TestArcSets:
    def test_delete_arcs(self):
        assert delete_arcs(THREE_CYCLE, ()) == THREE_CYCLE
        assert delete_arcs(THREE_CYCLE, [(0, 1)]) == Digraph(3, [(1, 2), (2, 0)])
        assert delete_arcs(STRONG4, STRONG4.arcs) == Digraph(4)
        with pytest.raises(GraphError):
            delete_arcs(THREE_CYCLE, [(1, 0)])

    def test_induced(self):
        sub, ids = induced(transitive(3), [0, 2])
        assert sub == Digraph(2, [(0, 1)]) and ids == [0, 2]
        assert induced(STRONG4, [])[0] == Digraph(0)
        assert induced(STRONG4, range(4)) == (STRONG4, [0, 1, 2, 3])

    def test_is_tournament(self):
        assert is_tournament(THREE_CYCLE)
        assert not is_tournament(Digraph(3, [(0, 1), (1, 2), (2, 0), (1, 0)]))
        assert not is_tournament(Digraph(2))

    def test_is_desc_set_examples(self):
        assert is_desc_set(THREE_CYCLE, ())
        assert is_desc_set(STRONG4, [(0, 1)])
        h = delete_arcs(STRONG4, [(0, 1)])
        assert strong_components(h).components == (frozenset({1}), frozenset({0, 2, 3}))
        assert not is_desc_set(STRONG4, ())
        with pytest.raises(GraphError):
            is_desc_set(STRONG4, [(1, 0)])

    @settings(max_examples=200)
    @given(digraphs(), st.data())
    def test_mask_check_agrees(self, g, data):
        doomed = data.draw(st.sets(st.sampled_from(sorted(g.arcs)))) if g.arcs else set()
        h = delete_arcs(g, doomed)
        assert desc_check_masks(h.n, list(h.out_mask), list(h.in_mask)) == is_desc_set(g, doomed)

    @given(digraphs())
    def test_all_arcs_is_always_desc_set(self, g):
        assert is_desc_set(g, g.arcs)
