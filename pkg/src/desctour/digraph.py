"""Immutable digraphs on dense integer vertex ids.

Adjacency is stored as one bitmask per vertex, which keeps the
reachability-heavy checks (strong components, Eulerian components) cheap on
the small graphs the kernel and the exact solvers work with.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Iterator

Arc = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs or arcs that do not belong to a graph."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Digraph:
    """Simple digraph with vertices ``0..n-1``.

    No self-loops and at most one arc per ordered pair. Instances are
    immutable; every "mutation" returns a new value.
    """

    n: int
    arcs: frozenset[Arc]
    out_mask: tuple[int, ...] = field(init=False, repr=False, compare=False)
    in_mask: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, arcs: Iterable[Arc] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        arcs = frozenset((int(u), int(v)) for u, v in arcs)
        out = [0] * n
        inn = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"arc ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "out_mask", tuple(out))
        object.__setattr__(self, "in_mask", tuple(inn))

    def __reduce__(self):
        return (Digraph, (self.n, tuple(sorted(self.arcs))))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def out_degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.out_mask[v].bit_count()

    def in_degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.in_mask[v].bit_count()

    def out_degrees(self) -> list[int]:
        return [m.bit_count() for m in self.out_mask]

    def successors(self, v: int) -> list[int]:
        return list(_bits(self.out_mask[v]))

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range 0..{self.n - 1}")


@dataclass(frozen=True)
class Instance:
    """A digraph together with a deletion budget ``k``."""

    graph: Digraph
    budget: int

    def __post_init__(self):
        if self.budget < 0:
            raise GraphError(f"budget must be nonnegative, got {self.budget}")


@dataclass(frozen=True)
class Condensation:
    """Strong components in topological order.

    Every arc between two distinct components goes from an earlier entry of
    ``components`` to a later one. ``index[v]`` is the position of the
    component holding ``v``.
    """

    components: tuple[frozenset[int], ...]
    index: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.components)


def _tarjan(g: Digraph) -> list[list[int]]:
    # Iterative Tarjan; recursion depth would otherwise be O(n).
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in range(g.n):
        if root in index:
            continue
        work = [(root, iter(g.successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.successors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def strong_components(g: Digraph) -> Condensation:
    """Strong components of ``g`` in a deterministic topological order.

    Among the components whose predecessors have all been emitted, the one
    holding the smallest vertex id goes first.
    """
    comps = _tarjan(g)
    comp_of = [0] * g.n
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    succ: list[set[int]] = [set() for _ in comps]
    indeg = [0] * len(comps)
    for u, v in g.arcs:
        a, b = comp_of[u], comp_of[v]
        if a != b and b not in succ[a]:
            succ[a].add(b)
            indeg[b] += 1
    key = [min(c) for c in comps]
    ready = [(key[i], i) for i in range(len(comps)) if indeg[i] == 0]
    heapq.heapify(ready)
    ordered: list[int] = []
    while ready:
        _, i = heapq.heappop(ready)
        ordered.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(ready, (key[j], j))
    position = {c: p for p, c in enumerate(ordered)}
    components = tuple(frozenset(comps[c]) for c in ordered)
    index = tuple(position[comp_of[v]] for v in range(g.n))
    return Condensation(components, index)


def excess(g: Digraph, v: int) -> int:
    """Out-degree minus in-degree of ``v``."""
    return g.out_degree(v) - g.in_degree(v)


def is_balanced(g: Digraph) -> bool:
    return all(o.bit_count() == i.bit_count() for o, i in zip(g.out_mask, g.in_mask))


def _balanced_within(g: Digraph, mask: int) -> bool:
    for v in _bits(mask):
        if (g.out_mask[v] & mask).bit_count() != (g.in_mask[v] & mask).bit_count():
            return False
    return True


def is_strongly_connected(g: Digraph) -> bool:
    return g.n <= 1 or len(_tarjan(g)) == 1


def is_eulerian(g: Digraph) -> bool:
    """Strongly connected and balanced. A single vertex counts as Eulerian.

    The empty digraph is treated as Eulerian as well (it has no component
    that could fail).
    """
    return is_balanced(g) and is_strongly_connected(g)


def is_tournament(g: Digraph) -> bool:
    if len(g.arcs) != g.n * (g.n - 1) // 2:
        return False
    return all(not g.has_arc(v, u) for u, v in g.arcs)


def _check_subset(g: Digraph, arcs: Iterable[Arc]) -> frozenset[Arc]:
    arcs = frozenset(arcs)
    missing = arcs - g.arcs
    if missing:
        u, v = min(missing)
        raise GraphError(f"arc ({u}, {v}) is not in the digraph")
    return arcs


def delete_arcs(g: Digraph, arcs: Iterable[Arc]) -> Digraph:
    """``g`` minus ``arcs``; every removed arc must be present."""
    arcs = _check_subset(g, arcs)
    if not arcs:
        return g
    return Digraph(g.n, g.arcs - arcs)


def add_arcs(g: Digraph, arcs: Iterable[Arc]) -> Digraph:
    arcs = frozenset(arcs)
    if not arcs:
        return g
    return Digraph(g.n, g.arcs | arcs)


def induced(g: Digraph, xs: Iterable[int]) -> tuple[Digraph, list[int]]:
    """Subgraph induced by ``xs`` with vertices relabelled ``0..len(xs)-1``.

    Returns the subgraph and ``old_ids`` where ``old_ids[new] = old``; the new
    ids follow ascending old ids.
    """
    old_ids = sorted(set(xs))
    for v in old_ids:
        g._check_vertex(v)
    new_id = {v: i for i, v in enumerate(old_ids)}
    arcs = [(new_id[u], new_id[v]) for u, v in g.arcs if u in new_id and v in new_id]
    return Digraph(len(old_ids), arcs), old_ids


def non_eulerian_components(g: Digraph, cond: Condensation | None = None) -> list[frozenset[int]]:
    """Strong components whose induced subgraph is not balanced."""
    if cond is None:
        cond = strong_components(g)
    bad = []
    for comp in cond.components:
        mask = 0
        for v in comp:
            mask |= 1 << v
        if not _balanced_within(g, mask):
            bad.append(comp)
    return bad


def is_desc_set(g: Digraph, arcs: Iterable[Arc] = ()) -> bool:
    """True iff every strong component of ``g - arcs`` is Eulerian.

    Arcs joining different components are free to be unbalanced.
    """
    h = delete_arcs(g, arcs)
    return not non_eulerian_components(h)


def _reach(adj: tuple[int, ...] | list[int], v: int) -> int:
    seen = frontier = 1 << v
    while frontier:
        nxt = 0
        for w in _bits(frontier):
            nxt |= adj[w]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def component_masks(n: int, out: list[int], inn: list[int]) -> list[int]:
    """Strong components as vertex bitmasks, ordered by smallest member."""
    comps = []
    done = 0
    for v in range(n):
        if done >> v & 1:
            continue
        comp = _reach(out, v) & _reach(inn, v)
        done |= comp
        comps.append(comp)
    return comps


def unbalanced_component_masks(n: int, out: list[int], inn: list[int]) -> list[int]:
    bad = []
    for comp in component_masks(n, out, inn):
        for w in _bits(comp):
            if (out[w] & comp).bit_count() != (inn[w] & comp).bit_count():
                bad.append(comp)
                break
    return bad


def desc_check_masks(n: int, out: list[int], inn: list[int]) -> bool:
    """DESC test on raw adjacency bitmasks; agrees with :func:`is_desc_set`."""
    done = 0
    for v in range(n):
        if done >> v & 1:
            continue
        comp = _reach(out, v) & _reach(inn, v)
        done |= comp
        for w in _bits(comp):
            if (out[w] & comp).bit_count() != (inn[w] & comp).bit_count():
                return False
    return True
