"""Minimum arc deletion that balances every vertex.

Deleting an arc set ``A`` balances ``g`` exactly when, for every vertex,
``out_A(v) - in_A(v) = excess(v)``. Such an ``A`` is an integral flow that
ships ``excess(v)`` units out of every surplus vertex and into every deficit
vertex along original arcs, so the smallest ``A`` is a minimum-cost flow
with unit capacity and unit cost per arc.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations

from .digraph import Arc, Digraph, excess

BRUTEFORCE_MAX_ARCS = 24
INF = float("inf")


class InstanceTooLarge(ValueError):
    pass


class NotFoundWithinCap(LookupError):
    pass


@dataclass(frozen=True)
class BalanceResult:
    deleted: tuple[Arc, ...]

    @property
    def size(self) -> int:
        return len(self.deleted)


class _Residual:
    """Residual network; edge ``e`` and its reverse are ``e`` and ``e ^ 1``."""

    def __init__(self, nodes: int):
        self.head: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []
        self.out: list[list[int]] = [[] for _ in range(nodes)]
        self.inc: list[list[int]] = [[] for _ in range(nodes)]

    def add(self, u: int, v: int, cap: int, cost: int) -> int:
        e = len(self.head)
        for tail, tip, c, w in ((u, v, cap, cost), (v, u, 0, -cost)):
            self.head.append(tip)
            self.cap.append(c)
            self.cost.append(w)
            self.out[tail].append(len(self.head) - 1)
            self.inc[tip].append(len(self.head) - 1)
        return e

    def tail(self, e: int) -> int:
        return self.head[e ^ 1]


def _dist_to_sink(net: _Residual, sink: int, pot: list[float]) -> list[tuple[float, int]]:
    """Dijkstra on reversed residual edges, keyed by (reduced cost, hop count)."""
    nodes = len(net.out)
    dist: list[tuple[float, int]] = [(INF, 0)] * nodes
    dist[sink] = (0, 0)
    heap = [(0, 0, sink)]
    while heap:
        d, h, v = heapq.heappop(heap)
        if (d, h) != dist[v]:
            continue
        for e in net.inc[v]:
            if net.cap[e] <= 0:
                continue
            u = net.tail(e)
            rc = net.cost[e] + pot[v] - pot[u]
            cand = (d + rc, h + 1)
            if cand < dist[u]:
                dist[u] = cand
                heapq.heappush(heap, (cand[0], cand[1], u))
    return dist


def min_balancing_deletion(g: Digraph) -> BalanceResult:
    """Smallest arc set whose removal leaves every vertex balanced.

    Successive shortest augmenting paths, one unit per augmentation. Each
    augmenting path has minimum cost, then fewest edges, then the
    lexicographically smallest node sequence (source = ``n``, sink = ``n+1``).
    """
    n = g.n
    source, sink = n, n + 1
    net = _Residual(n + 2)
    arc_edge: dict[Arc, int] = {}
    for u, v in g.sorted_arcs():
        arc_edge[(u, v)] = net.add(u, v, 1, 1)
    demand = 0
    for v in range(n):
        ex = excess(g, v)
        if ex > 0:
            net.add(source, v, ex, 0)
            demand += ex
        elif ex < 0:
            net.add(v, sink, -ex, 0)

    # All original costs are nonnegative, so the zero potential is feasible.
    pot: list[float] = [0] * (n + 2)
    for _ in range(demand):
        dist = _dist_to_sink(net, sink, pot)
        if dist[source][0] == INF:
            raise AssertionError("balancing flow infeasible; deleting every arc always works")
        # Tight edges strictly decrease the hop count, so this walk terminates.
        v = source
        path = []
        while v != sink:
            best = None
            for e in net.out[v]:
                if net.cap[e] <= 0:
                    continue
                w = net.head[e]
                rc = net.cost[e] + pot[w] - pot[v]
                dw = dist[w]
                if dw[0] == INF:
                    continue
                if (dw[0] + rc, dw[1] + 1) == dist[v] and (best is None or w < net.head[best]):
                    best = e
            path.append(best)
            v = net.head[best]
        for e in path:
            net.cap[e] -= 1
            net.cap[e ^ 1] += 1
        for u in range(n + 2):
            if dist[u][0] != INF:
                pot[u] += dist[u][0]

    deleted = tuple(a for a, e in arc_edge.items() if net.cap[e] == 0)
    return BalanceResult(deleted)


def min_balancing_deletion_bruteforce(
    g: Digraph, cap: int, max_arcs: int = BRUTEFORCE_MAX_ARCS
) -> BalanceResult:
    """Exhaustive reference: first balancing subset by size, then lex order.

    Raises :class:`InstanceTooLarge` above ``max_arcs`` arcs and
    :class:`NotFoundWithinCap` when nothing of size ``<= cap`` balances.
    """
    arcs = g.sorted_arcs()
    if len(arcs) > max_arcs:
        raise InstanceTooLarge(f"{len(arcs)} arcs exceeds the brute-force limit of {max_arcs}")
    # Pack per-vertex net out-flow into one integer; 8-bit fields, |entry| <= 24.
    weight = [(1 << (8 * u)) - (1 << (8 * v)) for u, v in arcs]
    target = sum(excess(g, v) << (8 * v) for v in range(g.n))
    for size in range(min(cap, len(arcs)) + 1):
        for combo in combinations(range(len(arcs)), size):
            if sum(weight[i] for i in combo) == target:
                return BalanceResult(tuple(arcs[i] for i in combo))
    raise NotFoundWithinCap(f"no balancing set of size <= {cap}")
