"""Exact search for the smallest arc set leaving only Eulerian strong components.

Two independent routes:

* :func:`desc_bruteforce` enumerates arc subsets by size. It is the oracle.
* :func:`desc_branch` is an iterative-deepening search. If a strong
  component ``C`` is not Eulerian and no arc inside ``C`` is deleted, ``C``
  stays intact (deletions only split components) and stays non-Eulerian, so
  every solution deletes some arc of ``C``. Branching over those arcs is
  therefore exhaustive.

:func:`solve` runs the kernel first and searches only the kernel.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, count
from typing import Optional

from .digraph import (
    Arc,
    Digraph,
    Instance,
    desc_check_masks,
    is_desc_set,
    unbalanced_component_masks,
)
from .kernel import DecidedNo, Kernel, KernelOutcome, kernelize, lift_certificate

BRUTEFORCE_MAX_ARCS = 32
BRUTEFORCE_MAX_K = 4


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class SolveResult:
    yes: bool
    certificate: Optional[tuple[Arc, ...]] = None
    explored: int = 0
    desc_value: Optional[int] = None
    kernel: Optional[KernelOutcome] = field(default=None, compare=False)

    @property
    def decision(self) -> str:
        return "YES" if self.yes else "NO"


def _check_certificate(g: Digraph, k: int, cert: tuple[Arc, ...]) -> None:
    if len(cert) > k or not is_desc_set(g, cert):
        raise AssertionError(f"solver produced an invalid certificate {cert}")


def desc_bruteforce(
    g: Digraph,
    k: int | None,
    *,
    max_arcs: int = BRUTEFORCE_MAX_ARCS,
    max_k: int = BRUTEFORCE_MAX_K,
) -> SolveResult:
    """Try every arc subset of size 0, 1, ... in lexicographic order.

    ``k=None`` is optimize mode: keep going until a DESC-set turns up, which
    always happens by the time every arc is deleted.
    """
    arcs = g.sorted_arcs()
    if len(arcs) > max_arcs:
        raise InstanceTooLarge(f"{len(arcs)} arcs exceeds the brute-force limit of {max_arcs}")
    if k is not None and k > max_k:
        raise InstanceTooLarge(f"budget {k} exceeds the brute-force limit of {max_k}")
    top = len(arcs) if k is None else min(k, len(arcs))
    base_out = list(g.out_mask)
    base_in = list(g.in_mask)
    explored = 0
    for size in range(top + 1):
        for combo in combinations(arcs, size):
            explored += 1
            out = base_out[:]
            inn = base_in[:]
            for u, v in combo:
                out[u] ^= 1 << v
                inn[v] ^= 1 << u
            if desc_check_masks(g.n, out, inn):
                return SolveResult(
                    True, combo, explored, desc_value=size if k is None else None
                )
    return SolveResult(False, None, explored)


class _Search:
    """Depth-first search over deletion sets, with adjacency edited in place.

    Deletion sets are bitmasks over ``arcs`` (sorted), so bit order is
    lexicographic arc order.
    """

    def __init__(self, g: Digraph):
        self.n = g.n
        self.arcs = g.sorted_arcs()
        self.arc_id = {a: i for i, a in enumerate(self.arcs)}
        self.out = list(g.out_mask)
        self.inn = list(g.in_mask)
        self.explored = 0
        self.seen: set[int] = set()

    def delete(self, i: int) -> None:
        u, v = self.arcs[i]
        self.out[u] &= ~(1 << v)
        self.inn[v] &= ~(1 << u)

    def restore(self, i: int) -> None:
        u, v = self.arcs[i]
        self.out[u] |= 1 << v
        self.inn[v] |= 1 << u

    def branch_arcs(self) -> tuple[int, list[int]]:
        """Number of non-Eulerian components and the arcs inside the one to split."""
        bad = unbalanced_component_masks(self.n, self.out, self.inn)
        if not bad:
            return 0, []
        # Smallest component, ties by smallest vertex (bad is ordered by it).
        comp = min(bad, key=lambda c: c.bit_count())
        ids = []
        for u in range(self.n):
            if comp >> u & 1:
                inside = self.out[u] & comp
                v = 0
                while inside:
                    if inside & 1:
                        ids.append(self.arc_id[(u, v)])
                    inside >>= 1
                    v += 1
        return len(bad), ids

    def dfs(self, deleted: int, left: int) -> Optional[int]:
        self.explored += 1
        nbad, ids = self.branch_arcs()
        if nbad == 0:
            return deleted
        # Each non-Eulerian component needs its own internal deletion.
        if nbad > left:
            return None
        for i in ids:
            nxt = deleted | 1 << i
            if nxt in self.seen:
                continue
            self.seen.add(nxt)
            self.delete(i)
            found = self.dfs(nxt, left - 1)
            self.restore(i)
            if found is not None:
                return found
        return None

    def certificate(self, deleted: int) -> tuple[Arc, ...]:
        return tuple(a for i, a in enumerate(self.arcs) if deleted >> i & 1)


def _subtree(g: Digraph, first: int, left: int) -> tuple[Optional[tuple[Arc, ...]], int]:
    search = _Search(g)
    search.delete(first)
    found = search.dfs(1 << first, left)
    return (None if found is None else search.certificate(found)), search.explored


def _level(
    g: Digraph, depth: int, pool: ProcessPoolExecutor | None
) -> tuple[Optional[tuple[Arc, ...]], int]:
    """One iterative-deepening round.

    The memo is scoped to each root branch, so the node count is the same
    whether or not branches run in parallel.
    """
    nbad, ids = _Search(g).branch_arcs()
    if nbad == 0:
        return (), 1
    if nbad > depth:
        return None, 1
    explored = 1
    if pool is None:
        for i in ids:
            found, n = _subtree(g, i, depth - 1)
            explored += n
            if found is not None:
                return found, explored
        return None, explored
    futures = [pool.submit(_subtree, g, i, depth - 1) for i in ids]
    for fut in futures:
        found, n = fut.result()
        explored += n
        if found is not None:
            for rest in futures:
                rest.cancel()
            return found, explored
    return None, explored


def desc_branch(
    g: Digraph, k: int | None, *, parallel: bool = False, workers: int | None = None
) -> SolveResult:
    """Iterative deepening over budgets ``0..k`` (unbounded when ``k`` is None).

    The certificate is the first one met in depth-first order, with branches
    taken in lexicographic arc order; parallel mode returns the same one.
    """
    explored = 0
    pool = ProcessPoolExecutor(max_workers=workers) if parallel else None
    try:
        depths = count() if k is None else range(k + 1)
        for depth in depths:
            found, n = _level(g, depth, pool)
            explored += n
            if found is not None:
                return SolveResult(True, found, explored, desc_value=depth if k is None else None)
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    return SolveResult(False, None, explored)


def _solve_kernel(kernel: Kernel, original: Instance, parallel: bool) -> SolveResult:
    kinst = kernel.instance
    res = desc_branch(kinst.graph, kinst.budget, parallel=parallel)
    if not res.yes:
        return SolveResult(False, None, res.explored, kernel=kernel)
    lifted = tuple(lift_certificate(original, kernel, res.certificate))
    if len(lifted) > original.budget or not is_desc_set(original.graph, lifted):
        # Lifting is expected to work; fall back to a direct search if it does not.
        direct = desc_branch(original.graph, original.budget, parallel=parallel)
        if not direct.yes:
            raise AssertionError("kernel answered YES but the original instance is NO")
        return SolveResult(True, direct.certificate, res.explored + direct.explored, kernel=kernel)
    return SolveResult(True, lifted, res.explored, kernel=kernel)


def solve(inst: Instance, *, optimize: bool = False, parallel: bool = False) -> SolveResult:
    """Decide ``desc(T) <= k`` via kernelization and branching on the kernel.

    With ``optimize`` the budget is ignored and ``desc(T)`` itself is found by
    solving with budgets 0, 1, 2, ...; ``yes`` then reports ``desc <= k``.
    """
    if optimize:
        explored = 0
        for b in count():
            res = solve(Instance(inst.graph, b), parallel=parallel)
            explored += res.explored
            if res.yes:
                yes = b <= inst.budget
                return SolveResult(
                    yes,
                    res.certificate if yes else None,
                    explored,
                    desc_value=b,
                    kernel=kernelize(inst),
                )
    outcome = kernelize(inst)
    if isinstance(outcome, DecidedNo):
        return SolveResult(False, None, 0, kernel=outcome)
    res = _solve_kernel(outcome, inst, parallel)
    if res.yes:
        _check_certificate(inst.graph, inst.budget, res.certificate)
    return res
