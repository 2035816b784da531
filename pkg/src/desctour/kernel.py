"""Polynomial kernel for Eulerian-strong-component arc deletion on tournaments.

Reduction rules, applied by :func:`kernelize` in a fixed order:

1. Drop every strong component that is already Eulerian.
2. Sort vertices by out-degree and cut the order into blocks ``Q_1..Q_s``
   whose internal out-degree spread is at most ``k``. A block with at least
   ``4k+3`` vertices forms, together with its degree-neighbourhood ``W_i``,
   exactly one strong component of every small solution. Arcs leaving that
   component the wrong way are forced deletions; the inside only needs to be
   balanced, which the min-cost-flow routine does optimally. ``W_i`` is then
   removed.
3. An arc from ``Q_j`` back to ``Q_i`` with ``j >= i + 2`` belongs to every
   solution; such arcs go into the set ``B``.
4. With ``s`` surviving blocks each solution needs at least ``s/4``
   deletions, so ``s > 4k`` means NO.
5. ``B``-arcs whose endpoints both survive are put back (with budget) so the
   kernel is a tournament again.

All thresholds use the budget current at the moment a rule fires. Every step
is recorded in a :class:`ReductionTrace` in original vertex ids, so the kernel
can be replayed from the input and kernel certificates lifted back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from .balance import min_balancing_deletion
from .digraph import (
    Arc,
    Digraph,
    GraphError,
    Instance,
    add_arcs,
    delete_arcs,
    induced,
    is_desc_set,
    is_tournament,
    non_eulerian_components,
    strong_components,
)


class NotATournament(GraphError):
    pass


# Trace steps. Vertices and arcs are always in original ids.


@dataclass(frozen=True)
class RemovedEulerianComponent:
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class ForcedDeletion:
    arc: Arc
    reason: str  # "w_block_crossing" or "far_arc"


@dataclass(frozen=True)
class BalancedBlock:
    """Balancing arcs deleted inside ``W_i``; the block's vertices are then removed."""

    vertices: tuple[int, ...]
    deleted: tuple[Arc, ...]


@dataclass(frozen=True)
class ReversedArc:
    """Forced deletion of ``arc`` whose reverse is inserted for free.

    Used for arcs running from below a wide block to above it. Once they are
    gone every remaining arc between the two sides points downwards, so the
    reverse can never close a cycle and keeps the graph a tournament.
    """

    arc: Arc


@dataclass(frozen=True)
class ReAddedArc:
    arc: Arc


Step = Union[RemovedEulerianComponent, ForcedDeletion, BalancedBlock, ReversedArc, ReAddedArc]


@dataclass
class ReductionTrace:
    steps: list[Step] = field(default_factory=list)
    set_b: set[Arc] = field(default_factory=set)
    budget_log: list[int] = field(default_factory=list)

    def record(self, step: Step, budget: int) -> None:
        self.steps.append(step)
        self.budget_log.append(budget)

    def count(self, kind: type, reason: str | None = None) -> int:
        return sum(
            1 for s in self.steps if isinstance(s, kind) and (reason is None or s.reason == reason)
        )

    def summary(self) -> dict[str, int]:
        return {
            "eulerian_components_removed": self.count(RemovedEulerianComponent),
            "wide_blocks_reduced": self.count(BalancedBlock),
            "w_block_crossing_deletions": self.count(ForcedDeletion, "w_block_crossing"),
            "w_block_reversals": self.count(ReversedArc),
            "balancing_deletions": sum(
                len(s.deleted) for s in self.steps if isinstance(s, BalancedBlock)
            ),
            "far_arc_deletions": self.count(ForcedDeletion, "far_arc"),
            "readded_arcs": self.count(ReAddedArc),
        }


@dataclass(frozen=True)
class DecidedNo:
    reason: str


@dataclass(frozen=True)
class Kernel:
    instance: Instance
    trace: ReductionTrace
    original_budget: int
    labels: tuple[int, ...]  # kernel vertex -> original vertex

    @property
    def bound(self) -> int:
        return size_bound(self.original_budget)


KernelOutcome = Union[DecidedNo, Kernel]


def size_bound(k: int) -> int:
    return 4 * k * (4 * k + 2)


@dataclass(frozen=True)
class QPartition:
    """Out-degree blocks of the sorted vertex order.

    ``order`` lists vertices by out-degree, non-increasing, ties by id.
    ``blocks[i] = (x, y)`` are 0-based inclusive positions in ``order``.
    """

    order: tuple[int, ...]
    degrees: tuple[int, ...]  # out-degree of order[r]
    blocks: tuple[tuple[int, int], ...]
    k: int

    @property
    def s(self) -> int:
        return len(self.blocks)

    def block(self, i: int) -> list[int]:
        x, y = self.blocks[i]
        return list(self.order[x : y + 1])

    def block_of(self) -> dict[int, int]:
        out = {}
        for i, (x, y) in enumerate(self.blocks):
            for r in range(x, y + 1):
                out[self.order[r]] = i
        return out

    def wide_block(self, i: int) -> tuple[int, list[int]]:
        """``(z, members)`` with ``members = order[z..y_i]``.

        ``z`` is the first position whose degree is within ``k`` of the
        lowest degree in block ``i``.
        """
        _, y = self.blocks[i]
        z = next(r for r in range(y + 1) if self.degrees[r] - self.degrees[y] <= self.k)
        return z, list(self.order[z : y + 1])


def q_partition(g: Digraph, k: int) -> QPartition:
    if k < 0:
        raise ValueError("k must be nonnegative")
    deg = g.out_degrees()
    order = tuple(sorted(range(g.n), key=lambda v: (-deg[v], v)))
    degrees = tuple(deg[v] for v in order)
    blocks = []
    x = 0
    while x < g.n:
        y = x
        while y + 1 < g.n and degrees[x] - degrees[y + 1] <= k:
            y += 1
        blocks.append((x, y))
        x = y + 1
    return QPartition(order, degrees, tuple(blocks), k)


class Kernelizer:
    """Mutable driver state: the current instance plus id labels and trace."""

    def __init__(self, inst: Instance):
        if not is_tournament(inst.graph):
            raise NotATournament("input digraph is not a tournament")
        self.original = inst
        self.graph = inst.graph
        self.k = inst.budget
        self.labels = list(range(inst.graph.n))
        self.trace = ReductionTrace()

    @property
    def instance(self) -> Instance:
        return Instance(self.graph, max(self.k, 0))

    def _orig(self, arc: Arc) -> Arc:
        return (self.labels[arc[0]], self.labels[arc[1]])

    def _drop_vertices(self, gone: Iterable[int]) -> None:
        gone = set(gone)
        keep = [v for v in range(self.graph.n) if v not in gone]
        dropped = {self.labels[v] for v in gone}
        self.graph, ids = induced(self.graph, keep)
        self.labels = [self.labels[v] for v in ids]
        self.trace.set_b = {a for a in self.trace.set_b if a[0] not in dropped and a[1] not in dropped}

    def _delete(self, arcs: list[Arc], reason: str) -> None:
        self.graph = delete_arcs(self.graph, arcs)
        for a in arcs:
            self.k -= 1
            orig = self._orig(a)
            if reason == "far_arc":
                self.trace.set_b.add(orig)
            self.trace.record(ForcedDeletion(orig, reason), self.k)

    def remove_eulerian_components(self) -> None:
        # One pass suffices: dropping whole components never changes the others.
        cond = strong_components(self.graph)
        bad = set(non_eulerian_components(self.graph, cond))
        gone = []
        for comp in cond.components:
            if comp in bad:
                continue
            gone.extend(comp)
            self.trace.record(
                RemovedEulerianComponent(tuple(sorted(self.labels[v] for v in comp))), self.k
            )
        if gone:
            self._drop_vertices(gone)

    def q_partition(self) -> QPartition:
        # Block positions refer to the graph the partition was taken on.
        self._qp_labels = list(self.labels)
        return q_partition(self.graph, self.k)

    def reduce_wide_block(self, qp: QPartition, i: int) -> DecidedNo | None:
        x, y = qp.blocks[i]
        assert y - x + 1 >= 4 * self.k + 3, "block is not wide"
        z, members = qp.wide_block(i)
        before = set(qp.order[:z])
        after = set(qp.order[y + 1 :])
        inside = set(members)
        crossing = sorted(
            (u, v)
            for u, v in self.graph.arcs
            if (u in inside and v in before) or (u in after and v in inside)
        )
        upward = sorted((u, v) for u, v in self.graph.arcs if u in after and v in before)
        if len(crossing) + len(upward) > self.k:
            return DecidedNo("budget exhausted by forced deletions")
        self._delete(crossing, "w_block_crossing")
        self.graph = add_arcs(delete_arcs(self.graph, upward), [(v, u) for u, v in upward])
        for a in upward:
            self.k -= 1
            self.trace.record(ReversedArc(self._orig(a)), self.k)

        sub, ids = induced(self.graph, members)
        result = min_balancing_deletion(sub)
        if result.size > self.k:
            return DecidedNo("budget exhausted by balancing a wide block")
        self.k -= result.size
        deleted = tuple(sorted(self._orig((ids[u], ids[v])) for u, v in result.deleted))
        self.graph = delete_arcs(self.graph, [(ids[u], ids[v]) for u, v in result.deleted])
        self.trace.record(BalancedBlock(tuple(sorted(self.labels[v] for v in members)), deleted), self.k)
        self._drop_vertices(members)
        return None

    def reduce_far_arcs(self, qp: QPartition) -> DecidedNo | None:
        block = qp.block_of()
        far = sorted((u, v) for u, v in self.graph.arcs if block[u] >= block[v] + 2)
        if len(far) > self.k:
            return DecidedNo("budget exhausted by far arcs")
        self._delete(far, "far_arc")
        return None

    def bound_check(self, qp: QPartition) -> DecidedNo | None:
        # Count only blocks that still hold a vertex; Eulerian components
        # removed after the partition was taken need no deletions.
        alive = set(self.labels)
        s = sum(
            1 for i in range(qp.s) if any(self._qp_labels[v] in alive for v in qp.block(i))
        )
        if s > 4 * self.k:
            return DecidedNo(f"{s} degree blocks need more than {self.k} deletions")
        return None

    def finalize(self) -> Kernel:
        where = {orig: v for v, orig in enumerate(self.labels)}
        back = []
        for a in sorted(self.trace.set_b):
            back.append((where[a[0]], where[a[1]]))
        self.graph = add_arcs(self.graph, back)
        for a in back:
            self.k += 1
            self.trace.record(ReAddedArc(self._orig(a)), self.k)
        self.trace.set_b = set()
        k0 = self.original.budget
        assert is_tournament(self.graph), "kernel is not a tournament"
        assert self.graph.n <= size_bound(k0), "kernel exceeds the size bound"
        assert 0 <= self.k <= k0
        return Kernel(Instance(self.graph, self.k), self.trace, k0, tuple(self.labels))

    def run(self) -> KernelOutcome:
        while True:
            self.remove_eulerian_components()
            qp = self.q_partition()
            wide = [i for i, (x, y) in enumerate(qp.blocks) if y - x + 1 >= 4 * self.k + 3]
            if not wide:
                break
            no = self.reduce_wide_block(qp, wide[0])
            if no is not None:
                return no
        no = self.reduce_far_arcs(qp)
        if no is not None:
            return no
        self.remove_eulerian_components()
        no = self.bound_check(qp)
        if no is not None:
            return no
        return self.finalize()


def kernelize(inst: Instance) -> KernelOutcome:
    return Kernelizer(inst).run()


def _replay_arcs(inst: Instance, trace: ReductionTrace) -> tuple[set[Arc], set[int], int]:
    arcs = set(inst.graph.arcs)
    alive = set(range(inst.graph.n))
    k = inst.budget
    for step in trace.steps:
        if isinstance(step, RemovedEulerianComponent):
            alive -= set(step.vertices)
        elif isinstance(step, ForcedDeletion):
            arcs.remove(step.arc)
            k -= 1
        elif isinstance(step, BalancedBlock):
            arcs -= set(step.deleted)
            k -= len(step.deleted)
            alive -= set(step.vertices)
        elif isinstance(step, ReversedArc):
            arcs.remove(step.arc)
            arcs.add(step.arc[::-1])
            k -= 1
        elif isinstance(step, ReAddedArc):
            arcs.add(step.arc)
            k += 1
    return arcs, alive, k


def replay(inst: Instance, trace: ReductionTrace) -> tuple[Instance, tuple[int, ...]]:
    """Apply ``trace`` to the original instance; returns the kernel and its labels."""
    arcs, alive, k = _replay_arcs(inst, trace)
    g, labels = induced(Digraph(inst.graph.n, arcs), alive)
    return Instance(g, k), tuple(labels)


def lift_certificate(original: Instance, kernel: Kernel, certificate: Iterable[Arc]) -> list[Arc]:
    """Translate a kernel DESC-set into an arc set of the original tournament.

    Replays the reductions, deletes the kernel certificate, and reports every
    original arc that is gone. Arcs of removed parts stay as they were when
    the part was removed. Callers still check the result with ``is_desc_set``.
    """
    arcs, _, _ = _replay_arcs(original, kernel.trace)
    arcs -= {(kernel.labels[u], kernel.labels[v]) for u, v in certificate}
    return sorted(original.graph.arcs - arcs)
