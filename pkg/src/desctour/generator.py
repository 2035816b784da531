"""Seeded instance generators.

Randomness comes from numpy's PCG64 bit generator (PCG XSL-RR 128/64),
seeded through ``numpy.random.SeedSequence(seed)`` and read with
``random_raw()``, i.e. plain 64-bit words. Only the raw stream is used, never
numpy's distribution methods, so the output is pinned by the PCG64 algorithm
itself and is the same on every platform.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .digraph import Arc, Digraph

SEED_MASK = (1 << 64) - 1


class _Stream:
    def __init__(self, seed: int):
        if not 0 <= seed <= SEED_MASK:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self._bits = np.random.PCG64(seed)

    def next_u64(self) -> int:
        return int(self._bits.random_raw())

    def below(self, bound: int) -> int:
        # Modulo reduction; the bias is below 2**-40 for the bounds used here.
        return self.next_u64() % bound


def random_tournament(n: int, seed: int) -> Digraph:
    """Uniform random tournament: one draw per pair ``u < v`` in lexicographic order.

    The top bit of the draw decides the orientation (set means ``v -> u``).
    """
    if n < 1:
        raise ValueError("a tournament needs at least one vertex")
    stream = _Stream(seed)
    arcs = []
    for u, v in combinations(range(n), 2):
        arcs.append((v, u) if stream.next_u64() >> 63 else (u, v))
    return Digraph(n, arcs)


def rotational_arcs(n: int, offset: int = 0) -> list[Arc]:
    half = (n - 1) // 2
    return [(offset + i, offset + (i + j) % n) for i in range(n) for j in range(1, half + 1)]


def rotational_tournament(n: int) -> Digraph:
    """Regular tournament where ``i`` beats ``i+1 .. i+(n-1)/2`` modulo ``n``."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"rotational tournaments need an odd order, got {n}")
    return Digraph(n, rotational_arcs(n))


def planted_instance(n1: int, n2: int, r: int, seed: int) -> tuple[Digraph, int]:
    """Two rotational tournaments, the first beating the second, with ``r``
    cross arcs reversed.

    Vertices ``0..n1-1`` hold the first block. The reversed arcs are picked by
    a partial Fisher-Yates shuffle of the cross pairs in lexicographic order.
    Deleting them leaves two Eulerian components, so ``r`` bounds the optimum.
    """
    for m in (n1, n2):
        if m < 1 or m % 2 == 0:
            raise ValueError(f"planted blocks need odd orders, got {m}")
    cross = [(u, n1 + w) for u in range(n1) for w in range(n2)]
    if not 0 <= r <= len(cross):
        raise ValueError(f"cannot reverse {r} of {len(cross)} cross arcs")
    stream = _Stream(seed)
    for t in range(r):
        j = t + stream.below(len(cross) - t)
        cross[t], cross[j] = cross[j], cross[t]
    flipped = set(cross[:r])
    arcs = rotational_arcs(n1) + rotational_arcs(n2, offset=n1)
    arcs += [(v, u) if (u, v) in flipped else (u, v) for u, v in sorted(cross)]
    return Digraph(n1 + n2, arcs), r
