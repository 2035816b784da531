"""Exact solving and kernelization for deleting arcs of a tournament until
every strong component is Eulerian."""

from .balance import BalanceResult, min_balancing_deletion, min_balancing_deletion_bruteforce
from .digraph import (
    Condensation,
    Digraph,
    GraphError,
    Instance,
    delete_arcs,
    excess,
    induced,
    is_balanced,
    is_desc_set,
    is_eulerian,
    is_tournament,
    strong_components,
)
from .generator import planted_instance, random_tournament, rotational_tournament
from .kernel import DecidedNo, Kernel, NotATournament, kernelize, lift_certificate, q_partition, replay
from .solver import SolveResult, desc_branch, desc_bruteforce, solve

__all__ = [
    "BalanceResult",
    "Condensation",
    "DecidedNo",
    "Digraph",
    "GraphError",
    "Instance",
    "Kernel",
    "NotATournament",
    "SolveResult",
    "delete_arcs",
    "desc_branch",
    "desc_bruteforce",
    "excess",
    "induced",
    "is_balanced",
    "is_desc_set",
    "is_eulerian",
    "is_tournament",
    "kernelize",
    "lift_certificate",
    "min_balancing_deletion",
    "min_balancing_deletion_bruteforce",
    "planted_instance",
    "q_partition",
    "random_tournament",
    "replay",
    "rotational_tournament",
    "solve",
    "strong_components",
]
