from tspgcn.oracle.construction_solver import (
    INSERTION_RULES,
    InsertionSolver,
    NearestNeighborSolver,
    insertion,
    nearest_neighbor,
)
from tspgcn.oracle.exact_solver import (
    BRUTE_FORCE_MAX_N,
    HELD_KARP_DEFAULT_CAP,
    BruteForceSolver,
    HeldKarpSolver,
    solve_brute_force,
    solve_held_karp,
)
from tspgcn.oracle.local_search import TwoOptSolver, two_opt
from tspgcn.oracle.solver import Solver

__all__ = [
    "BRUTE_FORCE_MAX_N",
    "HELD_KARP_DEFAULT_CAP",
    "INSERTION_RULES",
    "BruteForceSolver",
    "HeldKarpSolver",
    "InsertionSolver",
    "NearestNeighborSolver",
    "Solver",
    "TwoOptSolver",
    "insertion",
    "nearest_neighbor",
    "solve_brute_force",
    "solve_held_karp",
    "two_opt",
]
