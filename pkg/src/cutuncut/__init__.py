"""Solvers for xor-constrained shortest paths and planar two-sets cut-uncut.

The core engine finds shortest s-t-paths (and cycles) in group-labeled
multigraphs under a prescribed label sum and visit-at-most-once vertex
sets, by randomized polynomial identity testing over GF(2^w).  On top of
it sit two planar cut solvers (separating two terminal sets while
keeping each connected), network diversion, and face-constrained
shortest interior paths.
"""

from .graphs import (Multigraph, Cut, build_multigraph, cut_set,
                     connected_components, cut_vertices,
                     spanning_tree_pruned, tree_path, subdivide_to_simple)
from .gf2 import Field, field, field_for_size
from .planar import (PlaneEmbedding, DualGraph, FaceCover, NonPlanarError,
                     embed, embedding_from_coordinates, dual, face_cover,
                     crossing_parity)
from .xorpath import (XorPathInstance, SolverConfig, SolverError,
                      PathWitness, CycleWitness, evaluate_polynomial,
                      dp_state_count, shortest_xor_path,
                      shortest_xor_path_length, shortest_xor_cycle)
from .solver import (CutUncutInstance, Resolved, Reduced, Labeling,
                     preprocess_biconnect, build_labels, cycle_to_cut,
                     solve_by_terminals, solve_by_face_cover, solve)
from .applications import (network_diversion, generalized_network_diversion,
                           face_constrained_path)

__all__ = [name for name in dir() if not name.startswith("_")]
