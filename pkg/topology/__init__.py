from topology.adjacency import (
    Adjacency,
    boundary_oracle,
    determine_constraints,
    find_neighbors,
    isolated_vertices,
    non_manifold_edges,
)
