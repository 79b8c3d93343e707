#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cpls/model.hpp"
#include "cpls/noose.hpp"

namespace cpls {

// Ground-truth solver: backtracks over per-cluster arrangements (orders and
// orientations of the cluster's path fragments) with incremental planarity
// pruning. Refuses instances above the cap.
std::optional<SaturationSolution> oracle_solve(const ProblemInstance& inst, int cap = 10);

// Independent route for cross-checking: raw enumeration of intra-cluster
// non-edge subsets.
std::optional<SaturationSolution> oracle_solve_by_edge_subsets(const ProblemInstance& inst,
                                                               int cap = 6);

// Path fragments of each cluster (a single vertex is a fragment of length 1).
std::vector<std::vector<std::vector<Vertex>>> cluster_fragments(const ProblemInstance& inst);

// Brute force over the vertex-region incidence structure: all combinatorial
// (U,rho)-nooses, canonicalized. Ground truth for get_nooses.
std::vector<Noose> oracle_nooses(const EmbeddedGraph& eg, const std::vector<Vertex>& u,
                                 const std::vector<Vertex>& rho);

// Hamiltonian cycle witnessing a bipartite 2-page book embedding: traverses
// all black vertices consecutively, then all red ones.
struct Connector {
    std::vector<Vertex> cycle;  // b_s .. b_t r_s .. r_t
    Vertex b_s{-1}, b_t{-1}, r_s{-1}, r_t{-1};
};

// Decider for Bipartite 2-Page Book Embedding with Prescribed End-vertices:
// some spine order (black block then red block, endpoints pinned) admits a
// two-page edge assignment without same-page interleavings.
bool oracle_b2pbe_pe(const Graph& g, const std::vector<int>& color,
                     const std::array<Vertex, 4>& quad, int cap = 8);

// The connector produced by a positive B2PBE-PE spine order, if any.
std::optional<Connector> b2pbe_connector(const Graph& g, const std::vector<int>& color,
                                         const std::array<Vertex, 4>& quad, int cap = 8);

}  // namespace cpls
