#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "cpls/model.hpp"

namespace cpls {

struct GenOptions {
    int n{6};
    int cluster_count{3};
    uint64_t seed{1};
    Variant variant{Variant::COMPLETION};
    Mode mode{Mode::VAR};
    double edge_keep{0.55};
    bool force_connected{false};
    int retry_budget{300};
};

// Seed-deterministic random instance: random triangulation, edge
// subsampling, cluster resampling until the variant constraint holds.
// FIXED instances carry the drawing's rotation system and nesting data.
ProblemInstance gen_random(const GenOptions& opt);

// The two 8-vertex hardness gadgets and their attachment. Vertex roles are
// returned by name for debuggability.
struct PQMerge {
    Graph g;
    std::map<std::string, Vertex> names;  // alpha,beta,psi,omega,bstar,rstar, lambda,mu,nu,chi,bdia,rdia
};

// Attach the originating gadget at (b_t, r_s) and the traversing gadget at
// (b_s, r_t); adds 12 vertices.
PQMerge pq_merge(const Graph& w, Vertex b_s, Vertex b_t, Vertex r_s, Vertex r_t);

// Reduction from B2PBE-PE to 3-cluster saturation instances.
struct ReductionResult {
    ProblemInstance inst;
    std::map<std::string, Vertex> names;
};
ReductionResult reduce_b2pbe_to_cpls3(const Graph& bip, const std::vector<int>& color,
                                      const std::array<Vertex, 4>& quad);

// Remove intra-cluster edges from a c-graph whose clusters induce cliques.
ProblemInstance strip_cliques(const ClusteredGraph& cg);

// Replace edge (u,v) by pendants u-u' and v-v' with {u',v'} a new cluster.
ProblemInstance subdivide_edge_split(const ProblemInstance& inst, const Edge& e);

}  // namespace cpls
