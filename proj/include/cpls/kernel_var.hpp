#pragma once

#include <map>
#include <optional>

#include "cpls/model.hpp"

namespace cpls {

// Core set and neighborhood types for the vertex-cover kernels.
struct VarKernelContext {
    std::vector<Vertex> cover;  // X
    std::vector<Vertex> core;   // X plus all vertices of degree >= 3, sorted
    std::map<std::vector<Vertex>, std::vector<Vertex>> types;  // Q -> T_Q
    std::vector<Vertex> t0, t1, t2;
    int p{0};  // |core|
};

VarKernelContext build_context(const Graph& g, const std::vector<Vertex>& cover);

// 2-approximation via a maximal matching.
std::vector<Vertex> approx_vertex_cover(const Graph& g);
// exact minimum cover (small instances, used by tests)
std::vector<Vertex> min_vertex_cover(const Graph& g);

enum class RuleOutcome { PASS, REDUCED, NO };
struct RuleResult {
    RuleOutcome outcome{RuleOutcome::PASS};
    ProblemInstance inst;  // meaningful when REDUCED
};

struct VarKernelThresholds {
    int isolated_factor{60};   // reject when |T2| >= factor*p + 1
    int pend2_factor{6};       // size-2-cluster pendant rule threshold 6|V(G2)|+2
    int pend2_const{2};
    int pend3_factor{15};      // size->=3-cluster pendant bound 15|V(G2)|+1
    int pend3_const{1};
};

// T0 removal plus per-(type, cluster) multiplicity caps (1 in T1, 3 in T2),
// applied to exhaustion.
RuleResult reduce_multiplicity(const ProblemInstance& inst, const std::vector<Vertex>& cover);

// Removes one of any two Q-isolated clusters; afterwards a too-large T2
// without an isolated pair rejects the instance.
RuleResult handle_isolated(const ProblemInstance& inst, const std::vector<Vertex>& cover,
                           const VarKernelThresholds& th = {});

// Pendant rules: singleton clusters, the size-2 auxiliary-graph rule and the
// size->=3 bound.
RuleResult reduce_pendants(const ProblemInstance& inst, const std::vector<Vertex>& cover,
                           const VarKernelThresholds& th = {});

struct KernelOutcome {
    std::optional<bool> answer;  // set when decided during kernelization
    ProblemInstance inst;        // the reduced instance otherwise
    int cover_size{0};
};

KernelOutcome kernelize_variable(const ProblemInstance& inst, const VarKernelThresholds& th = {});

// Deletes the given vertices, remapping ids densely and dropping emptied
// clusters (shared helper of both kernels).
ProblemInstance delete_vertices(const ProblemInstance& inst, const std::vector<Vertex>& del);

}  // namespace cpls
