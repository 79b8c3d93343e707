#pragma once

#include <map>
#include <optional>

#include "cpls/embedding.hpp"
#include "cpls/kernel_var.hpp"
#include "cpls/model.hpp"

namespace cpls {

// Core + T2 sub-drawing with face classification and bricks.
struct FixedKernelContext {
    std::vector<Vertex> cover, core;
    std::vector<Vertex> t0, t1, t2;
    Graph g2;               // induced on core u T2 (parent ids, non-members isolated)
    RotationSystem d2_rot;  // restriction of the instance drawing to G2
    FaceMap d2;             // faces of the restriction
    std::vector<bool> special;      // per D2 face: incident to > 2 core vertices
    std::vector<int> small_face;    // per vertex: hosting D2 face for T0/T1, -1 otherwise

    struct Brick {
        Vertex a{-1}, b{-1};
        std::vector<int> faces;     // consecutive C4-clean faces
        std::vector<Vertex> chain;  // t2 chain, faces[i] has {chain[i], chain[i+1]}
        bool degenerate{false};     // cyclic run
    };
    std::vector<Brick> bricks;

    int alpha{0};  // |V(G2)|
    int beta{0};   // number of D2 faces
    int k{0};      // cover size
};

FixedKernelContext build_fixed_context(const ProblemInstance& inst,
                                       const std::vector<Vertex>& cover);

struct FixedKernelThresholds {
    int t2_factor{420};  // rule triggers at |T2| >= factor*k + 1
    int window{16};      // clean-face window searched in a brick
    int pendant_cap{-1};  // per-(a,f,cluster) pendant cap; default 2k+3
};

// Lemma-style T2 reduction: finds a window of clean faces in a brick and
// either deletes one T2 vertex or rejects.
RuleResult rule_reduce_t2_fixed(const ProblemInstance& inst, const std::vector<Vertex>& cover,
                                const FixedKernelThresholds& th = {});

// Types of clusters disjoint from V(G2); rejects clusters spread over
// several faces.
struct TypeKey {
    int face{-1};
    std::vector<Vertex> anchors;
    bool operator<(const TypeKey& o) const {
        return face < o.face || (face == o.face && anchors < o.anchors);
    }
};
struct TypesResult {
    bool no{false};
    std::map<TypeKey, std::vector<int>> clusters_by_type;  // cluster indices
};
TypesResult compute_types(const FixedKernelContext& ctx, const ProblemInstance& inst);

// |tau| <= 7*alpha + 8*beta plus the planar-enhancement check for types with
// two anchors.
RuleOutcome rule_bound_types(const FixedKernelContext& ctx, const ProblemInstance& inst);

// Three same-type clusters: rainbow case analysis; deletes pendants or rejects.
RuleResult rule_dedupe_same_type(const ProblemInstance& inst, const std::vector<Vertex>& cover);

// Cap on same-cluster pendants attached to one vertex inside one face.
RuleResult rule_cap_cluster_pendants(const ProblemInstance& inst,
                                     const std::vector<Vertex>& cover, Vertex a, int face,
                                     int cluster, const FixedKernelThresholds& th = {});

KernelOutcome kernelize_fixed(const ProblemInstance& inst, const FixedKernelThresholds& th = {});

// Vertex deletion preserving the embedding and nesting data. Requires that
// no deletion splits a component.
ProblemInstance delete_vertices_fixed(const ProblemInstance& inst,
                                      const std::vector<Vertex>& del);

}  // namespace cpls
