#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cpls/graph.hpp"

namespace cpls {

struct RotationSystem;
struct EmbeddedGraph;

enum class Mode { VAR, FIXED };
enum class Variant { INDEPENDENT, COMPLETION };

// Graph plus a flat clustering and an optional set of marked vertices
// (no new edge may be attached to a marked vertex).
struct ClusteredGraph {
    Graph g;
    std::vector<std::vector<Vertex>> clusters;  // disjoint, cover all vertices
    std::vector<Vertex> marked;                 // sorted

    int cluster_of(Vertex v) const {
        for (size_t i = 0; i < clusters.size(); ++i)
            for (Vertex w : clusters[i])
                if (w == v) return static_cast<int>(i);
        return -1;
    }

    std::vector<int> cluster_index() const {
        std::vector<int> idx(g.num_vertices(), -1);
        for (size_t i = 0; i < clusters.size(); ++i)
            for (Vertex v : clusters[i])
                if (v >= 0 && v < g.num_vertices()) idx[v] = static_cast<int>(i);
        return idx;
    }

    bool is_marked(Vertex v) const {
        return std::binary_search(marked.begin(), marked.end(), v);
    }
};

struct ProblemInstance {
    ClusteredGraph cg;
    Mode mode{Mode::VAR};
    Variant variant{Variant::COMPLETION};
    std::shared_ptr<EmbeddedGraph> embedding;  // required iff mode == FIXED

    const Graph& graph() const { return cg.g; }
    int n() const { return cg.g.num_vertices(); }
};

// Per-cluster saturating edge sets Z_i plus an optional planarity witness.
struct SaturationSolution {
    std::vector<std::vector<Edge>> z_sets;  // one entry per cluster
    std::shared_ptr<RotationSystem> witness;

    std::vector<Edge> all_edges() const {
        std::vector<Edge> out;
        for (const auto& zs : z_sets) out.insert(out.end(), zs.begin(), zs.end());
        std::sort(out.begin(), out.end());
        return out;
    }
};

struct Violation {
    std::string rule;     // name of the failing invariant
    std::string witness;  // human-readable culprit description
};

std::vector<Violation> validate_instance(const ProblemInstance& inst);

struct VerifyResult {
    bool ok{false};
    std::string reason;  // empty when ok
};

// Checks (i) planarity / embedding extension, (ii) Z_i intra-cluster,
// (iii) each H[V_i] a single path, (iv) marked vertices untouched.
VerifyResult verify_solution(const ProblemInstance& inst, const SaturationSolution& sol);

// True iff the induced graph on `cluster` with the given extra edges is a
// single path (a 1-vertex cluster counts, so does an empty one).
bool is_cluster_path(const Graph& g, const std::vector<Vertex>& cluster,
                     const std::vector<Edge>& extra);

}  // namespace cpls
