#pragma once

#include <optional>
#include <vector>

#include "cpls/embedding.hpp"
#include "cpls/model.hpp"

namespace cpls {

// Cyclic order rho of a boundary set U, stored as one representative order.
struct BoundaryCycle {
    std::vector<Vertex> order;

    int size() const { return static_cast<int>(order.size()); }
    int pos_of(Vertex v) const {
        for (size_t i = 0; i < order.size(); ++i)
            if (order[i] == v) return static_cast<int>(i);
        return -1;
    }
};

// (M, P, D): non-crossing same-cluster boundary matching, pendant exits,
// and pass-through vertices. All fields sorted.
struct MatPenDelTriple {
    std::vector<Edge> m;
    std::vector<Vertex> p, d;

    std::vector<Vertex> matched_vertices() const {
        std::vector<Vertex> vs;
        for (const Edge& e : m) {
            vs.push_back(e.u);
            vs.push_back(e.v);
        }
        std::sort(vs.begin(), vs.end());
        return vs;
    }
    bool operator==(const MatPenDelTriple& o) const { return m == o.m && p == o.p && d == o.d; }
    bool operator<(const MatPenDelTriple& o) const {
        if (m.size() != o.m.size()) return m.size() < o.m.size();
        if (m != o.m) return m < o.m;
        if (p != o.p) return p < o.p;
        return d < o.d;
    }
};

struct ClusterPath {
    std::vector<Vertex> verts;  // in path order
    int cluster{-1};
};

struct PartialSolution {
    std::vector<ClusterPath> paths;  // vertex-disjoint

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (const auto& p : paths)
            for (size_t i = 0; i + 1 < p.verts.size(); ++i)
                out.emplace_back(p.verts[i], p.verts[i + 1]);
        std::sort(out.begin(), out.end());
        return out;
    }
    bool properly_marked(const Graph& g, const ClusteredGraph& cg) const;
};

// One side of a split: boundary U, strictly-inside vertices I and the
// boundary-edge partition. For FIXED splits e_in is the set of G[U] edges
// drawn inside the noose.
struct SplitContext {
    Mode mode{Mode::VAR};
    std::vector<Vertex> boundary;  // U, sorted
    std::vector<Vertex> inner;     // I, sorted
    std::vector<Edge> e_in;        // subset of E(G[U])

    std::vector<Vertex> outer_vertices(const Graph& g) const;
    // G'_in = G[I u U] - (E(G[U]) \ e_in)
    std::vector<Edge> g_prime_in_edges(const Graph& g) const;
    // G'_out = G[O u U] - e_in
    std::vector<Edge> g_prime_out_edges(const Graph& g) const;
};

// ---- operations ----------------------------------------------------------

bool is_noncrossing(const std::vector<Edge>& m, const BoundaryCycle& bc);

// All (M,P,D) triples over the boundary cycle, canonical order
// (|M|, sorted M, sorted P, sorted D).
std::vector<MatPenDelTriple> enumerate_matpendel(const ClusteredGraph& cg,
                                                 const BoundaryCycle& bc);

// Same-cluster matchings on U ignoring the crossing predicate (helper).
std::vector<std::vector<Edge>> same_cluster_matchings(const ClusteredGraph& cg,
                                                      const std::vector<Vertex>& u);

MatPenDelTriple extract_triple(const std::vector<Vertex>& u, const PartialSolution& s);

bool are_complementary(const MatPenDelTriple& t_in, const MatPenDelTriple& t_out,
                       const ClusteredGraph& cg, const BoundaryCycle& bc);

bool is_sensible(const MatPenDelTriple& t_in, const SplitContext& ctx,
                 const ProblemInstance& inst);

// ---- augmentation --------------------------------------------------------

enum class AugKind { ORIG, SUBDIV, M_WITNESS, PENDANT, HUB };

struct AugmentResult {
    ProblemInstance inst;
    std::vector<Vertex> to_parent;  // new id -> parent vertex id, -1 for gadget vertices
    std::vector<AugKind> kind;
    RotationSystem gadget_rot;      // embedding of the gadget complex (tests/inspection)
    std::optional<Dart> outer_dart; // outer face of the gadget complex, in new ids
};

// Variable-embedding augmented instance: the piece is G'_in (or G'_out) given
// by `piece_vertices` and `piece_edges` of the parent instance.
AugmentResult augment_var(const ProblemInstance& parent,
                          const std::vector<Vertex>& piece_vertices,
                          const std::vector<Edge>& piece_edges, const BoundaryCycle& bc,
                          const MatPenDelTriple& t);

// Lemma-style recovery: strips gadget endpoints, new-singleton paths and
// matching witnesses from a solution of the augmented instance.
PartialSolution recover_partial_solution(const SaturationSolution& z_aug,
                                         const AugmentResult& aug, const MatPenDelTriple& t,
                                         const ProblemInstance& parent, const BoundaryCycle& bc);

// Z = E(S_in u S_out) \ E(G); throws if the combined set fails verification.
SaturationSolution combine(const PartialSolution& s_in, const PartialSolution& s_out,
                           const ProblemInstance& inst);

// All cyclic orders of U as representative sequences (first element fixed to
// the smallest), lexicographic.
std::vector<std::vector<Vertex>> cyclic_orders(const std::vector<Vertex>& u);

}  // namespace cpls
