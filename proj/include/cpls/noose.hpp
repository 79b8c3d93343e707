#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cpls/embedding.hpp"
#include "cpls/model.hpp"
#include "cpls/triples.hpp"

namespace cpls {

// One stop of a noose: arrive at v through corner_in, leave through
// corner_out into the region traversed on the way to the next stop.
// Corner ids refer to the FaceMap of the host embedding.
struct NooseEntry {
    Vertex v{-1};
    int corner_in{-1};
    int corner_out{-1};
    int region{-1};  // region of the segment leaving v (informational)
};

struct Noose {
    std::vector<NooseEntry> entries;  // cyclic, vertices in rho order
    std::vector<int> inside_comps;    // side choice for untouched components
    int arr_index{0};                 // which arrangement the corners refer to
    int region_if_empty{-1};          // region carrying an empty-boundary noose
};

// Canonical key (cyclic rotation + compatible reversal), used for dedup and
// cross-checking different enumeration routes.
std::vector<int64_t> noose_canonical_key(const Noose& n);

// Noose enumeration for connected embedded graphs (corner-walk extension,
// one face per segment). Deterministic canonical order, duplicate-free.
std::vector<Noose> get_nooses(const EmbeddedGraph& eg, const std::vector<Vertex>& u,
                              const std::vector<Vertex>& rho);

// Fallback for disconnected inputs: enumerate side bipartitions with shared
// boundary U and keep those realizable as a noose in some drawing consistent
// with the nesting data.
std::vector<Noose> get_nooses_disconnected(const EmbeddedGraph& eg, const std::vector<Vertex>& u,
                                           const std::vector<Vertex>& rho);

struct NooseSplit {
    std::vector<Vertex> in_vertices, out_vertices;  // both contain U
    std::vector<Edge> in_edges, out_edges;          // disjoint, union = E
    RotationSystem in_rot, out_rot;                 // restrictions of the embedding
};

// Side classification by materializing the noose as a cycle through new
// subdivision vertices; inside = the side not containing the outer face.
NooseSplit split_by_noose(const EmbeddedGraph& eg, const Noose& n);

// Fixed-embedding augmented instance for one side of the noose.
enum class NooseSide { IN, OUT };
AugmentResult augment_fixed(const ProblemInstance& parent, const Noose& n, NooseSide side,
                            const MatPenDelTriple& t);

// Type-invariant check used by tests: entries follow rho, segment corners
// share a region, regions pairwise distinct, and the curve has two sides.
bool noose_valid(const EmbeddedGraph& eg, const std::vector<Vertex>& rho, const Noose& n);

}  // namespace cpls
