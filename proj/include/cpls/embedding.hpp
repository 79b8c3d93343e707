#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "cpls/graph.hpp"

namespace cpls {

// Directed edge side; one reversal pair per undirected edge.
struct Dart {
    Vertex tail{-1}, head{-1};

    Dart() = default;
    Dart(Vertex t, Vertex h) : tail(t), head(h) {}
    Dart rev() const { return {head, tail}; }

    bool operator==(const Dart& o) const { return tail == o.tail && head == o.head; }
    bool operator<(const Dart& o) const {
        return tail < o.tail || (tail == o.tail && head < o.head);
    }
};

// Per-vertex cyclic order of neighbors. Since all graphs here are simple,
// the neighbor determines the dart.
struct RotationSystem {
    std::vector<std::vector<Vertex>> rot;

    int size() const { return static_cast<int>(rot.size()); }

    int index_of(Vertex v, Vertex nbr) const {
        const auto& r = rot[v];
        for (size_t i = 0; i < r.size(); ++i)
            if (r[i] == nbr) return static_cast<int>(i);
        return -1;
    }

    Vertex next_neighbor(Vertex v, Vertex nbr) const {
        const auto& r = rot[v];
        int i = index_of(v, nbr);
        return r[(i + 1) % r.size()];
    }

    // Face-tracing successor: after entering v via (u,v), leave via the
    // rotation successor of u at v.
    Dart face_next(const Dart& d) const { return {d.head, next_neighbor(d.head, d.tail)}; }

    bool operator==(const RotationSystem& o) const { return rot == o.rot; }
};

struct Face {
    std::vector<Dart> boundary;  // cyclic, in trace order; empty for an isolated vertex

    std::vector<Vertex> distinct_vertices() const {
        std::vector<Vertex> vs;
        for (const Dart& d : boundary) vs.push_back(d.tail);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }
};

// Component `comp` is drawn inside face `host_face` (an index into the host
// component's face list) of component `host_comp`.
struct NestEntry {
    int comp{-1};
    int host_comp{-1};
    int host_face{-1};
};

struct EmbeddedGraph {
    Graph g;
    RotationSystem rot;
    std::optional<Dart> outer;       // pins the outer face when present
    std::vector<NestEntry> nesting;  // required iff g is disconnected (FIXED mode)
};

// ---- face structure ----------------------------------------------------

// Corners are the gaps between consecutive darts in a rotation; corner i of
// vertex v sits after rot[v][i]. A degree-0 vertex gets one synthetic corner.
struct FaceMap {
    std::vector<Face> faces;       // traced faces, then one empty face per dartless component
    std::vector<int> comp_of_face;
    std::vector<int> comp_of_vertex;
    std::map<Dart, int> face_of_dart;
    std::vector<int> corner_off;   // corner ids are corner_off[v] + i
    std::vector<int> corner_face;  // corner id -> face id

    int corner_id(Vertex v, int i) const { return corner_off[v] + i; }
    int corners_at(Vertex v) const { return corner_off[v + 1] - corner_off[v]; }
    std::pair<Vertex, int> corner_pos(int cid) const;
    int total_corners() const { return corner_off.empty() ? 0 : corner_off.back(); }
    std::vector<int> faces_of_comp(int c) const;
};

FaceMap build_face_map(const RotationSystem& rot);

bool rotation_well_formed(const Graph& g, const RotationSystem& rot);

std::vector<Face> faces_of(const RotationSystem& rot);

// True iff every connected component satisfies n - m + f = 2 for the faces
// traced within it.
bool euler_genus_zero(const Graph& g, const RotationSystem& rot);

// Planarity test with a rotation-system witness (absent iff non-planar).
std::optional<RotationSystem> is_planar(const Graph& g);

// Exhaustive enumeration of all genus-0 rotation systems, canonical order.
// Refuses graphs above the vertex cap.
std::vector<RotationSystem> enumerate_plane_rotations(const Graph& g, int cap = 8);

// Embedding of g2 (a supergraph of base.g on the same vertex set) whose
// restriction to base.g reproduces base exactly, if one exists.
std::optional<EmbeddedGraph> extend_embedding(const EmbeddedGraph& base,
                                              const std::vector<Edge>& extra);

// ---- arrangements ------------------------------------------------------

// A drawing of a possibly-disconnected embedded graph: faces glued into
// regions according to the nesting forest plus a choice, per component, of
// which face looks toward its host (the "outward" face).
struct Arrangement {
    FaceMap fm;
    std::vector<int> outward;         // per comp: face id looking at the host region
    std::vector<int> region_of_face;  // face id -> region id (dense)
    int num_regions{0};
    int outer_region{-1};

    int region_of_corner(int cid) const { return region_of_face[fm.corner_face[cid]]; }
};

// All arrangements consistent with the embedded graph's nesting data (one
// entry when connected). Deterministic order.
std::vector<Arrangement> enumerate_arrangements(const EmbeddedGraph& eg);

// Diagnostics for nesting/outer data; empty when consistent.
std::vector<std::string> check_embedding_data(const EmbeddedGraph& eg);

}  // namespace cpls
