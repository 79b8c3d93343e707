#pragma once

// Internal rotation-surgery helpers shared by the augmentation builders.

#include <set>
#include <stdexcept>

#include "cpls/embedding.hpp"

namespace cpls::detail {

inline std::vector<int> corners_on(const FaceMap& fm, Vertex v, int f) {
    std::vector<int> out;
    for (int i = 0; i < fm.corners_at(v); ++i)
        if (fm.corner_face[fm.corner_id(v, i)] == f) out.push_back(i);
    return out;
}

inline void insert_at(RotationSystem& rot, Vertex v, Vertex nbr, int corner) {
    if (rot.rot[v].empty())
        rot.rot[v].push_back(nbr);
    else
        rot.rot[v].insert(rot.rot[v].begin() + corner + 1, nbr);
}

// Star vertex h into face f; every distinct boundary vertex gets one edge,
// attached at its first corner on f.
inline void insert_star(RotationSystem& rot, Graph& g, Vertex h, int f, const FaceMap& fm) {
    std::vector<std::pair<Vertex, int>> attach;
    std::set<Vertex> seen;
    for (const Dart& d : fm.faces[f].boundary) {
        Vertex v = d.tail;
        if (!seen.insert(v).second) continue;
        attach.emplace_back(v, corners_on(fm, v, f).front());
    }
    std::vector<Vertex> order;
    for (auto& [v, c] : attach) {
        order.push_back(v);
        insert_at(rot, v, h, c);
        g.try_add_edge(v, h);
    }
    rot.rot[h] = order;
    if (!euler_genus_zero(g, rot)) {
        std::reverse(rot.rot[h].begin(), rot.rot[h].end());
        if (!euler_genus_zero(g, rot))
            throw std::logic_error("insert_star: face insertion broke the embedding");
    }
}

}  // namespace cpls::detail
