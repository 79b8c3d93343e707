#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cpls {

using Vertex = int;

// Undirected edge, stored normalized (u < v).
struct Edge {
    Vertex u{-1}, v{-1};

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

    bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
    bool operator<(const Edge& o) const { return u < o.u || (u == o.u && v < o.v); }
    Vertex other(Vertex x) const { return x == u ? v : u; }
};

// Simple undirected graph on dense vertex ids 0..n-1.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n) {}

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

    bool has_edge(Vertex a, Vertex b) const {
        if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b) return false;
        const auto& na = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
        Vertex t = adj_[a].size() <= adj_[b].size() ? b : a;
        return std::find(na.begin(), na.end(), t) != na.end();
    }

    void add_edge(Vertex a, Vertex b) {
        if (a == b) throw std::invalid_argument("self-loop rejected");
        if (a < 0 || b < 0 || a >= n_ || b >= n_)
            throw std::invalid_argument("edge endpoint out of range");
        if (has_edge(a, b)) throw std::invalid_argument("duplicate edge rejected");
        adj_[a].push_back(b);
        adj_[b].push_back(a);
        edges_.emplace_back(a, b);
    }

    bool try_add_edge(Vertex a, Vertex b) {
        if (a == b || a < 0 || b < 0 || a >= n_ || b >= n_ || has_edge(a, b)) return false;
        adj_[a].push_back(b);
        adj_[b].push_back(a);
        edges_.emplace_back(a, b);
        return true;
    }

    void remove_edge(Vertex a, Vertex b) {
        auto strip = [](std::vector<Vertex>& vec, Vertex x) {
            vec.erase(std::remove(vec.begin(), vec.end(), x), vec.end());
        };
        strip(adj_[a], b);
        strip(adj_[b], a);
        Edge e(a, b);
        edges_.erase(std::remove(edges_.begin(), edges_.end(), e), edges_.end());
    }

    // Canonical form: neighbor lists and edge list sorted.
    void normalize() {
        for (auto& a : adj_) std::sort(a.begin(), a.end());
        std::sort(edges_.begin(), edges_.end());
    }

    std::vector<int> component_ids() const {
        std::vector<int> comp(n_, -1);
        int c = 0;
        for (Vertex s = 0; s < n_; ++s) {
            if (comp[s] != -1) continue;
            std::vector<Vertex> stack{s};
            comp[s] = c;
            while (!stack.empty()) {
                Vertex v = stack.back();
                stack.pop_back();
                for (Vertex w : adj_[v])
                    if (comp[w] == -1) {
                        comp[w] = c;
                        stack.push_back(w);
                    }
            }
            ++c;
        }
        return comp;
    }

    int num_components() const {
        auto c = component_ids();
        return c.empty() ? 0 : 1 + *std::max_element(c.begin(), c.end());
    }

    bool connected() const { return n_ <= 1 || num_components() == 1; }

    // Induced subgraph on `keep` (sorted); returns subgraph + old-id map.
    std::pair<Graph, std::vector<Vertex>> induced(const std::vector<Vertex>& keep) const {
        std::vector<int> newid(n_, -1);
        for (size_t i = 0; i < keep.size(); ++i) newid[keep[i]] = static_cast<int>(i);
        Graph h(static_cast<int>(keep.size()));
        for (const Edge& e : edges_)
            if (newid[e.u] >= 0 && newid[e.v] >= 0) h.add_edge(newid[e.u], newid[e.v]);
        h.normalize();
        return {std::move(h), keep};
    }

private:
    int n_{0};
    std::vector<std::vector<Vertex>> adj_;
    std::vector<Edge> edges_;
};

inline Graph graph_from_edges(int n, const std::vector<Edge>& es) {
    Graph g(n);
    for (const Edge& e : es) g.add_edge(e.u, e.v);
    g.normalize();
    return g;
}

}  // namespace cpls
