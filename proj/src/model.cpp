#include "cpls/model.hpp"

#include <map>
#include <set>
#include <sstream>

#include "cpls/embedding.hpp"

namespace cpls {

bool is_cluster_path(const Graph& g, const std::vector<Vertex>& cluster,
                     const std::vector<Edge>& extra) {
    if (cluster.size() <= 1) return true;
    std::vector<Vertex> cl = cluster;
    std::sort(cl.begin(), cl.end());
    auto in_cluster = [&](Vertex v) { return std::binary_search(cl.begin(), cl.end(), v); };

    std::vector<Edge> es;
    for (const Edge& e : g.edges())
        if (in_cluster(e.u) && in_cluster(e.v)) es.push_back(e);
    for (const Edge& e : extra)
        if (in_cluster(e.u) && in_cluster(e.v)) es.push_back(e);
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());

    // exactly |V|-1 edges, connected, max degree 2
    if (es.size() != cl.size() - 1) return false;
    std::map<Vertex, int> deg;
    std::map<Vertex, std::vector<Vertex>> adj;
    for (const Edge& e : es) {
        if (++deg[e.u] > 2 || ++deg[e.v] > 2) return false;
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<Vertex> stack{cl[0]};
    std::set<Vertex> seen{cl[0]};
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : adj[v])
            if (seen.insert(w).second) stack.push_back(w);
    }
    return seen.size() == cl.size();
}

std::vector<Violation> validate_instance(const ProblemInstance& inst) {
    std::vector<Violation> out;
    const Graph& g = inst.graph();
    int n = g.num_vertices();

    std::vector<int> owner(n, -1);
    for (size_t i = 0; i < inst.cg.clusters.size(); ++i)
        for (Vertex v : inst.cg.clusters[i]) {
            if (v < 0 || v >= n) {
                out.push_back({"cluster-vertex-range", "vertex " + std::to_string(v)});
                continue;
            }
            if (owner[v] != -1)
                out.push_back({"clusters-not-disjoint", "vertex " + std::to_string(v)});
            owner[v] = static_cast<int>(i);
        }
    for (Vertex v = 0; v < n; ++v)
        if (owner[v] == -1)
            out.push_back({"clusters-not-covering", "vertex " + std::to_string(v)});

    for (Vertex v : inst.cg.marked)
        if (v < 0 || v >= n) out.push_back({"marked-not-vertex", "vertex " + std::to_string(v)});

    for (size_t i = 0; i < inst.cg.clusters.size(); ++i) {
        const auto& cl = inst.cg.clusters[i];
        if (inst.variant == Variant::INDEPENDENT) {
            for (size_t a = 0; a < cl.size(); ++a)
                for (size_t b = a + 1; b < cl.size(); ++b)
                    if (g.has_edge(cl[a], cl[b]))
                        out.push_back({"cluster-not-independent",
                                       "cluster " + std::to_string(i) + " edge " +
                                           std::to_string(cl[a]) + "-" + std::to_string(cl[b])});
        } else {
            // cluster must induce a disjoint union of paths
            std::set<Vertex> cs(cl.begin(), cl.end());
            std::map<Vertex, int> deg;
            int edges = 0;
            for (const Edge& e : g.edges())
                if (cs.count(e.u) && cs.count(e.v)) {
                    ++edges;
                    ++deg[e.u];
                    ++deg[e.v];
                }
            bool bad = false;
            for (auto& [v, d] : deg)
                if (d > 2) bad = true;
            if (!bad && edges > 0) {
                // degree <= 2 and no cycle: per component, edges = vertices-1
                std::map<Vertex, std::vector<Vertex>> adj;
                for (const Edge& e : g.edges())
                    if (cs.count(e.u) && cs.count(e.v)) {
                        adj[e.u].push_back(e.v);
                        adj[e.v].push_back(e.u);
                    }
                std::set<Vertex> seen;
                for (Vertex s : cl) {
                    if (seen.count(s)) continue;
                    int cv = 0, cd = 0;
                    std::vector<Vertex> stack{s};
                    seen.insert(s);
                    while (!stack.empty()) {
                        Vertex v = stack.back();
                        stack.pop_back();
                        ++cv;
                        cd += static_cast<int>(adj[v].size());
                        for (Vertex w : adj[v])
                            if (seen.insert(w).second) stack.push_back(w);
                    }
                    if (cd / 2 != cv - 1) bad = true;
                }
            }
            if (bad) out.push_back({"cluster-not-paths", "cluster " + std::to_string(i)});
        }
    }

    if (inst.mode == Mode::FIXED) {
        if (!inst.embedding) {
            out.push_back({"embedding-missing", "mode=FIXED"});
        } else {
            for (const std::string& err : check_embedding_data(*inst.embedding))
                out.push_back({"embedding-invalid", err});
            if (!inst.embedding->g.connected() && inst.embedding->nesting.empty() &&
                inst.embedding->g.num_vertices() > 0 && inst.embedding->g.num_components() > 1)
                out.push_back({"nesting-missing", "disconnected FIXED instance"});
        }
    }
    return out;
}

VerifyResult verify_solution(const ProblemInstance& inst, const SaturationSolution& sol) {
    const Graph& g = inst.graph();
    if (sol.z_sets.size() != inst.cg.clusters.size())
        return {false, "z_sets size differs from cluster count"};

    auto cidx = inst.cg.cluster_index();
    for (size_t i = 0; i < sol.z_sets.size(); ++i) {
        for (const Edge& e : sol.z_sets[i]) {
            if (e.u < 0 || e.v >= g.num_vertices() || e.u == e.v)
                return {false, "malformed pair in Z"};
            if (g.has_edge(e.u, e.v))
                return {false, "pair " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                   " is already an edge"};
            if (cidx[e.u] != static_cast<int>(i) || cidx[e.v] != static_cast<int>(i))
                return {false, "pair " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                   " not inside cluster " + std::to_string(i)};
            if (inst.cg.is_marked(e.u) || inst.cg.is_marked(e.v))
                return {false, "pair " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                   " touches a marked vertex"};
        }
    }
    std::vector<Edge> z = sol.all_edges();
    if (std::adjacent_find(z.begin(), z.end()) != z.end())
        return {false, "duplicate pair in Z"};

    for (size_t i = 0; i < inst.cg.clusters.size(); ++i)
        if (!is_cluster_path(g, inst.cg.clusters[i], sol.z_sets[i]))
            return {false, "cluster " + std::to_string(i) + " does not induce a single path"};

    if (inst.mode == Mode::VAR) {
        Graph h = g;
        for (const Edge& e : z) h.add_edge(e.u, e.v);
        if (!is_planar(h)) return {false, "G union Z is not planar"};
    } else {
        if (!inst.embedding) return {false, "fixed instance without embedding"};
        if (!extend_embedding(*inst.embedding, z))
            return {false, "Z does not extend the fixed embedding"};
    }
    return {true, ""};
}

}  // namespace cpls
