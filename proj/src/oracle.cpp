#include "cpls/oracle.hpp"

#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

#include "cpls/embedding.hpp"

namespace cpls {

std::vector<std::vector<std::vector<Vertex>>> cluster_fragments(const ProblemInstance& inst) {
    const Graph& g = inst.graph();
    std::vector<std::vector<std::vector<Vertex>>> out(inst.cg.clusters.size());
    for (size_t i = 0; i < inst.cg.clusters.size(); ++i) {
        const auto& cl = inst.cg.clusters[i];
        std::set<Vertex> cs(cl.begin(), cl.end());
        std::map<Vertex, std::vector<Vertex>> adj;
        for (const Edge& e : g.edges())
            if (cs.count(e.u) && cs.count(e.v)) {
                adj[e.u].push_back(e.v);
                adj[e.v].push_back(e.u);
            }
        std::set<Vertex> used;
        std::vector<Vertex> sorted_cl = cl;
        std::sort(sorted_cl.begin(), sorted_cl.end());
        for (Vertex s : sorted_cl) {
            if (used.count(s)) continue;
            // walk to one end of the fragment, then read it off
            Vertex end = s, prev = -1;
            while (true) {
                Vertex nxt = -1;
                for (Vertex w : adj[end])
                    if (w != prev) nxt = w;
                if (nxt == -1 || adj[end].size() == 1) {
                    if (adj[end].size() <= 1) break;
                }
                if (nxt == -1) break;
                prev = end;
                end = nxt;
                if (end == s) break;  // defensive; cycles rejected upstream
            }
            std::vector<Vertex> frag{end};
            used.insert(end);
            Vertex cur = end, pre = -1;
            while (true) {
                Vertex nxt = -1;
                for (Vertex w : adj[cur])
                    if (w != pre && !used.count(w)) nxt = w;
                if (nxt == -1) break;
                frag.push_back(nxt);
                used.insert(nxt);
                pre = cur;
                cur = nxt;
            }
            // canonical orientation: smaller endpoint first
            if (frag.back() < frag.front()) std::reverse(frag.begin(), frag.end());
            out[i].push_back(std::move(frag));
        }
        std::sort(out[i].begin(), out[i].end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
    }
    return out;
}

namespace {

struct OracleSearch {
    const ProblemInstance* inst;
    std::vector<std::vector<std::vector<Vertex>>> frags;
    std::vector<size_t> cluster_order;  // most fragments first
    Graph h;                            // G plus chosen Z so far
    std::vector<std::vector<Edge>> z;
    std::optional<SaturationSolution> found;

    bool planar_prefix() const {
        if (inst->mode == Mode::VAR) return is_planar(h).has_value();
        std::vector<Edge> all;
        for (const auto& zs : z) all.insert(all.end(), zs.begin(), zs.end());
        if (!is_planar(h)) return false;
        return extend_embedding(*inst->embedding, all).has_value();
    }

    void finish() {
        SaturationSolution sol;
        sol.z_sets = z;
        for (auto& zs : sol.z_sets) std::sort(zs.begin(), zs.end());
        if (inst->mode == Mode::VAR) {
            auto rs = is_planar(h);
            sol.witness = std::make_shared<RotationSystem>(*rs);
        } else {
            std::vector<Edge> all;
            for (const auto& zs : z) all.insert(all.end(), zs.begin(), zs.end());
            auto emb = extend_embedding(*inst->embedding, all);
            sol.witness = std::make_shared<RotationSystem>(emb->rot);
        }
        found = sol;
    }

    void next_cluster(size_t oi) {
        if (found) return;
        if (oi == cluster_order.size()) {
            finish();
            return;
        }
        size_t ci = cluster_order[oi];
        if (frags[ci].size() <= 1) {
            next_cluster(oi + 1);
            return;
        }
        std::vector<bool> usedfrag(frags[ci].size(), false);
        place_cluster(oi, ci, usedfrag);
    }

    void place_cluster(size_t oi, size_t ci, std::vector<bool>& usedfrag) {
        // choose the first fragment, then extend
        const auto& fl = frags[ci];
        for (size_t fi = 0; fi < fl.size() && !found; ++fi) {
            for (int dir = 0; dir < 2 && !found; ++dir) {
                if (fl[fi].size() == 1 && dir == 1) continue;
                usedfrag[fi] = true;
                Vertex tail = dir == 0 ? fl[fi].back() : fl[fi].front();
                extend(oi, ci, usedfrag, 1, tail, static_cast<int>(fi));
                usedfrag[fi] = false;
            }
        }
    }

    void extend(size_t oi, size_t ci, std::vector<bool>& usedfrag, int placed, Vertex tail,
                int first_frag) {
        if (found) return;
        const auto& fl = frags[ci];
        if (placed == static_cast<int>(fl.size())) {
            next_cluster(oi + 1);
            return;
        }
        for (size_t fi = 0; fi < fl.size() && !found; ++fi) {
            if (usedfrag[fi]) continue;
            for (int dir = 0; dir < 2 && !found; ++dir) {
                if (fl[fi].size() == 1 && dir == 1) continue;
                Vertex head = dir == 0 ? fl[fi].front() : fl[fi].back();
                Vertex newtail = dir == 0 ? fl[fi].back() : fl[fi].front();
                // whole-path reversal symmetry: fix the last fragment id to be
                // larger than the first
                if (placed + 1 == static_cast<int>(fl.size()) &&
                    static_cast<int>(fi) < first_frag)
                    continue;
                if (inst->cg.is_marked(tail) || inst->cg.is_marked(head)) continue;
                if (h.has_edge(tail, head)) continue;
                h.add_edge(tail, head);
                z[ci].emplace_back(tail, head);
                if (planar_prefix()) {
                    usedfrag[fi] = true;
                    extend(oi, ci, usedfrag, placed + 1, newtail, first_frag);
                    usedfrag[fi] = false;
                }
                z[ci].pop_back();
                h.remove_edge(tail, head);
            }
        }
    }
};

}  // namespace

std::optional<SaturationSolution> oracle_solve(const ProblemInstance& inst, int cap) {
    if (inst.n() > cap) throw std::runtime_error("oracle_solve: vertex cap exceeded");
    if (inst.mode == Mode::VAR) {
        if (!is_planar(inst.graph())) return std::nullopt;
    }
    OracleSearch s;
    s.inst = &inst;
    s.frags = cluster_fragments(inst);
    s.z.assign(inst.cg.clusters.size(), {});
    s.h = inst.graph();
    for (size_t i = 0; i < s.frags.size(); ++i) s.cluster_order.push_back(i);
    std::sort(s.cluster_order.begin(), s.cluster_order.end(), [&](size_t a, size_t b) {
        if (s.frags[a].size() != s.frags[b].size()) return s.frags[a].size() > s.frags[b].size();
        return a < b;
    });
    if (inst.mode == Mode::FIXED && !s.planar_prefix()) return std::nullopt;
    s.next_cluster(0);
    if (s.found) {
        VerifyResult vr = verify_solution(inst, *s.found);
        if (!vr.ok) throw std::logic_error("oracle_solve produced invalid solution: " + vr.reason);
    }
    return s.found;
}

std::optional<SaturationSolution> oracle_solve_by_edge_subsets(const ProblemInstance& inst,
                                                               int cap) {
    if (inst.n() > cap)
        throw std::runtime_error("oracle_solve_by_edge_subsets: vertex cap exceeded");
    const Graph& g = inst.graph();
    auto cidx = inst.cg.cluster_index();
    std::vector<Edge> cands;
    for (Vertex a = 0; a < g.num_vertices(); ++a)
        for (Vertex b = a + 1; b < g.num_vertices(); ++b)
            if (cidx[a] == cidx[b] && !g.has_edge(a, b) && !inst.cg.is_marked(a) &&
                !inst.cg.is_marked(b))
                cands.emplace_back(a, b);
    if (cands.size() > 24)
        throw std::runtime_error("oracle_solve_by_edge_subsets: too many candidate pairs");
    std::optional<SaturationSolution> best;
    std::vector<Edge> best_all;
    for (uint64_t mask = 0; mask < (1ull << cands.size()); ++mask) {
        SaturationSolution sol;
        sol.z_sets.assign(inst.cg.clusters.size(), {});
        for (size_t i = 0; i < cands.size(); ++i)
            if (mask & (1ull << i)) sol.z_sets[cidx[cands[i].u]].push_back(cands[i]);
        if (!verify_solution(inst, sol).ok) continue;
        std::vector<Edge> all = sol.all_edges();
        if (!best || all.size() < best_all.size() ||
            (all.size() == best_all.size() && all < best_all)) {
            best = sol;
            best_all = all;
        }
    }
    return best;
}

// ---- nooses ---------------------------------------------------------------

std::vector<Noose> oracle_nooses(const EmbeddedGraph& eg, const std::vector<Vertex>& u,
                                 const std::vector<Vertex>& rho) {
    if (u.empty()) throw std::invalid_argument("oracle_nooses: U must be nonempty");
    std::vector<Vertex> r = rho;
    {
        auto mn = std::min_element(r.begin(), r.end());
        std::rotate(r.begin(), mn, r.end());
    }
    int t = static_cast<int>(r.size());
    auto arrs = enumerate_arrangements(eg);
    std::vector<Noose> out;
    std::set<std::vector<int64_t>> seen;
    for (size_t ai = 0; ai < arrs.size(); ++ai) {
        const Arrangement& ar = arrs[ai];
        // all candidate segments per consecutive pair
        std::vector<std::vector<std::array<int, 3>>> seg(t);  // (corner_out, corner_in, region)
        for (int s = 0; s < t; ++s) {
            Vertex a = r[s], b = r[(s + 1) % t];
            for (int i = 0; i < ar.fm.corners_at(a); ++i)
                for (int j = 0; j < ar.fm.corners_at(b); ++j) {
                    int ca = ar.fm.corner_id(a, i), cb = ar.fm.corner_id(b, j);
                    if (ar.region_of_corner(ca) != ar.region_of_corner(cb)) continue;
                    seg[s].push_back({ca, cb, ar.region_of_corner(ca)});
                }
        }
        std::vector<size_t> pick(t, 0);
        bool any_empty = false;
        for (int s = 0; s < t; ++s)
            if (seg[s].empty()) any_empty = true;
        if (any_empty) continue;
        while (true) {
            std::set<int> regions;
            bool ok = true;
            for (int s = 0; s < t; ++s)
                if (!regions.insert(seg[s][pick[s]][2]).second) ok = false;
            if (ok) {
                Noose n;
                n.arr_index = static_cast<int>(ai);
                n.entries.resize(t);
                for (int s = 0; s < t; ++s) {
                    n.entries[s].v = r[s];
                    n.entries[s].corner_out = seg[s][pick[s]][0];
                    n.entries[s].region = seg[s][pick[s]][2];
                    n.entries[(s + 1) % t].corner_in = seg[s][pick[s]][1];
                }
                if (seen.insert(noose_canonical_key(n)).second) out.push_back(n);
            }
            int s = t - 1;
            while (s >= 0) {
                if (++pick[s] < seg[s].size()) break;
                pick[s] = 0;
                --s;
            }
            if (s < 0) break;
        }
    }
    return out;
}

// ---- B2PBE-PE ---------------------------------------------------------------

namespace {

bool conflict_graph_bipartite(const std::vector<Edge>& edges, const std::vector<int>& pos) {
    int m = static_cast<int>(edges.size());
    std::vector<std::vector<int>> adj(m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            int a = std::min(pos[edges[i].u], pos[edges[i].v]);
            int b = std::max(pos[edges[i].u], pos[edges[i].v]);
            int c = std::min(pos[edges[j].u], pos[edges[j].v]);
            int d = std::max(pos[edges[j].u], pos[edges[j].v]);
            bool cross = (a < c && c < b && b < d) || (c < a && a < d && d < b);
            if (cross) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }
    std::vector<int> col(m, -1);
    for (int s = 0; s < m; ++s) {
        if (col[s] != -1) continue;
        col[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v]) {
                if (col[w] == -1) {
                    col[w] = col[v] ^ 1;
                    stack.push_back(w);
                } else if (col[w] == col[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::optional<std::vector<Vertex>> b2pbe_spine(const Graph& g, const std::vector<int>& color,
                                               const std::array<Vertex, 4>& quad, int cap) {
    if (g.num_vertices() > cap) throw std::runtime_error("oracle_b2pbe_pe: vertex cap exceeded");
    auto [b_s, b_t, r_s, r_t] = quad;
    if (b_s == b_t || r_s == r_t || color[b_s] != 0 || color[b_t] != 0 || color[r_s] != 1 ||
        color[r_t] != 1)
        throw std::invalid_argument("oracle_b2pbe_pe: invalid quadruple");
    for (const Edge& e : g.edges())
        if (color[e.u] == color[e.v])
            throw std::invalid_argument("oracle_b2pbe_pe: graph not bipartite w.r.t. coloring");

    std::vector<Vertex> blacks, reds;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (v == b_s || v == b_t || v == r_s || v == r_t) continue;
        (color[v] == 0 ? blacks : reds).push_back(v);
    }
    std::sort(blacks.begin(), blacks.end());
    std::sort(reds.begin(), reds.end());
    std::vector<int> pos(g.num_vertices(), -1);
    do {
        std::vector<Vertex> rcopy = reds;
        std::sort(rcopy.begin(), rcopy.end());
        do {
            std::vector<Vertex> spine;
            spine.push_back(b_s);
            spine.insert(spine.end(), blacks.begin(), blacks.end());
            spine.push_back(b_t);
            spine.push_back(r_s);
            spine.insert(spine.end(), rcopy.begin(), rcopy.end());
            spine.push_back(r_t);
            for (size_t i = 0; i < spine.size(); ++i) pos[spine[i]] = static_cast<int>(i);
            if (conflict_graph_bipartite(g.edges(), pos)) return spine;
        } while (std::next_permutation(rcopy.begin(), rcopy.end()));
    } while (std::next_permutation(blacks.begin(), blacks.end()));
    return std::nullopt;
}

}  // namespace

bool oracle_b2pbe_pe(const Graph& g, const std::vector<int>& color,
                     const std::array<Vertex, 4>& quad, int cap) {
    return b2pbe_spine(g, color, quad, cap).has_value();
}

std::optional<Connector> b2pbe_connector(const Graph& g, const std::vector<int>& color,
                                         const std::array<Vertex, 4>& quad, int cap) {
    auto spine = b2pbe_spine(g, color, quad, cap);
    if (!spine) return std::nullopt;
    Connector c;
    c.cycle = *spine;
    c.b_s = quad[0];
    c.b_t = quad[1];
    c.r_s = quad[2];
    c.r_t = quad[3];
    return c;
}

}  // namespace cpls
