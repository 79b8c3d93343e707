#include "cpls/kernel_var.hpp"

#include <cassert>
#include <set>
#include <stdexcept>

#include "cpls/embedding.hpp"

namespace cpls {

std::vector<Vertex> approx_vertex_cover(const Graph& g) {
    std::vector<Vertex> cover;
    std::set<Vertex> used;
    std::vector<Edge> es = g.edges();
    std::sort(es.begin(), es.end());
    for (const Edge& e : es) {
        if (used.count(e.u) || used.count(e.v)) continue;
        used.insert(e.u);
        used.insert(e.v);
        cover.push_back(e.u);
        cover.push_back(e.v);
    }
    std::sort(cover.begin(), cover.end());
    return cover;
}

std::vector<Vertex> min_vertex_cover(const Graph& g) {
    int n = g.num_vertices();
    if (n > 24) throw std::runtime_error("min_vertex_cover: too large");
    for (int k = 0; k <= n; ++k) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            std::set<Vertex> s(idx.begin(), idx.end());
            bool ok = true;
            for (const Edge& e : g.edges())
                if (!s.count(e.u) && !s.count(e.v)) ok = false;
            if (ok) return {s.begin(), s.end()};
            int i = k - 1;
            while (i >= 0 && idx[i] == n - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return {};
}

VarKernelContext build_context(const Graph& g, const std::vector<Vertex>& cover) {
    std::set<Vertex> cs(cover.begin(), cover.end());
    for (const Edge& e : g.edges())
        if (!cs.count(e.u) && !cs.count(e.v))
            throw std::invalid_argument("build_context: X is not a vertex cover");
    VarKernelContext ctx;
    ctx.cover = {cs.begin(), cs.end()};
    std::set<Vertex> core = cs;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) >= 3) core.insert(v);
    ctx.core = {core.begin(), core.end()};
    ctx.p = static_cast<int>(ctx.core.size());
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (core.count(v)) continue;
        std::vector<Vertex> q = g.neighbors(v);
        std::sort(q.begin(), q.end());
        ctx.types[q].push_back(v);
        if (q.empty())
            ctx.t0.push_back(v);
        else if (q.size() == 1)
            ctx.t1.push_back(v);
        else
            ctx.t2.push_back(v);
    }
    return ctx;
}

ProblemInstance delete_vertices(const ProblemInstance& inst, const std::vector<Vertex>& del) {
    std::set<Vertex> ds(del.begin(), del.end());
    int n = inst.n();
    std::vector<int> remap(n, -1);
    int m = 0;
    for (Vertex v = 0; v < n; ++v)
        if (!ds.count(v)) remap[v] = m++;
    ProblemInstance out;
    Graph g(m);
    for (const Edge& e : inst.graph().edges())
        if (remap[e.u] >= 0 && remap[e.v] >= 0) g.add_edge(remap[e.u], remap[e.v]);
    g.normalize();
    out.cg.g = std::move(g);
    for (const auto& cl : inst.cg.clusters) {
        std::vector<Vertex> nc;
        for (Vertex v : cl)
            if (remap[v] >= 0) nc.push_back(remap[v]);
        std::sort(nc.begin(), nc.end());
        if (!nc.empty()) out.cg.clusters.push_back(std::move(nc));
    }
    for (Vertex v : inst.cg.marked)
        if (remap[v] >= 0) out.cg.marked.push_back(remap[v]);
    std::sort(out.cg.marked.begin(), out.cg.marked.end());
    out.mode = inst.mode;
    out.variant = inst.variant;
    // embeddings do not survive vertex deletion here; the variable kernel
    // never carries one
    return out;
}

namespace {

std::vector<Vertex> surviving_cover(const ProblemInstance& before,
                                    const std::vector<Vertex>& cover,
                                    const std::vector<Vertex>& deleted) {
    std::set<Vertex> ds(deleted.begin(), deleted.end());
    std::vector<int> remap(before.n(), -1);
    int m = 0;
    for (Vertex v = 0; v < before.n(); ++v)
        if (!ds.count(v)) remap[v] = m++;
    std::vector<Vertex> out;
    for (Vertex v : cover)
        if (remap[v] >= 0) out.push_back(remap[v]);
    return out;
}

}  // namespace

RuleResult reduce_multiplicity(const ProblemInstance& inst, const std::vector<Vertex>& cover) {
    ProblemInstance cur = inst;
    std::vector<Vertex> cov = cover;
    bool any = false;
    while (true) {
        VarKernelContext ctx = build_context(cur.graph(), cov);
        std::vector<Vertex> del = ctx.t0;
        if (del.empty()) {
            auto cidx = cur.cg.cluster_index();
            // one survivor per (type, cluster) in T1, three in T2
            std::map<std::pair<std::vector<Vertex>, int>, std::vector<Vertex>> groups;
            for (auto& [q, vs] : ctx.types) {
                if (q.empty()) continue;
                for (Vertex v : vs) groups[{q, cidx[v]}].push_back(v);
            }
            for (auto& [key, vs] : groups) {
                size_t keep = key.first.size() == 1 ? 1 : 3;
                std::sort(vs.begin(), vs.end());
                for (size_t i = keep; i < vs.size(); ++i) del.push_back(vs[i]);
            }
        }
        if (del.empty()) break;
        std::sort(del.begin(), del.end());
        cov = surviving_cover(cur, cov, del);
        cur = delete_vertices(cur, del);
        any = true;
    }
    return {any ? RuleOutcome::REDUCED : RuleOutcome::PASS, cur};
}

RuleResult handle_isolated(const ProblemInstance& inst, const std::vector<Vertex>& cover,
                           const VarKernelThresholds& th) {
    ProblemInstance cur = inst;
    std::vector<Vertex> cov = cover;
    bool any = false;
    while (true) {
        VarKernelContext ctx = build_context(cur.graph(), cov);
        auto cidx = cur.cg.cluster_index();
        std::set<Vertex> core(ctx.core.begin(), ctx.core.end());
        // Q-isolated clusters per 2-subset Q = {a,b} of the core
        std::map<std::pair<Vertex, Vertex>, std::vector<int>> isolated;
        for (size_t ci = 0; ci < cur.cg.clusters.size(); ++ci) {
            const auto& cl = cur.cg.clusters[ci];
            // collect the core neighborhoods of the members
            bool all_ok = true;
            std::set<Vertex> anchors;
            bool has_t2 = false;
            for (Vertex v : cl) {
                if (core.count(v)) {
                    all_ok = false;
                    break;
                }
                std::vector<Vertex> q = cur.graph().neighbors(v);
                if (q.empty() || q.size() > 2) {
                    all_ok = false;
                    break;
                }
                for (Vertex w : q) anchors.insert(w);
                if (q.size() == 2) has_t2 = true;
            }
            if (!all_ok || !has_t2 || anchors.size() != 2) continue;
            auto it = anchors.begin();
            Vertex a = *it++, b = *it;
            isolated[{a, b}].push_back(static_cast<int>(ci));
        }
        int victim = -1;
        for (auto& [q, cls] : isolated)
            if (cls.size() >= 2) {
                victim = *std::max_element(cls.begin(), cls.end());
                break;
            }
        if (victim == -1) {
            if (static_cast<int>(ctx.t2.size()) >= th.isolated_factor * ctx.p + 1)
                return {RuleOutcome::NO, cur};
            break;
        }
        std::vector<Vertex> del = cur.cg.clusters[victim];
        cov = surviving_cover(cur, cov, del);
        cur = delete_vertices(cur, del);
        any = true;
    }
    return {any ? RuleOutcome::REDUCED : RuleOutcome::PASS, cur};
}

RuleResult reduce_pendants(const ProblemInstance& inst, const std::vector<Vertex>& cover,
                           const VarKernelThresholds& th) {
    ProblemInstance cur = inst;
    std::vector<Vertex> cov = cover;
    bool any = false;
    while (true) {
        VarKernelContext ctx = build_context(cur.graph(), cov);
        auto cidx = cur.cg.cluster_index();
        std::set<Vertex> t1(ctx.t1.begin(), ctx.t1.end());

        // pendants in singleton clusters
        std::vector<Vertex> del;
        for (const auto& cl : cur.cg.clusters)
            if (cl.size() == 1 && t1.count(cl[0])) del.push_back(cl[0]);
        if (!del.empty()) {
            cov = surviving_cover(cur, cov, del);
            cur = delete_vertices(cur, del);
            any = true;
            continue;
        }

        int vg2 = static_cast<int>(ctx.core.size() + ctx.t2.size());

        // size-2 clusters: auxiliary graph over V(G2)
        std::vector<int> y2_clusters;
        int y2 = 0;
        for (size_t ci = 0; ci < cur.cg.clusters.size(); ++ci) {
            const auto& cl = cur.cg.clusters[ci];
            if (cl.size() != 2) continue;
            int pend = 0;
            for (Vertex v : cl)
                if (t1.count(v)) ++pend;
            if (pend > 0) {
                y2_clusters.push_back(static_cast<int>(ci));
                y2 += pend;
            }
        }
        if (y2 >= th.pend2_factor * vg2 + th.pend2_const) {
            std::set<Vertex> g2(ctx.core.begin(), ctx.core.end());
            g2.insert(ctx.t2.begin(), ctx.t2.end());
            std::map<std::pair<Vertex, Vertex>, std::vector<int>> aux_edges;
            Graph gy(cur.n());
            for (int ci : y2_clusters) {
                const auto& cl = cur.cg.clusters[ci];
                std::vector<Vertex> ws;
                for (Vertex v : cl) {
                    if (g2.count(v))
                        ws.push_back(v);
                    else if (t1.count(v))
                        ws.push_back(cur.graph().neighbors(v)[0]);
                }
                if (ws.size() != 2) continue;
                Edge e(ws[0], ws[1]);
                if (ws[0] != ws[1]) {
                    aux_edges[{e.u, e.v}].push_back(ci);
                    gy.try_add_edge(e.u, e.v);
                } else {
                    aux_edges[{ws[0], ws[0]}].push_back(ci);
                }
            }
            if (!is_planar(gy)) return {RuleOutcome::NO, cur};
            int victim = -1;
            for (auto& [e, cls] : aux_edges)
                if (cls.size() >= 2) {
                    victim = *std::max_element(cls.begin(), cls.end());
                    break;
                }
            if (victim != -1) {
                std::vector<Vertex> a;
                for (Vertex v : cur.cg.clusters[victim])
                    if (t1.count(v)) a.push_back(v);
                cov = surviving_cover(cur, cov, a);
                cur = delete_vertices(cur, a);
                any = true;
                continue;
            }
        }

        // size >= 3 clusters: pendant count bound
        int y3 = 0;
        for (const auto& cl : cur.cg.clusters) {
            if (cl.size() < 3) continue;
            for (Vertex v : cl)
                if (t1.count(v)) ++y3;
        }
        if (y3 >= th.pend3_factor * vg2 + th.pend3_const) return {RuleOutcome::NO, cur};
        break;
    }
    return {any ? RuleOutcome::REDUCED : RuleOutcome::PASS, cur};
}

KernelOutcome kernelize_variable(const ProblemInstance& inst, const VarKernelThresholds& th) {
    if (inst.mode != Mode::VAR || inst.variant != Variant::INDEPENDENT)
        throw std::invalid_argument("kernelize_variable: VAR INDEPENDENT instance required");
    KernelOutcome out;
    if (!is_planar(inst.graph())) {
        out.answer = false;
        out.inst = inst;
        return out;
    }
    ProblemInstance cur = inst;
    std::vector<Vertex> cov = approx_vertex_cover(cur.graph());
    out.cover_size = static_cast<int>(cov.size());
    while (true) {
        RuleResult r1 = reduce_multiplicity(cur, cov);
        if (r1.outcome == RuleOutcome::REDUCED) {
            cov = approx_vertex_cover(r1.inst.graph());
            cur = r1.inst;
        }
        RuleResult r2 = handle_isolated(cur, cov, th);
        if (r2.outcome == RuleOutcome::NO) {
            out.answer = false;
            out.inst = r2.inst;
            return out;
        }
        if (r2.outcome == RuleOutcome::REDUCED) {
            cov = approx_vertex_cover(r2.inst.graph());
            cur = r2.inst;
            continue;
        }
        RuleResult r3 = reduce_pendants(cur, cov, th);
        if (r3.outcome == RuleOutcome::NO) {
            out.answer = false;
            out.inst = r3.inst;
            return out;
        }
        if (r3.outcome == RuleOutcome::REDUCED) {
            cov = approx_vertex_cover(r3.inst.graph());
            cur = r3.inst;
            continue;
        }
        if (r1.outcome != RuleOutcome::REDUCED) break;
    }
    out.inst = cur;
    out.cover_size = static_cast<int>(approx_vertex_cover(cur.graph()).size());
    return out;
}

}  // namespace cpls
