#include "cpls/triples.hpp"

#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

#include "cpls/detail/embed_build.hpp"

namespace cpls {

bool PartialSolution::properly_marked(const Graph& g, const ClusteredGraph& cg) const {
    for (const auto& p : paths)
        for (size_t i = 0; i + 1 < p.verts.size(); ++i) {
            Vertex a = p.verts[i], b = p.verts[i + 1];
            if ((cg.is_marked(a) || cg.is_marked(b)) && !g.has_edge(a, b)) return false;
        }
    return true;
}

std::vector<Vertex> SplitContext::outer_vertices(const Graph& g) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (!std::binary_search(boundary.begin(), boundary.end(), v) &&
            !std::binary_search(inner.begin(), inner.end(), v))
            out.push_back(v);
    return out;
}

std::vector<Edge> SplitContext::g_prime_in_edges(const Graph& g) const {
    auto in_b = [&](Vertex v) { return std::binary_search(boundary.begin(), boundary.end(), v); };
    auto in_i = [&](Vertex v) { return std::binary_search(inner.begin(), inner.end(), v); };
    std::vector<Edge> out;
    for (const Edge& e : g.edges()) {
        bool ub = in_b(e.u) || in_i(e.u), vb = in_b(e.v) || in_i(e.v);
        if (!ub || !vb) continue;
        if (in_b(e.u) && in_b(e.v) && !std::binary_search(e_in.begin(), e_in.end(), e)) continue;
        out.push_back(e);
    }
    return out;
}

std::vector<Edge> SplitContext::g_prime_out_edges(const Graph& g) const {
    auto in_b = [&](Vertex v) { return std::binary_search(boundary.begin(), boundary.end(), v); };
    auto in_i = [&](Vertex v) { return std::binary_search(inner.begin(), inner.end(), v); };
    std::vector<Edge> out;
    for (const Edge& e : g.edges()) {
        if (in_i(e.u) || in_i(e.v)) continue;
        if (in_b(e.u) && in_b(e.v) && std::binary_search(e_in.begin(), e_in.end(), e)) continue;
        out.push_back(e);
    }
    return out;
}

bool is_noncrossing(const std::vector<Edge>& m, const BoundaryCycle& bc) {
    std::vector<std::pair<int, int>> chords;
    for (const Edge& e : m) {
        int a = bc.pos_of(e.u), b = bc.pos_of(e.v);
        if (a < 0 || b < 0) return false;
        chords.emplace_back(std::min(a, b), std::max(a, b));
    }
    for (size_t i = 0; i < chords.size(); ++i)
        for (size_t j = i + 1; j < chords.size(); ++j) {
            auto [a, b] = chords[i];
            auto [c, d] = chords[j];
            bool c_in = a < c && c < b, d_in = a < d && d < b;
            if (c_in != d_in) return false;
        }
    return true;
}

std::vector<std::vector<Edge>> same_cluster_matchings(const ClusteredGraph& cg,
                                                      const std::vector<Vertex>& u) {
    std::vector<Vertex> us = u;
    std::sort(us.begin(), us.end());
    auto cidx = cg.cluster_index();
    std::vector<std::vector<Edge>> out;
    std::vector<Edge> cur;
    std::set<Vertex> used;
    auto rec = [&](auto&& self, size_t from) -> void {
        out.push_back(cur);
        for (size_t i = from; i < us.size(); ++i) {
            if (used.count(us[i])) continue;
            for (size_t j = i + 1; j < us.size(); ++j) {
                if (used.count(us[j]) || cidx[us[i]] != cidx[us[j]]) continue;
                used.insert(us[i]);
                used.insert(us[j]);
                cur.emplace_back(us[i], us[j]);
                self(self, i + 1);
                cur.pop_back();
                used.erase(us[i]);
                used.erase(us[j]);
            }
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<MatPenDelTriple> enumerate_matpendel(const ClusteredGraph& cg,
                                                 const BoundaryCycle& bc) {
    std::vector<MatPenDelTriple> out;
    for (auto& m : same_cluster_matchings(cg, bc.order)) {
        if (!is_noncrossing(m, bc)) continue;
        std::sort(m.begin(), m.end());
        std::set<Vertex> matched;
        for (const Edge& e : m) {
            matched.insert(e.u);
            matched.insert(e.v);
        }
        std::vector<Vertex> rest;
        for (Vertex v : bc.order)
            if (!matched.count(v)) rest.push_back(v);
        std::sort(rest.begin(), rest.end());
        // each leftover vertex goes to P, D or neither
        int k = static_cast<int>(rest.size());
        std::vector<int> assign(k, 0);
        while (true) {
            MatPenDelTriple t;
            t.m = m;
            for (int i = 0; i < k; ++i) {
                if (assign[i] == 1) t.p.push_back(rest[i]);
                if (assign[i] == 2) t.d.push_back(rest[i]);
            }
            out.push_back(std::move(t));
            int i = k - 1;
            while (i >= 0 && assign[i] == 2) assign[i--] = 0;
            if (i < 0) break;
            ++assign[i];
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

MatPenDelTriple extract_triple(const std::vector<Vertex>& u, const PartialSolution& s) {
    std::vector<Vertex> us = u;
    std::sort(us.begin(), us.end());
    auto in_u = [&](Vertex v) { return std::binary_search(us.begin(), us.end(), v); };
    MatPenDelTriple t;
    std::set<Vertex> matched;
    for (const auto& p : s.paths) {
        if (p.verts.size() >= 2) {
            Vertex a = p.verts.front(), b = p.verts.back();
            if (in_u(a) && in_u(b)) {
                t.m.emplace_back(a, b);
                matched.insert(a);
                matched.insert(b);
            }
        }
        for (size_t i = 0; i < p.verts.size(); ++i) {
            Vertex v = p.verts[i];
            if (!in_u(v)) continue;
            bool endpoint = (i == 0 || i + 1 == p.verts.size());
            int deg = (p.verts.size() == 1) ? 0 : (endpoint ? 1 : 2);
            if (deg == 2) t.d.push_back(v);
        }
    }
    for (const auto& p : s.paths) {
        if (p.verts.size() < 2) continue;
        for (Vertex v : {p.verts.front(), p.verts.back()})
            if (in_u(v) && !matched.count(v)) t.p.push_back(v);
    }
    std::sort(t.m.begin(), t.m.end());
    std::sort(t.p.begin(), t.p.end());
    t.p.erase(std::unique(t.p.begin(), t.p.end()), t.p.end());
    std::sort(t.d.begin(), t.d.end());
    return t;
}

bool are_complementary(const MatPenDelTriple& t_in, const MatPenDelTriple& t_out,
                       const ClusteredGraph& cg, const BoundaryCycle& bc) {
    auto rest_of = [&](const MatPenDelTriple& t) {
        std::set<Vertex> excl;
        for (const Edge& e : t.m) {
            excl.insert(e.u);
            excl.insert(e.v);
        }
        for (Vertex v : t.p) excl.insert(v);
        for (Vertex v : t.d) excl.insert(v);
        std::set<Vertex> rest;
        for (Vertex v : bc.order)
            if (!excl.count(v)) rest.insert(v);
        return rest;
    };
    // condition 1: D-containments
    std::set<Vertex> rest_out = rest_of(t_out), rest_in = rest_of(t_in);
    for (Vertex v : t_in.d)
        if (!rest_out.count(v)) return false;
    for (Vertex v : t_out.d)
        if (!rest_in.count(v)) return false;

    // condition 2: pendant-augmented union is a collection of cluster-pure
    // paths, one per touched cluster. Edge union is a multiset: a pair shared
    // by both matchings closes a 2-cycle and fails.
    auto cidx = cg.cluster_index();
    std::map<Vertex, int> deg;
    std::map<Vertex, std::vector<Vertex>> adj;
    std::vector<std::pair<Vertex, Vertex>> all_edges;
    for (const auto* m : {&t_in.m, &t_out.m})
        for (const Edge& e : *m) all_edges.emplace_back(e.u, e.v);
    {
        std::map<std::pair<Vertex, Vertex>, int> mult;
        for (auto& pr : all_edges)
            if (++mult[pr] > 1) return false;  // doubled pair closes a cycle
    }
    std::set<Vertex> vs;
    for (const Edge& e : t_in.m) {
        vs.insert(e.u);
        vs.insert(e.v);
    }
    for (const Edge& e : t_out.m) {
        vs.insert(e.u);
        vs.insert(e.v);
    }
    for (Vertex v : t_in.p) vs.insert(v);
    for (Vertex v : t_out.p) vs.insert(v);
    // pendant attachments as fresh negative ids
    int fresh = -1;
    std::vector<std::pair<Vertex, Vertex>> pend;
    for (Vertex v : t_in.p) pend.emplace_back(v, fresh--);
    for (Vertex v : t_out.p) pend.emplace_back(v, fresh--);
    std::map<Vertex, int> cluster_of;  // incl. fresh pendants
    for (Vertex v : vs) cluster_of[v] = cidx[v];
    for (auto& [v, q] : pend) cluster_of[q] = cidx[v];
    for (auto& [a, b] : all_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& [v, q] : pend) {
        adj[v].push_back(q);
        adj[q].push_back(v);
    }
    std::set<Vertex> nodes = vs;
    for (auto& [v, q] : pend) nodes.insert(q);
    for (Vertex v : nodes)
        if (adj[v].size() > 2) return false;
    // per component: path (|E| = |V|-1), cluster-pure
    std::set<Vertex> seen;
    std::map<int, int> cluster_path_count;
    for (Vertex s : nodes) {
        if (seen.count(s)) continue;
        std::vector<Vertex> stack{s};
        seen.insert(s);
        int nv = 0, nd = 0, cl = cluster_of[s];
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            ++nv;
            nd += static_cast<int>(adj[v].size());
            if (cluster_of[v] != cl) return false;
            for (Vertex w : adj[v])
                if (seen.insert(w).second) stack.push_back(w);
        }
        if (nd / 2 != nv - 1) return false;  // cycle
        if (++cluster_path_count[cl] > 1) return false;
    }
    return true;
}

bool is_sensible(const MatPenDelTriple& t_in, const SplitContext& ctx,
                 const ProblemInstance& inst) {
    const Graph& g = inst.graph();
    auto cidx = inst.cg.cluster_index();
    auto in_b = [&](Vertex v) {
        return std::binary_search(ctx.boundary.begin(), ctx.boundary.end(), v);
    };
    auto in_i = [&](Vertex v) { return std::binary_search(ctx.inner.begin(), ctx.inner.end(), v); };

    if (ctx.mode == Mode::VAR) {
        // item 1: no edge between I and O
        for (const Edge& e : g.edges()) {
            bool ui = in_i(e.u), vi = in_i(e.v);
            bool uo = !ui && !in_b(e.u), vo = !vi && !in_b(e.v);
            if ((ui && vo) || (uo && vi)) return false;
        }
    }

    // item 2: D_in vertices have no same-cluster neighbor in G'_in; leftover
    // boundary vertices have no same-cluster neighbor in G'_out
    std::set<Vertex> din(t_in.d.begin(), t_in.d.end());
    std::set<Vertex> touched(din.begin(), din.end());
    for (Vertex v : t_in.p) touched.insert(v);
    for (const Edge& e : t_in.m) {
        touched.insert(e.u);
        touched.insert(e.v);
    }
    for (const Edge& e : ctx.g_prime_in_edges(g)) {
        if (cidx[e.u] != cidx[e.v]) continue;
        if (din.count(e.u) || din.count(e.v)) return false;
    }
    for (const Edge& e : ctx.g_prime_out_edges(g)) {
        if (cidx[e.u] != cidx[e.v]) continue;
        for (Vertex v : {e.u, e.v})
            if (in_b(v) && !touched.count(v)) return false;
    }

    // item 3: a cluster straddling the two sides must meet V(M_in) u P_in
    std::set<Vertex> mp;
    for (const Edge& e : t_in.m) {
        mp.insert(e.u);
        mp.insert(e.v);
    }
    for (Vertex v : t_in.p) mp.insert(v);
    for (const auto& cl : inst.cg.clusters) {
        bool side_in = false, side_out = false, meets = false;
        for (Vertex v : cl) {
            bool d = din.count(v) > 0;
            if (in_i(v) || (in_b(v) && !d)) side_in = true;
            if (d || (!in_i(v) && !in_b(v))) side_out = true;
            if (mp.count(v)) meets = true;
        }
        if (side_in && side_out && !meets) return false;
    }
    return true;
}

// ---- augment_var ---------------------------------------------------------

using detail::corners_on;
using detail::insert_at;
using detail::insert_star;

AugmentResult augment_var(const ProblemInstance& parent,
                          const std::vector<Vertex>& piece_vertices,
                          const std::vector<Edge>& piece_edges, const BoundaryCycle& bc,
                          const MatPenDelTriple& t) {
    AugmentResult res;
    int t_sz = bc.size();

    // id space: piece vertices first, then gadget vertices
    std::vector<Vertex> pv = piece_vertices;
    std::sort(pv.begin(), pv.end());
    std::map<Vertex, int> par2new;
    for (size_t i = 0; i < pv.size(); ++i) par2new[pv[i]] = static_cast<int>(i);
    res.to_parent.assign(pv.begin(), pv.end());
    res.kind.assign(pv.size(), AugKind::ORIG);
    auto add_vertex = [&](AugKind k, Vertex parent_id) {
        res.to_parent.push_back(parent_id);
        res.kind.push_back(k);
        return static_cast<int>(res.to_parent.size()) - 1;
    };

    std::vector<Edge> gadget_edges;
    RotationSystem grot;
    std::optional<Dart> outer;
    std::vector<int> subdiv, witnesses, pendant_partners, hubs;

    if (t_sz > 0) {
        // cycle in rho order, subdivided (twice for a single boundary vertex)
        std::vector<int> seq;
        for (int i = 0; i < t_sz; ++i) {
            seq.push_back(par2new[bc.order[i]]);
            int s = add_vertex(AugKind::SUBDIV, -1);
            subdiv.push_back(s);
            seq.push_back(s);
            if (t_sz == 1) {
                int s2 = add_vertex(AugKind::SUBDIV, -1);
                subdiv.push_back(s2);
                seq.push_back(s2);
            }
        }
        int L = static_cast<int>(seq.size());
        grot.rot.resize(res.to_parent.size());
        Graph gg(static_cast<int>(res.to_parent.size()));
        for (int i = 0; i < L; ++i) {
            int a = seq[i], b = seq[(i + 1) % L];
            gg.add_edge(a, b);
            gadget_edges.emplace_back(a, b);
        }
        for (int i = 0; i < L; ++i)
            grot.rot[seq[i]] = {seq[(i - 1 + L) % L], seq[(i + 1) % L]};
        // inner face: the one traced from (seq[0], seq[1])
        outer = Dart{seq[1], seq[0]};

        auto grow = [&](int newv) {
            grot.rot.resize(res.to_parent.size());
            Graph g2(static_cast<int>(res.to_parent.size()));
            for (const Edge& e : gg.edges()) g2.add_edge(e.u, e.v);
            gg = std::move(g2);
            (void)newv;
        };

        // matching witnesses, canonical pair order
        for (const Edge& e : t.m) {
            int w = add_vertex(AugKind::M_WITNESS, -1);
            witnesses.push_back(w);
            grow(w);
            FaceMap fm = build_face_map(grot);
            int outer_f = fm.face_of_dart.at(*outer);
            int a = par2new[e.u], b = par2new[e.v];
            int found = -1;
            for (size_t f = 0; f < fm.faces.size(); ++f) {
                if (static_cast<int>(f) == outer_f) continue;
                if (!corners_on(fm, a, static_cast<int>(f)).empty() &&
                    !corners_on(fm, b, static_cast<int>(f)).empty()) {
                    if (found != -1) throw std::logic_error("augment: witness face not unique");
                    found = static_cast<int>(f);
                }
            }
            if (found == -1) throw std::logic_error("augment: no face for witness");
            insert_at(grot, a, w, corners_on(fm, a, found).front());
            insert_at(grot, b, w, corners_on(fm, b, found).front());
            grot.rot[w] = {a, b};
            gg.add_edge(a, w);
            gg.add_edge(b, w);
            gadget_edges.emplace_back(a, w);
            gadget_edges.emplace_back(b, w);
            if (!euler_genus_zero(gg, grot)) {
                std::reverse(grot.rot[w].begin(), grot.rot[w].end());
                if (!euler_genus_zero(gg, grot))
                    throw std::logic_error("augment: witness insertion broke the embedding");
            }
        }

        // pendants (marked, same cluster as their anchor)
        for (Vertex p : t.p) {
            int q = add_vertex(AugKind::PENDANT, -1);
            pendant_partners.push_back(q);
            grow(q);
            FaceMap fm = build_face_map(grot);
            int outer_f = fm.face_of_dart.at(*outer);
            int a = par2new[p];
            int found_f = -1, corner = -1;
            for (int i = 0; i < fm.corners_at(a); ++i) {
                int f = fm.corner_face[fm.corner_id(a, i)];
                if (f == outer_f) continue;
                found_f = f;
                corner = i;
                break;
            }
            if (found_f == -1) throw std::logic_error("augment: no face for pendant");
            insert_at(grot, a, q, corner);
            grot.rot[q] = {a};
            gg.add_edge(a, q);
            gadget_edges.emplace_back(a, q);
        }

        // two-round inner triangulation
        for (int round = 0; round < 2; ++round) {
            FaceMap fm = build_face_map(grot);
            int outer_f = fm.face_of_dart.at(*outer);
            std::vector<int> inner_faces;
            for (size_t f = 0; f < fm.faces.size(); ++f)
                if (static_cast<int>(f) != outer_f && !fm.faces[f].boundary.empty())
                    inner_faces.push_back(static_cast<int>(f));
            for (int f : inner_faces) {
                int h = add_vertex(AugKind::HUB, -1);
                hubs.push_back(h);
                grow(h);
                size_t before = gg.num_edges();
                insert_star(grot, gg, h, f, fm);
                for (size_t k = before; k < static_cast<size_t>(gg.num_edges()); ++k)
                    gadget_edges.push_back(gg.edges()[k]);
            }
        }
    } else {
        grot.rot.resize(res.to_parent.size());
    }

    // assemble the instance
    int n_new = static_cast<int>(res.to_parent.size());
    Graph g(n_new);
    for (const Edge& e : piece_edges) g.add_edge(par2new.at(e.u), par2new.at(e.v));
    for (const Edge& e : gadget_edges) g.try_add_edge(e.u, e.v);
    g.normalize();

    auto cidx = parent.cg.cluster_index();
    std::set<Vertex> dset(t.d.begin(), t.d.end());
    std::vector<std::vector<Vertex>> clusters(parent.cg.clusters.size());
    for (Vertex v : pv)
        if (!dset.count(v)) clusters[cidx[v]].push_back(par2new[v]);
    for (size_t i = 0; i < t.m.size(); ++i) clusters[cidx[t.m[i].u]].push_back(witnesses[i]);
    for (size_t i = 0; i < t.p.size(); ++i) clusters[cidx[t.p[i]]].push_back(pendant_partners[i]);

    std::vector<std::vector<Vertex>> final_clusters;
    for (auto& cl : clusters)
        if (!cl.empty()) {
            std::sort(cl.begin(), cl.end());
            final_clusters.push_back(cl);
        }
    for (Vertex v : t.d) final_clusters.push_back({par2new[v]});
    for (int s : subdiv) final_clusters.push_back({s});
    for (int h : hubs) final_clusters.push_back({h});

    std::vector<Vertex> marked;
    for (Vertex v : parent.cg.marked)
        if (par2new.count(v)) marked.push_back(par2new[v]);
    for (int q : pendant_partners) marked.push_back(q);
    std::sort(marked.begin(), marked.end());

    res.inst.cg.g = std::move(g);
    res.inst.cg.clusters = std::move(final_clusters);
    res.inst.cg.marked = std::move(marked);
    res.inst.mode = Mode::VAR;
    res.inst.variant = Variant::COMPLETION;
    grot.rot.resize(n_new);
    res.gadget_rot = std::move(grot);
    res.outer_dart = outer;
    return res;
}

// ---- recovery and combine --------------------------------------------------

PartialSolution recover_partial_solution(const SaturationSolution& z_aug,
                                         const AugmentResult& aug, const MatPenDelTriple& t,
                                         const ProblemInstance& parent, const BoundaryCycle& bc) {
    const ProblemInstance& ai = aug.inst;
    const Graph& ag = ai.graph();
    std::set<Vertex> d_par(t.d.begin(), t.d.end());

    PartialSolution out;
    auto parent_cidx = parent.cg.cluster_index();
    for (size_t ci = 0; ci < ai.cg.clusters.size(); ++ci) {
        const auto& cl = ai.cg.clusters[ci];
        // reconstruct the path order of this cluster
        std::map<Vertex, std::vector<Vertex>> adj;
        std::set<Vertex> cs(cl.begin(), cl.end());
        for (const Edge& e : ag.edges())
            if (cs.count(e.u) && cs.count(e.v)) {
                adj[e.u].push_back(e.v);
                adj[e.v].push_back(e.u);
            }
        for (const Edge& e : z_aug.z_sets[ci]) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        Vertex start = cl.front();
        for (Vertex v : cl)
            if (adj[v].size() <= 1) {
                start = v;
                break;
            }
        std::vector<Vertex> seq{start};
        std::set<Vertex> used{start};
        while (seq.size() < cl.size()) {
            bool moved = false;
            for (Vertex w : adj[seq.back()])
                if (!used.count(w)) {
                    seq.push_back(w);
                    used.insert(w);
                    moved = true;
                    break;
                }
            if (!moved) throw std::logic_error("recover: cluster is not a path");
        }

        // drop new singleton clusters and D vertices entirely
        if (cl.size() == 1) {
            Vertex v = cl.front();
            if (aug.kind[v] != AugKind::ORIG) continue;
            if (d_par.count(aug.to_parent[v])) continue;
        }
        // split runs of original vertices
        std::vector<Vertex> run;
        auto flush = [&]() {
            if (run.empty()) return;
            ClusterPath cp;
            cp.verts = run;
            cp.cluster = parent_cidx[run.front()];
            out.paths.push_back(std::move(cp));
            run.clear();
        };
        for (Vertex v : seq) {
            if (aug.kind[v] == AugKind::ORIG)
                run.push_back(aug.to_parent[v]);
            else
                flush();
        }
        flush();
    }

    // contract checks (Lemma-style guarantees; failure indicates a bug)
    const Graph& pg = parent.graph();
    if (!out.properly_marked(pg, parent.cg))
        throw std::logic_error("recover: partial solution not properly marked");
    MatPenDelTriple t_out = extract_triple(bc.order, out);
    if (!is_noncrossing(t_out.m, bc))
        throw std::logic_error("recover: extracted matching crosses rho");
    if (!are_complementary(t, t_out, parent.cg, bc))
        throw std::logic_error("recover: triples are not complementary");
    {
        std::set<Vertex> want;
        for (size_t i = 0; i < aug.to_parent.size(); ++i)
            if (aug.kind[i] == AugKind::ORIG && !d_par.count(aug.to_parent[i]))
                want.insert(aug.to_parent[i]);
        std::set<Vertex> got;
        for (const auto& p : out.paths)
            for (Vertex v : p.verts) got.insert(v);
        if (want != got) throw std::logic_error("recover: vertex coverage mismatch");
    }
    return out;
}

SaturationSolution combine(const PartialSolution& s_in, const PartialSolution& s_out,
                           const ProblemInstance& inst) {
    const Graph& g = inst.graph();
    auto cidx = inst.cg.cluster_index();
    std::set<Edge> z;
    for (const PartialSolution* s : {&s_in, &s_out})
        for (const Edge& e : s->edges())
            if (!g.has_edge(e.u, e.v)) z.insert(e);
    SaturationSolution sol;
    sol.z_sets.assign(inst.cg.clusters.size(), {});
    for (const Edge& e : z) {
        if (cidx[e.u] != cidx[e.v]) throw std::logic_error("combine: cross-cluster edge");
        sol.z_sets[cidx[e.u]].push_back(e);
    }
    VerifyResult vr = verify_solution(inst, sol);
    if (!vr.ok) throw std::logic_error("combine: verification failed: " + vr.reason);
    if (inst.mode == Mode::VAR) {
        Graph h = g;
        for (const Edge& e : z) h.add_edge(e.u, e.v);
        auto rs = is_planar(h);
        sol.witness = std::make_shared<RotationSystem>(*rs);
    } else {
        auto emb = extend_embedding(*inst.embedding, {z.begin(), z.end()});
        sol.witness = std::make_shared<RotationSystem>(emb->rot);
    }
    return sol;
}

std::vector<std::vector<Vertex>> cyclic_orders(const std::vector<Vertex>& u) {
    std::vector<Vertex> us = u;
    std::sort(us.begin(), us.end());
    std::vector<std::vector<Vertex>> out;
    if (us.empty()) {
        out.push_back({});
        return out;
    }
    std::vector<Vertex> rest(us.begin() + 1, us.end());
    do {
        std::vector<Vertex> seq{us[0]};
        seq.insert(seq.end(), rest.begin(), rest.end());
        out.push_back(seq);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

}  // namespace cpls
