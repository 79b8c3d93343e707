#include "cpls/kernel_fixed.hpp"

#include <cassert>
#include <set>
#include <stdexcept>

namespace cpls {

namespace {

// D2 face of a full-drawing dart: flood across darts not in G2
int d2_face_of_dart(const EmbeddedGraph& eg, const std::set<Vertex>& g2set,
                    const FaceMap& full_fm, const FaceMap& d2_fm, Dart d) {
    // walk the full face structure, merging faces across non-G2 darts
    std::set<int> seen;
    std::vector<int> stack{full_fm.face_of_dart.at(d)};
    seen.insert(stack[0]);
    while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        for (const Dart& b : full_fm.faces[f].boundary) {
            if (g2set.count(b.tail) && g2set.count(b.head)) {
                if (d2_fm.face_of_dart.count(b)) return d2_fm.face_of_dart.at(b);
                continue;
            }
            int f2 = full_fm.face_of_dart.at(b.rev());
            if (seen.insert(f2).second) stack.push_back(f2);
        }
    }
    return -1;
}

}  // namespace

FixedKernelContext build_fixed_context(const ProblemInstance& inst,
                                       const std::vector<Vertex>& cover) {
    if (inst.mode != Mode::FIXED || !inst.embedding)
        throw std::invalid_argument("build_fixed_context: FIXED instance required");
    const EmbeddedGraph& eg = *inst.embedding;
    const Graph& g = eg.g;

    FixedKernelContext ctx;
    VarKernelContext base = build_context(g, cover);
    ctx.cover = base.cover;
    ctx.core = base.core;
    ctx.t0 = base.t0;
    ctx.t1 = base.t1;
    ctx.t2 = base.t2;
    ctx.k = static_cast<int>(base.cover.size());

    std::set<Vertex> g2set(ctx.core.begin(), ctx.core.end());
    g2set.insert(ctx.t2.begin(), ctx.t2.end());

    // restriction of the drawing to G2 (parent vertex ids, others isolated)
    ctx.g2 = Graph(g.num_vertices());
    for (const Edge& e : g.edges())
        if (g2set.count(e.u) && g2set.count(e.v)) ctx.g2.add_edge(e.u, e.v);
    ctx.g2.normalize();
    ctx.d2_rot.rot.resize(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (!g2set.count(v)) continue;
        for (Vertex w : eg.rot.rot[v])
            if (g2set.count(w)) ctx.d2_rot.rot[v].push_back(w);
    }
    ctx.d2 = build_face_map(ctx.d2_rot);

    ctx.alpha = static_cast<int>(g2set.size());
    int traced = 0;
    for (const Face& f : ctx.d2.faces)
        if (!f.boundary.empty()) ++traced;
    // faces of D2: count per component with edges; isolated G2 vertices and
    // absent vertices contribute synthetic faces we must not count
    ctx.beta = 0;
    for (size_t f = 0; f < ctx.d2.faces.size(); ++f) {
        if (ctx.d2.faces[f].boundary.empty()) {
            Vertex rep = -1;
            for (Vertex v = 0; v < g.num_vertices(); ++v)
                if (ctx.d2.comp_of_vertex[v] == ctx.d2.comp_of_face[f]) {
                    rep = v;
                    break;
                }
            if (rep != -1 && g2set.count(rep)) ++ctx.beta;  // isolated core vertex
        } else {
            ++ctx.beta;
        }
    }

    // face classification
    std::set<Vertex> coreset(ctx.core.begin(), ctx.core.end());
    ctx.special.assign(ctx.d2.faces.size(), false);
    for (size_t f = 0; f < ctx.d2.faces.size(); ++f) {
        std::set<Vertex> cs;
        for (const Dart& d : ctx.d2.faces[f].boundary)
            if (coreset.count(d.tail)) cs.insert(d.tail);
        ctx.special[f] = cs.size() > 2;
    }

    // positions of T0/T1 vertices
    FaceMap full_fm = build_face_map(eg.rot);
    ctx.small_face.assign(g.num_vertices(), -1);
    for (Vertex v : ctx.t1) {
        Vertex a = g.neighbors(v)[0];
        ctx.small_face[v] = d2_face_of_dart(eg, g2set, full_fm, ctx.d2, Dart{v, a});
    }
    if (!ctx.t0.empty()) {
        auto comp = g.component_ids();
        std::map<int, std::pair<int, int>> host;  // comp -> (host comp, host face local)
        for (const NestEntry& ne : eg.nesting) host[ne.comp] = {ne.host_comp, ne.host_face};
        std::function<int(int)> face_of_comp = [&](int c) -> int {
            auto it = host.find(c);
            if (it == host.end()) {
                // root component: the outer D2 face, via the outer dart if any
                if (eg.outer && ctx.d2.face_of_dart.size() > 0)
                    return d2_face_of_dart(eg, g2set, full_fm, ctx.d2, *eg.outer);
                for (auto& [d, f] : ctx.d2.face_of_dart) {
                    (void)f;
                    return d2_face_of_dart(eg, g2set, full_fm, ctx.d2, d);
                }
                return -1;
            }
            auto [hc, hf] = it->second;
            auto faces = full_fm.faces_of_comp(hc);
            if (hf < 0 || hf >= static_cast<int>(faces.size())) return -1;
            const Face& f = full_fm.faces[faces[hf]];
            if (f.boundary.empty()) return face_of_comp(hc);
            return d2_face_of_dart(eg, g2set, full_fm, ctx.d2, f.boundary.front());
        };
        for (Vertex v : ctx.t0) ctx.small_face[v] = face_of_comp(comp[v]);
    }

    // bricks: chains of C4-clean faces per core pair
    std::set<Vertex> t2set(ctx.t2.begin(), ctx.t2.end());
    struct CleanInfo {
        Vertex a, b, t1, t2;
    };
    std::map<int, CleanInfo> clean;  // face -> structure
    for (size_t f = 0; f < ctx.d2.faces.size(); ++f) {
        const auto& bd = ctx.d2.faces[f].boundary;
        if (bd.size() != 4 || ctx.special[f]) continue;
        std::vector<Vertex> cs, ts;
        bool ok = true;
        for (const Dart& d : bd)
            (coreset.count(d.tail) ? cs : ts).push_back(d.tail);
        if (cs.size() != 2 || ts.size() != 2 || cs[0] == cs[1] || ts[0] == ts[1]) ok = false;
        if (ok) {
            for (Vertex v : ts)
                if (!t2set.count(v)) ok = false;
        }
        if (ok) {
            // alternating pattern core/t2
            for (size_t i = 0; i < 4; ++i) {
                bool c1 = coreset.count(bd[i].tail) > 0;
                bool c2 = coreset.count(bd[(i + 1) % 4].tail) > 0;
                if (c1 == c2) ok = false;
            }
        }
        if (!ok) continue;
        std::sort(cs.begin(), cs.end());
        std::sort(ts.begin(), ts.end());
        clean[static_cast<int>(f)] = {cs[0], cs[1], ts[0], ts[1]};
    }
    // group by pair, chain by shared t2 vertices
    std::map<std::pair<Vertex, Vertex>, std::vector<int>> by_pair;
    for (auto& [f, info] : clean) by_pair[{info.a, info.b}].push_back(f);
    for (auto& [pr, faces] : by_pair) {
        std::map<Vertex, std::vector<int>> by_t;
        for (int f : faces) {
            by_t[clean[f].t1].push_back(f);
            by_t[clean[f].t2].push_back(f);
        }
        std::set<int> used;
        for (int f0 : faces) {
            if (used.count(f0)) continue;
            // walk left as far as possible, then read the chain rightwards
            FixedKernelContext::Brick br;
            br.a = pr.first;
            br.b = pr.second;
            std::vector<int> chain_faces{f0};
            used.insert(f0);
            bool cyclic = false;
            for (int dir = 0; dir < 2; ++dir) {
                Vertex t = dir == 0 ? clean[f0].t1 : clean[f0].t2;
                int cur = f0;
                while (true) {
                    int nxt = -1;
                    for (int f2 : by_t[t])
                        if (f2 != cur && !used.count(f2)) nxt = f2;
                    if (nxt == -1) {
                        // check for a cyclic closure back to f0
                        for (int f2 : by_t[t])
                            if (f2 == f0 && chain_faces.size() > 2) cyclic = true;
                        break;
                    }
                    used.insert(nxt);
                    if (dir == 0)
                        chain_faces.insert(chain_faces.begin(), nxt);
                    else
                        chain_faces.push_back(nxt);
                    t = clean[nxt].t1 == t ? clean[nxt].t2 : clean[nxt].t1;
                    cur = nxt;
                }
            }
            br.faces = chain_faces;
            br.degenerate = cyclic;
            // t2 chain along the faces
            if (!chain_faces.empty()) {
                if (chain_faces.size() == 1) {
                    br.chain = {clean[chain_faces[0]].t1, clean[chain_faces[0]].t2};
                } else {
                    Vertex shared0 = -1;
                    for (Vertex x : {clean[chain_faces[0]].t1, clean[chain_faces[0]].t2})
                        for (Vertex y : {clean[chain_faces[1]].t1, clean[chain_faces[1]].t2})
                            if (x == y) shared0 = x;
                    Vertex first = clean[chain_faces[0]].t1 == shared0 ? clean[chain_faces[0]].t2
                                                                       : clean[chain_faces[0]].t1;
                    br.chain.push_back(first);
                    Vertex cur = shared0;
                    for (size_t i = 1; i < chain_faces.size(); ++i) {
                        br.chain.push_back(cur);
                        cur = clean[chain_faces[i]].t1 == cur ? clean[chain_faces[i]].t2
                                                              : clean[chain_faces[i]].t1;
                    }
                    br.chain.push_back(cur);
                }
            }
            ctx.bricks.push_back(std::move(br));
        }
    }
    std::sort(ctx.bricks.begin(), ctx.bricks.end(), [](const auto& x, const auto& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.faces < y.faces;
    });
    return ctx;
}

// ---- deletion preserving the drawing ---------------------------------------

ProblemInstance delete_vertices_fixed(const ProblemInstance& inst,
                                      const std::vector<Vertex>& del) {
    const EmbeddedGraph& eg = *inst.embedding;
    std::set<Vertex> ds(del.begin(), del.end());
    int n = inst.n();
    std::vector<int> remap(n, -1);
    int m = 0;
    for (Vertex v = 0; v < n; ++v)
        if (!ds.count(v)) remap[v] = m++;

    ProblemInstance out = delete_vertices(inst, del);
    auto emb = std::make_shared<EmbeddedGraph>();
    emb->g = out.cg.g;
    emb->rot.rot.resize(m);
    for (Vertex v = 0; v < n; ++v) {
        if (remap[v] < 0) continue;
        for (Vertex w : eg.rot.rot[v])
            if (remap[w] >= 0) emb->rot.rot[remap[v]].push_back(remap[w]);
    }

    // components must not split
    auto oldc = eg.g.component_ids();
    auto newc = emb->g.component_ids();
    std::map<int, int> cmap;
    for (Vertex v = 0; v < n; ++v) {
        if (remap[v] < 0) continue;
        auto it = cmap.find(oldc[v]);
        if (it == cmap.end())
            cmap[oldc[v]] = newc[remap[v]];
        else if (it->second != newc[remap[v]])
            throw std::logic_error("delete_vertices_fixed: deletion split a component");
    }

    FaceMap old_fm = build_face_map(eg.rot);
    FaceMap new_fm = build_face_map(emb->rot);
    auto remap_face = [&](int host_comp_old, int host_face_local) -> std::pair<int, int> {
        auto faces_old = old_fm.faces_of_comp(host_comp_old);
        int new_comp = cmap.at(host_comp_old);
        auto faces_new = new_fm.faces_of_comp(new_comp);
        int global_old = faces_old[host_face_local];
        for (const Dart& d : old_fm.faces[global_old].boundary) {
            if (remap[d.tail] < 0 || remap[d.head] < 0) continue;
            Dart nd{remap[d.tail], remap[d.head]};
            if (!new_fm.face_of_dart.count(nd)) continue;
            int g2 = new_fm.face_of_dart.at(nd);
            int local = static_cast<int>(std::find(faces_new.begin(), faces_new.end(), g2) -
                                         faces_new.begin());
            if (local < static_cast<int>(faces_new.size())) return {new_comp, local};
        }
        return {new_comp, 0};
    };
    for (const NestEntry& ne : eg.nesting) {
        bool comp_alive = cmap.count(ne.comp) > 0;
        bool host_alive = cmap.count(ne.host_comp) > 0;
        if (!comp_alive) continue;
        if (!host_alive) continue;  // host vanished: component becomes a root
        auto [hc, hf] = remap_face(ne.host_comp, ne.host_face);
        emb->nesting.push_back({cmap.at(ne.comp), hc, hf});
    }
    if (eg.outer && remap[eg.outer->tail] >= 0 && remap[eg.outer->head] >= 0 &&
        emb->g.has_edge(remap[eg.outer->tail], remap[eg.outer->head]))
        emb->outer = Dart{remap[eg.outer->tail], remap[eg.outer->head]};
    out.embedding = emb;
    return out;
}

// ---- T2 reduction ----------------------------------------------------------

namespace {

struct Window {
    std::vector<int> faces;     // W faces
    std::vector<Vertex> chain;  // W+1 t2 vertices
    Vertex a, b;
    void reflect() {
        std::reverse(faces.begin(), faces.end());
        std::reverse(chain.begin(), chain.end());
    }
};

// pendant slots of `anchor` inside D2 face f, ordered rotation-forward across
// the face corner; returns full-graph pendant vertices
std::vector<Vertex> pendant_slots(const ProblemInstance& inst, const FixedKernelContext& ctx,
                                  Vertex anchor, int face) {
    const EmbeddedGraph& eg = *inst.embedding;
    std::vector<Vertex> out;
    const auto& d2r = ctx.d2_rot.rot[anchor];
    if (d2r.empty()) {
        // isolated-in-G2 anchor: all pendants at it live in its face
        for (Vertex w : eg.rot.rot[anchor])
            if (ctx.small_face[w] == face && inst.graph().degree(w) == 1) out.push_back(w);
        return out;
    }
    int dd = static_cast<int>(d2r.size());
    for (int i = 0; i < dd; ++i) {
        int cid = ctx.d2.corner_id(anchor, i);
        if (ctx.d2.corner_face[cid] != face) continue;
        Vertex from = d2r[i], to = d2r[(i + 1) % dd];
        // full-rotation arc strictly between `from` and `to`
        const auto& full = eg.rot.rot[anchor];
        int start = -1;
        for (size_t j = 0; j < full.size(); ++j)
            if (full[j] == from) start = static_cast<int>(j);
        for (size_t s = 1; s < full.size(); ++s) {
            Vertex w = full[(start + s) % full.size()];
            if (w == to) break;
            if (inst.graph().degree(w) == 1) out.push_back(w);
        }
    }
    return out;
}

bool superclean(const ProblemInstance& inst, const FixedKernelContext& ctx, int face, Vertex a,
                Vertex b) {
    auto cidx = inst.cg.cluster_index();
    int ca = cidx[a], cb = cidx[b];
    for (Vertex v = 0; v < inst.n(); ++v)
        if (ctx.small_face[v] == face && (cidx[v] == ca || cidx[v] == cb)) return false;
    return true;
}

// interior vertex whose cluster reaches outside the face
bool stranded_interior(const ProblemInstance& inst, const FixedKernelContext& ctx, int face,
                       Vertex vleft, Vertex vright) {
    auto cidx = inst.cg.cluster_index();
    std::set<Vertex> boundary;
    for (const Dart& d : ctx.d2.faces[face].boundary) boundary.insert(d.tail);
    for (Vertex c = 0; c < inst.n(); ++c) {
        if (ctx.small_face[c] != face) continue;
        if (cidx[c] == cidx[vleft] || cidx[c] == cidx[vright]) continue;
        for (Vertex d = 0; d < inst.n(); ++d) {
            if (d == c || cidx[d] != cidx[c]) continue;
            bool inside = ctx.small_face[d] == face;
            bool on_boundary = boundary.count(d) > 0;
            if (!inside && !on_boundary) return true;
        }
    }
    return false;
}

// pendants of cluster `want` at `anchor` in `face` must all come after the
// pendants of cluster `before` when walking from the `from` corner side
bool rainbow_order_ok(const ProblemInstance& inst, const FixedKernelContext& ctx, int face,
                      Vertex vfrom, Vertex vto, int cl_from, int cl_to) {
    auto cidx = inst.cg.cluster_index();
    for (Vertex anchor : {ctx.d2.faces[face].boundary[0].tail,
                          ctx.d2.faces[face].boundary[1].tail,
                          ctx.d2.faces[face].boundary[2].tail,
                          ctx.d2.faces[face].boundary[3].tail}) {
        if (cidx[anchor] == cl_from || cidx[anchor] == cl_to) continue;
        // orient the slot arc from the vfrom side toward the vto side
        const auto& d2r = ctx.d2_rot.rot[anchor];
        if (std::find(d2r.begin(), d2r.end(), vfrom) == d2r.end() ||
            std::find(d2r.begin(), d2r.end(), vto) == d2r.end())
            continue;
        std::vector<Vertex> slots = pendant_slots(inst, ctx, anchor, face);
        // pendant_slots walks rotation-forward from the corner (from, to);
        // determine whether that corner starts at vfrom or vto
        int dd = static_cast<int>(d2r.size());
        bool from_first = false;
        for (int i = 0; i < dd; ++i) {
            int cid = ctx.d2.corner_id(anchor, i);
            if (ctx.d2.corner_face[cid] != face) continue;
            from_first = (d2r[i] == vfrom);
        }
        if (!from_first) std::reverse(slots.begin(), slots.end());
        bool seen_to_cluster = false;
        for (Vertex w : slots) {
            if (cidx[w] == cl_to) seen_to_cluster = true;
            if (cidx[w] == cl_from && seen_to_cluster) return false;
        }
    }
    return true;
}

}  // namespace

RuleResult rule_reduce_t2_fixed(const ProblemInstance& inst, const std::vector<Vertex>& cover,
                                const FixedKernelThresholds& th) {
    FixedKernelContext ctx = build_fixed_context(inst, cover);
    if (static_cast<int>(ctx.t2.size()) < th.t2_factor * ctx.k + 1)
        return {RuleOutcome::PASS, inst};

    int W = th.window;
    // first brick carrying a W-window of clean faces
    for (const auto& br : ctx.bricks) {
        if (static_cast<int>(br.faces.size()) < W) continue;
        Window win;
        win.a = br.a;
        win.b = br.b;
        win.faces.assign(br.faces.begin(), br.faces.begin() + W);
        win.chain.assign(br.chain.begin(), br.chain.begin() + W + 1);

        auto cidx = inst.cg.cluster_index();
        std::vector<bool> sc(W);
        for (int i = 0; i < W; ++i) sc[i] = superclean(inst, ctx, win.faces[i], win.a, win.b);
        int start = -1;
        for (int i = 0; i + 2 < W; ++i)
            if (sc[i] && sc[i + 1] && sc[i + 2]) {
                start = i;
                break;
            }
        if (start == -1) {
            // the counting argument behind this rejection needs the full
            // window; smaller test windows just pass
            if (W >= 13) return {RuleOutcome::NO, inst};
            return {RuleOutcome::PASS, inst};
        }
        // windows f_{i-1}, f_i, f_{i+1} with chain v_{i-1} v_i v_{i+1} v_{i+2}
        int fi_1 = win.faces[start], fi = win.faces[start + 1], fi1 = win.faces[start + 2];
        Vertex v_im1 = win.chain[start], v_i = win.chain[start + 1],
               v_ip1 = win.chain[start + 2], v_ip2 = win.chain[start + 3];

        auto bad = [&](Vertex mid, Vertex left, Vertex right) {
            return cidx[mid] != cidx[left] && cidx[mid] != cidx[right] &&
                   cidx[left] == cidx[right];
        };
        bool bad_i = bad(v_i, v_im1, v_ip1);
        bool bad_i1 = bad(v_ip1, v_i, v_ip2);
        if (bad_i && bad_i1) return {RuleOutcome::NO, inst};
        if (bad_i) {
            // mirror the window so the non-bad vertex plays v_i
            std::swap(fi_1, fi1);
            std::swap(v_im1, v_ip2);
            std::swap(v_i, v_ip1);
        }

        // interior vertices of the two superclean faces must not be stranded
        if (stranded_interior(inst, ctx, fi_1, v_im1, v_i)) return {RuleOutcome::NO, inst};
        if (stranded_interior(inst, ctx, fi, v_i, v_ip1)) return {RuleOutcome::NO, inst};

        if (cidx[v_i] == cidx[v_ip1] || cidx[v_i] == cidx[v_im1]) {
            return {RuleOutcome::REDUCED, delete_vertices_fixed(inst, {v_i})};
        }
        // v_i in its own cluster: pendant-order checks, then delete v_{i+1}
        if (!rainbow_order_ok(inst, ctx, fi, v_ip1, v_i, cidx[v_ip1], cidx[v_i]))
            return {RuleOutcome::NO, inst};
        if (!rainbow_order_ok(inst, ctx, fi_1, v_im1, v_i, cidx[v_im1], cidx[v_i]))
            return {RuleOutcome::NO, inst};
        return {RuleOutcome::REDUCED, delete_vertices_fixed(inst, {v_ip1})};
    }
    return {RuleOutcome::PASS, inst};
}

// ---- types -----------------------------------------------------------------

TypesResult compute_types(const FixedKernelContext& ctx, const ProblemInstance& inst) {
    TypesResult out;
    std::set<Vertex> g2set(ctx.core.begin(), ctx.core.end());
    g2set.insert(ctx.t2.begin(), ctx.t2.end());
    const Graph& g = inst.graph();
    for (size_t ci = 0; ci < inst.cg.clusters.size(); ++ci) {
        const auto& cl = inst.cg.clusters[ci];
        bool touches = false;
        for (Vertex v : cl)
            if (g2set.count(v)) touches = true;
        if (touches) continue;
        std::set<int> faces;
        std::set<Vertex> anchors;
        for (Vertex v : cl) {
            faces.insert(ctx.small_face[v]);
            if (g.degree(v) == 1) anchors.insert(g.neighbors(v)[0]);
        }
        if (faces.size() != 1) {
            out.no = true;
            return out;
        }
        TypeKey key;
        key.face = *faces.begin();
        key.anchors = {anchors.begin(), anchors.end()};
        out.clusters_by_type[key].push_back(static_cast<int>(ci));
    }
    return out;
}

RuleOutcome rule_bound_types(const FixedKernelContext& ctx, const ProblemInstance& inst) {
    TypesResult tr = compute_types(ctx, inst);
    if (tr.no) return RuleOutcome::NO;
    if (static_cast<int>(tr.clusters_by_type.size()) > 7 * ctx.alpha + 8 * ctx.beta)
        return RuleOutcome::NO;
    // planar-enhancement check for types {f, a1, a2}: the chords must admit a
    // pairwise non-interleaving placement on the face walk
    std::map<int, std::vector<std::pair<Vertex, Vertex>>> chords;
    for (auto& [key, cls] : tr.clusters_by_type)
        if (key.anchors.size() == 2) chords[key.face].push_back({key.anchors[0], key.anchors[1]});
    for (auto& [f, cs] : chords) {
        if (f < 0 || ctx.d2.faces[f].boundary.empty()) continue;
        std::vector<Vertex> walk;
        for (const Dart& d : ctx.d2.faces[f].boundary) walk.push_back(d.tail);
        int L = static_cast<int>(walk.size());
        // choose an occurrence pair per chord, pairwise non-interleaving
        std::vector<std::pair<int, int>> placed;
        std::function<bool(size_t)> rec = [&](size_t i) -> bool {
            if (i == cs.size()) return true;
            for (int x = 0; x < L; ++x) {
                if (walk[x] != cs[i].first) continue;
                for (int y = 0; y < L; ++y) {
                    if (walk[y] != cs[i].second) continue;
                    int a = std::min(x, y), b = std::max(x, y);
                    bool ok = true;
                    for (auto& [c, d] : placed) {
                        bool c_in = a < c && c < b, d_in = a < d && d < b;
                        if (c_in != d_in) ok = false;
                    }
                    if (!ok) continue;
                    placed.push_back({a, b});
                    if (rec(i + 1)) return true;
                    placed.pop_back();
                }
            }
            return false;
        };
        if (!rec(0)) return RuleOutcome::NO;
    }
    return RuleOutcome::PASS;
}

// ---- dedupe same-type clusters ----------------------------------------------

RuleResult rule_dedupe_same_type(const ProblemInstance& inst, const std::vector<Vertex>& cover) {
    FixedKernelContext ctx = build_fixed_context(inst, cover);
    TypesResult tr = compute_types(ctx, inst);
    if (tr.no) return {RuleOutcome::NO, inst};
    auto cidx = inst.cg.cluster_index();
    const Graph& g = inst.graph();

    for (auto& [key, cls] : tr.clusters_by_type) {
        if (key.anchors.empty() || cls.size() < 3) continue;
        if (key.anchors.size() >= 3) return {RuleOutcome::NO, inst};

        if (key.anchors.size() == 1) {
            Vertex a = key.anchors[0];
            int c1 = cls[0];
            const auto& v1 = inst.cg.clusters[c1];
            if (v1.size() == 1)
                return {RuleOutcome::REDUCED, delete_vertices_fixed(inst, v1)};
            // first and last V1 pendants along the slot arc at a
            std::vector<Vertex> slots = pendant_slots(inst, ctx, a, key.face);
            std::vector<int> mine;
            for (size_t i = 0; i < slots.size(); ++i)
                if (cidx[slots[i]] == c1) mine.push_back(static_cast<int>(i));
            if (mine.size() < 2) continue;
            int bi = mine.front(), cpos = mine.back();
            std::set<Vertex> lset(slots.begin() + bi + 1, slots.begin() + cpos);
            // a cluster trapped between b and c must live there entirely
            for (Vertex d : lset) {
                if (cidx[d] == c1 || cidx[d] == cidx[a]) continue;
                for (Vertex m = 0; m < inst.n(); ++m)
                    if (m != d && cidx[m] == cidx[d] && !lset.count(m))
                        return {RuleOutcome::NO, inst};
            }
            return {RuleOutcome::REDUCED, delete_vertices_fixed(inst, {slots[cpos]})};
        }

        // |anchors| == 2: rainbow pattern
        Vertex s = key.anchors[0], t = key.anchors[1];
        std::vector<Vertex> slots_s = pendant_slots(inst, ctx, s, key.face);
        std::vector<Vertex> slots_t = pendant_slots(inst, ctx, t, key.face);
        // cyclic slot order around the face: s-arc then t-arc
        std::vector<Vertex> ring = slots_s;
        ring.insert(ring.end(), slots_t.begin(), slots_t.end());
        auto pos_in_ring = [&](Vertex v) {
            for (size_t i = 0; i < ring.size(); ++i)
                if (ring[i] == v) return static_cast<int>(i);
            return -1;
        };
        int c[3] = {cls[0], cls[1], cls[2]};
        std::vector<int> perm{0, 1, 2};
        bool found = false;
        Vertex pick_s[3] = {-1, -1, -1}, pick_t[3] = {-1, -1, -1};
        std::sort(perm.begin(), perm.end());
        do {
            // greedy picks along the ring: s^1 s^2 s^3 t^3 t^2 t^1 cyclically
            std::vector<std::vector<Vertex>> sv(3), tv(3);
            for (Vertex w : slots_s)
                for (int j = 0; j < 3; ++j)
                    if (cidx[w] == c[perm[j]]) sv[j].push_back(w);
            for (Vertex w : slots_t)
                for (int j = 0; j < 3; ++j)
                    if (cidx[w] == c[perm[j]]) tv[j].push_back(w);
            bool ok = true;
            for (int j = 0; j < 3; ++j)
                if (sv[j].empty() || tv[j].empty()) ok = false;
            if (!ok) continue;
            // enumerate small pick products
            for (Vertex s1 : sv[0])
                for (Vertex s2 : sv[1])
                    for (Vertex s3 : sv[2])
                        for (Vertex t3 : tv[2])
                            for (Vertex t2 : tv[1])
                                for (Vertex t1 : tv[0]) {
                                    std::vector<int> ps{pos_in_ring(s1), pos_in_ring(s2),
                                                        pos_in_ring(s3), pos_in_ring(t3),
                                                        pos_in_ring(t2), pos_in_ring(t1)};
                                    // cyclic increasing?
                                    int shift = static_cast<int>(
                                        std::min_element(ps.begin(), ps.end()) - ps.begin());
                                    bool inc = true;
                                    for (int i = 0; i + 1 < 6; ++i)
                                        if (ps[(shift + i) % 6] > ps[(shift + i + 1) % 6])
                                            inc = false;
                                    if (!inc) continue;
                                    found = true;
                                    for (int j = 0; j < 3; ++j) {
                                        pick_s[j] = j == 0 ? s1 : (j == 1 ? s2 : s3);
                                        pick_t[j] = j == 0 ? t1 : (j == 1 ? t2 : t3);
                                    }
                                    goto rainbow_done;
                                }
        } while (std::next_permutation(perm.begin(), perm.end()));
    rainbow_done:
        if (!found) return {RuleOutcome::NO, inst};
        // L1: between s^1,s^2 and between t^2,t^1; L2: between s^2,s^3 and t^3,t^2
        auto between = [&](const std::vector<Vertex>& arc, Vertex x, Vertex y) {
            std::vector<Vertex> out;
            bool in = false;
            for (Vertex w : arc) {
                if (w == y) in = false;
                if (in) out.push_back(w);
                if (w == x) in = true;
            }
            return out;
        };
        std::vector<Vertex> l1 = between(slots_s, pick_s[0], pick_s[1]);
        for (Vertex w : between(slots_t, pick_t[1], pick_t[0])) l1.push_back(w);
        std::vector<Vertex> l2 = between(slots_s, pick_s[1], pick_s[2]);
        for (Vertex w : between(slots_t, pick_t[2], pick_t[1])) l2.push_back(w);
        std::set<int> l2cl;
        for (Vertex w : l2) l2cl.insert(cidx[w]);
        for (Vertex d : l1)
            if (l2cl.count(cidx[d])) return {RuleOutcome::NO, inst};
        return {RuleOutcome::REDUCED, delete_vertices_fixed(inst, {pick_s[1]})};
    }
    (void)g;
    return {RuleOutcome::PASS, inst};
}

// ---- per-(vertex, face) pendant cap -----------------------------------------

RuleResult rule_cap_cluster_pendants(const ProblemInstance& inst,
                                     const std::vector<Vertex>& cover, Vertex a, int face,
                                     int cluster, const FixedKernelThresholds& th) {
    FixedKernelContext ctx = build_fixed_context(inst, cover);
    auto cidx = inst.cg.cluster_index();
    int cap = th.pendant_cap > 0 ? th.pendant_cap : 2 * ctx.k + 3;

    std::vector<Vertex> slots = pendant_slots(inst, ctx, a, face);
    std::vector<Vertex> mine;
    for (Vertex w : slots)
        if (cidx[w] == cluster) mine.push_back(w);
    if (static_cast<int>(mine.size()) < cap) return {RuleOutcome::PASS, inst};

    std::vector<Vertex> v(mine.begin(), mine.begin() + cap);
    std::set<Vertex> vset(v.begin(), v.end());
    // L_j: slots strictly between v_j and v_{j+1}; L*: everything else in or
    // on the face
    std::vector<std::vector<Vertex>> L(cap - 1);
    {
        int j = -1;
        for (Vertex w : slots) {
            if (vset.count(w)) {
                ++j;
                if (j >= cap - 1) break;
                continue;
            }
            if (j >= 0 && j < cap - 1) L[j].push_back(w);
        }
    }
    std::set<Vertex> in_lj;
    for (auto& lj : L)
        for (Vertex w : lj) in_lj.insert(w);
    std::set<Vertex> lstar;  // interior or boundary of the face, outside the L_j
    for (Vertex w = 0; w < inst.n(); ++w)
        if (ctx.small_face[w] == face && !in_lj.count(w) && !vset.count(w)) lstar.insert(w);
    for (const Dart& d : ctx.d2.faces[face].boundary) lstar.insert(d.tail);

    int bad = 0;
    int good = -1;
    for (int j = 0; j < cap - 1; ++j) {
        bool isbad = false;
        for (Vertex d : L[j]) {
            int cd = cidx[d];
            for (Vertex m : lstar)
                if (cidx[m] == cd) isbad = true;
            for (int j2 = 0; j2 < cap - 1 && !isbad; ++j2) {
                if (j2 == j) continue;
                for (Vertex m : L[j2])
                    if (cidx[m] == cd) isbad = true;
            }
            if (isbad) break;
        }
        if (isbad)
            ++bad;
        else if (good == -1)
            good = j;
    }
    if (bad >= cap - 1) return {RuleOutcome::NO, inst};
    if (good == -1) return {RuleOutcome::PASS, inst};
    return {RuleOutcome::REDUCED, delete_vertices_fixed(inst, {v[good]})};
}

// ---- orchestration -----------------------------------------------------------

KernelOutcome kernelize_fixed(const ProblemInstance& inst, const FixedKernelThresholds& th) {
    if (inst.mode != Mode::FIXED || inst.variant != Variant::INDEPENDENT)
        throw std::invalid_argument("kernelize_fixed: FIXED INDEPENDENT instance required");
    KernelOutcome out;
    ProblemInstance cur = inst;
    std::vector<Vertex> cov = approx_vertex_cover(cur.graph());
    out.cover_size = static_cast<int>(cov.size());

    bool changed = true;
    while (changed) {
        changed = false;
        // T2 reduction to exhaustion
        while (true) {
            RuleResult r = rule_reduce_t2_fixed(cur, cov, th);
            if (r.outcome == RuleOutcome::NO) {
                out.answer = false;
                out.inst = r.inst;
                return out;
            }
            if (r.outcome == RuleOutcome::PASS) break;
            cur = r.inst;
            cov = approx_vertex_cover(cur.graph());
            changed = true;
        }
        {
            FixedKernelContext ctx = build_fixed_context(cur, cov);
            RuleOutcome ro = rule_bound_types(ctx, cur);
            if (ro == RuleOutcome::NO) {
                out.answer = false;
                out.inst = cur;
                return out;
            }
        }
        while (true) {
            RuleResult r = rule_dedupe_same_type(cur, cov);
            if (r.outcome == RuleOutcome::NO) {
                out.answer = false;
                out.inst = r.inst;
                return out;
            }
            if (r.outcome == RuleOutcome::PASS) break;
            cur = r.inst;
            cov = approx_vertex_cover(cur.graph());
            changed = true;
        }
        // clusters living entirely in T0: one face -> drop, several -> NO;
        // otherwise keep at most one isolated vertex per cluster and face
        {
            FixedKernelContext ctx = build_fixed_context(cur, cov);
            std::set<Vertex> g2set(ctx.core.begin(), ctx.core.end());
            g2set.insert(ctx.t2.begin(), ctx.t2.end());
            std::vector<Vertex> del;
            auto cidx = cur.cg.cluster_index();
            for (size_t ci = 0; ci < cur.cg.clusters.size(); ++ci) {
                const auto& cl = cur.cg.clusters[ci];
                bool all_t0 = true;
                for (Vertex w : cl)
                    if (cur.graph().degree(w) != 0) all_t0 = false;
                if (all_t0 && !cl.empty()) {
                    std::set<int> faces;
                    for (Vertex w : cl) faces.insert(ctx.small_face[w]);
                    if (faces.size() > 1) {
                        out.answer = false;
                        out.inst = cur;
                        return out;
                    }
                    for (Vertex w : cl) del.push_back(w);
                } else {
                    std::map<int, int> kept;  // face -> count
                    for (Vertex w : cl) {
                        if (cur.graph().degree(w) != 0) continue;
                        if (++kept[ctx.small_face[w]] > 1) del.push_back(w);
                    }
                }
            }
            (void)cidx;
            if (!del.empty()) {
                std::sort(del.begin(), del.end());
                cur = delete_vertices_fixed(cur, del);
                cov = approx_vertex_cover(cur.graph());
                changed = true;
                continue;
            }
        }
        // pendant caps per (vertex, face, cluster)
        {
            FixedKernelContext ctx = build_fixed_context(cur, cov);
            bool fired = false;
            for (Vertex a = 0; a < cur.n() && !fired; ++a) {
                if (ctx.small_face[a] != -1) continue;  // only G2 vertices anchor the rule
                for (size_t f = 0; f < ctx.d2.faces.size() && !fired; ++f) {
                    for (size_t ci = 0; ci < cur.cg.clusters.size() && !fired; ++ci) {
                        RuleResult r = rule_cap_cluster_pendants(cur, cov, a, static_cast<int>(f),
                                                                 static_cast<int>(ci), th);
                        if (r.outcome == RuleOutcome::NO) {
                            out.answer = false;
                            out.inst = r.inst;
                            return out;
                        }
                        if (r.outcome == RuleOutcome::REDUCED) {
                            cur = r.inst;
                            cov = approx_vertex_cover(cur.graph());
                            changed = true;
                            fired = true;
                        }
                    }
                }
            }
        }
    }
    out.inst = cur;
    out.cover_size = static_cast<int>(approx_vertex_cover(cur.graph()).size());
    return out;
}

}  // namespace cpls
