#include "cpls/noose.hpp"

#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "cpls/detail/embed_build.hpp"

namespace cpls {

using detail::corners_on;
using detail::insert_at;
using detail::insert_star;

namespace {

// The noose realized as a cycle through fresh subdivision vertices.
struct Materialized {
    Graph g;
    RotationSystem rot;
    std::vector<int> mids;          // subdivision vertices, one per segment (two if |U|=1)
    std::vector<Edge> cycle_edges;  // edges of the materialized curve
    int base_n{0};
};

Materialized materialize(const EmbeddedGraph& eg, const Noose& n) {
    Materialized m;
    m.base_n = eg.g.num_vertices();
    int t = static_cast<int>(n.entries.size());
    FaceMap fm = build_face_map(eg.rot);

    int extra = (t == 1) ? 2 : t;
    m.g = Graph(m.base_n + extra);
    for (const Edge& e : eg.g.edges()) m.g.add_edge(e.u, e.v);
    m.rot = eg.rot;
    m.rot.rot.resize(m.base_n + extra);
    if (t == 0) return m;

    for (int i = 0; i < extra; ++i) m.mids.push_back(m.base_n + i);

    // per-vertex insertions: (corner position, new neighbor); higher first
    std::vector<std::vector<std::pair<int, Vertex>>> ins(m.base_n);
    if (t == 1) {
        Vertex v = n.entries[0].v;
        auto [va, ca] = fm.corner_pos(n.entries[0].corner_out);
        auto [vb, cb] = fm.corner_pos(n.entries[0].corner_in);
        (void)va;
        (void)vb;
        ins[v].push_back({ca, m.mids[0]});
        ins[v].push_back({cb, m.mids[1]});
        m.g.add_edge(v, m.mids[0]);
        m.g.add_edge(m.mids[0], m.mids[1]);
        m.g.add_edge(m.mids[1], v);
        m.cycle_edges = {Edge(v, m.mids[0]), Edge(m.mids[0], m.mids[1]), Edge(m.mids[1], v)};
        m.rot.rot[m.mids[0]] = {v, m.mids[1]};
        m.rot.rot[m.mids[1]] = {m.mids[0], v};
    } else {
        for (int i = 0; i < t; ++i) {
            Vertex a = n.entries[i].v, b = n.entries[(i + 1) % t].v;
            int mid = m.mids[i];
            auto [va, ca] = fm.corner_pos(n.entries[i].corner_out);
            auto [vb, cb] = fm.corner_pos(n.entries[(i + 1) % t].corner_in);
            (void)va;
            (void)vb;
            ins[a].push_back({ca, mid});
            ins[b].push_back({cb, mid});
            m.g.add_edge(a, mid);
            m.g.add_edge(mid, b);
            m.cycle_edges.emplace_back(a, mid);
            m.cycle_edges.emplace_back(mid, b);
            m.rot.rot[mid] = {a, b};
        }
    }
    for (Vertex v = 0; v < m.base_n; ++v) {
        auto& iv = ins[v];
        if (iv.empty()) continue;
        std::stable_sort(iv.begin(), iv.end(),
                         [](const auto& x, const auto& y) { return x.first > y.first; });
        for (auto& [c, nbr] : iv) insert_at(m.rot, v, nbr, c);
    }
    if (!euler_genus_zero(m.g, m.rot)) {
        // same-corner double insertion can come out in the wrong order
        bool fixed = false;
        for (Vertex v = 0; v < m.base_n && !fixed; ++v) {
            auto& iv = ins[v];
            if (iv.size() == 2 && iv[0].first == iv[1].first) {
                auto& r = m.rot.rot[v];
                auto i0 = std::find(r.begin(), r.end(), iv[0].second);
                auto i1 = std::find(r.begin(), r.end(), iv[1].second);
                std::iter_swap(i0, i1);
                if (euler_genus_zero(m.g, m.rot)) fixed = true;
            }
        }
        if (!fixed && !euler_genus_zero(m.g, m.rot))
            throw std::logic_error("materialize: noose does not embed");
    }
    return m;
}

bool is_cycle_edge(const Materialized& m, const Dart& d) {
    return d.tail >= m.base_n || d.head >= m.base_n;
}

// Face classes of the materialized graph: flood across all darts except the
// materialized cycle. Returns class id per face.
struct SideData {
    FaceMap fm;
    std::vector<int> face_class;
    int in_class{-1}, out_class{-1};
};

SideData classify_sides(const EmbeddedGraph& eg, const Noose& n, const Materialized& m) {
    SideData sd;
    sd.fm = build_face_map(m.rot);
    int nf = static_cast<int>(sd.fm.faces.size());
    std::vector<int> uf(nf);
    for (int i = 0; i < nf; ++i) uf[i] = i;
    std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
    for (const auto& [d, f] : sd.fm.face_of_dart) {
        if (is_cycle_edge(m, d)) continue;
        int a = find(f), b = find(sd.fm.face_of_dart.at(d.rev()));
        if (a != b) uf[a] = b;
    }
    sd.face_class.resize(nf);
    for (int i = 0; i < nf; ++i) sd.face_class[i] = find(i);

    // the two classes bordering the cycle
    std::set<int> main_classes;
    for (const Edge& e : m.cycle_edges) {
        main_classes.insert(sd.face_class[sd.fm.face_of_dart.at({e.u, e.v})]);
        main_classes.insert(sd.face_class[sd.fm.face_of_dart.at({e.v, e.u})]);
    }
    if (n.entries.empty()) {
        // empty-boundary noose: both sides are the carrying region
        sd.out_class = sd.in_class = -1;
        return sd;
    }
    if (main_classes.size() != 2) throw std::logic_error("noose does not have two sides");

    // outside = side of the outer face
    int out_cls = -1;
    if (eg.outer) {
        out_cls = sd.face_class[sd.fm.face_of_dart.at(*eg.outer)];
    } else {
        auto arrs = enumerate_arrangements(eg);
        const Arrangement& ar = arrs[std::min<size_t>(n.arr_index, arrs.size() - 1)];
        for (const auto& [d, f] : ar.fm.face_of_dart) {
            if (ar.region_of_face[f] != ar.outer_region) continue;
            out_cls = sd.face_class[sd.fm.face_of_dart.at(d)];
            break;
        }
        if (out_cls == -1) out_cls = sd.face_class[sd.fm.face_of_dart.at({m.mids[0], n.entries[0].v})];
    }
    if (!main_classes.count(out_cls)) {
        // outer face lies strictly on one side but in an untouched component;
        // resolve via its region below (rare, handled by caller data)
        out_cls = *main_classes.begin();
    }
    sd.out_class = out_cls;
    for (int c : main_classes)
        if (c != out_cls) sd.in_class = c;
    return sd;
}

std::vector<int> comp_ids_of(const EmbeddedGraph& eg) { return eg.g.component_ids(); }

}  // namespace

std::vector<int64_t> noose_canonical_key(const Noose& n) {
    int t = static_cast<int>(n.entries.size());
    std::vector<int64_t> best;
    if (t == 0) {
        best.push_back(-1);
        for (int c : n.inside_comps) best.push_back(c);
        return best;
    }
    auto consider = [&](const std::vector<std::array<int64_t, 3>>& seq) {
        for (int s = 0; s < t; ++s) {
            std::vector<int64_t> key;
            for (int i = 0; i < t; ++i)
                for (int64_t x : seq[(s + i) % t]) key.push_back(x);
            if (best.empty() || key < best) best = key;
        }
    };
    std::vector<std::array<int64_t, 3>> fwd(t), rev(t);
    for (int i = 0; i < t; ++i)
        fwd[i] = {n.entries[i].v, n.entries[i].corner_in, n.entries[i].corner_out};
    // reversed traversal: visit order reversed, in/out swapped
    for (int i = 0; i < t; ++i) {
        const NooseEntry& e = n.entries[(t - i) % t];
        rev[i] = {e.v, e.corner_out, e.corner_in};
    }
    consider(fwd);
    consider(rev);
    std::vector<int64_t> tail(n.inside_comps.begin(), n.inside_comps.end());
    best.insert(best.end(), tail.begin(), tail.end());
    return best;
}

namespace {

// corner candidates per (vertex, region): pairs (corner id, region id)
std::vector<std::vector<std::pair<int, int>>> corner_regions(const Arrangement& ar,
                                                             const std::vector<Vertex>& verts) {
    std::vector<std::vector<std::pair<int, int>>> out(verts.size());
    for (size_t i = 0; i < verts.size(); ++i) {
        Vertex v = verts[i];
        for (int c = 0; c < ar.fm.corners_at(v); ++c) {
            int cid = ar.fm.corner_id(v, c);
            out[i].push_back({cid, ar.region_of_corner(cid)});
        }
    }
    return out;
}

void enumerate_sequences(const Arrangement& ar, const std::vector<Vertex>& rho, int arr_index,
                         const std::function<void(Noose&)>& emit) {
    int t = static_cast<int>(rho.size());
    if (t == 0) return;
    auto cr = corner_regions(ar, rho);
    std::vector<int> cout(t, -1), cin(t, -1), reg(t, -1);
    std::set<int> used;
    auto rec = [&](auto&& self, int s) -> void {
        if (s == t) {
            Noose n;
            n.arr_index = arr_index;
            n.entries.resize(t);
            for (int i = 0; i < t; ++i)
                n.entries[i] = {rho[i], cin[i], cout[i], reg[i]};
            emit(n);
            return;
        }
        int nxt = (s + 1) % t;
        for (auto& [ca, ra] : cr[s]) {
            if (used.count(ra)) continue;
            for (auto& [cb, rb] : cr[nxt]) {
                if (rb != ra) continue;
                cout[s] = ca;
                cin[nxt] = cb;
                reg[s] = ra;
                used.insert(ra);
                self(self, s + 1);
                used.erase(ra);
            }
        }
    };
    rec(rec, 0);
}

std::vector<Vertex> canonical_rho(const std::vector<Vertex>& rho) {
    if (rho.empty()) return rho;
    auto mn = std::min_element(rho.begin(), rho.end());
    std::vector<Vertex> out(rho.size());
    int t = static_cast<int>(rho.size());
    int s = static_cast<int>(mn - rho.begin());
    for (int i = 0; i < t; ++i) out[i] = rho[(s + i) % t];
    return out;
}

}  // namespace

std::vector<Noose> get_nooses(const EmbeddedGraph& eg, const std::vector<Vertex>& u,
                              const std::vector<Vertex>& rho) {
    if (!eg.g.connected())
        throw std::invalid_argument("get_nooses: connected variant called on disconnected input");
    std::vector<Vertex> us = u;
    std::sort(us.begin(), us.end());
    std::vector<Vertex> r = canonical_rho(rho);
    {
        std::vector<Vertex> rs = r;
        std::sort(rs.begin(), rs.end());
        if (rs != us) throw std::invalid_argument("get_nooses: rho is not an order of U");
    }
    Arrangement ar = enumerate_arrangements(eg)[0];
    std::vector<Noose> out;
    std::set<std::vector<int64_t>> seen;
    enumerate_sequences(ar, r, 0, [&](Noose& n) {
        if (seen.insert(noose_canonical_key(n)).second) out.push_back(n);
    });
    return out;
}

NooseSplit split_by_noose(const EmbeddedGraph& eg, const Noose& n) {
    NooseSplit sp;
    const Graph& g = eg.g;
    auto comp = comp_ids_of(eg);
    std::set<int> inside_set(n.inside_comps.begin(), n.inside_comps.end());
    std::vector<int> vside(g.num_vertices(), -1);  // 0 = in, 1 = out
    std::vector<int> eside(g.num_edges(), -1);

    std::set<Vertex> uset;
    for (const NooseEntry& e : n.entries) uset.insert(e.v);

    if (!n.entries.empty()) {
        Materialized m = materialize(eg, n);
        SideData sd = classify_sides(eg, n, m);
        auto side_of_class = [&](int cls) { return cls == sd.in_class ? 0 : 1; };
        for (int i = 0; i < g.num_edges(); ++i) {
            const Edge& e = g.edges()[i];
            int f = sd.fm.face_of_dart.at({e.u, e.v});
            int cls = sd.face_class[f];
            if (cls == sd.in_class || cls == sd.out_class) {
                eside[i] = side_of_class(cls);
            } else {
                eside[i] = inside_set.count(comp[e.u]) ? 0 : 1;
            }
        }
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            if (uset.count(v)) continue;
            if (g.degree(v) > 0) {
                Edge e(v, g.neighbors(v)[0]);
                for (int i = 0; i < g.num_edges(); ++i)
                    if (g.edges()[i] == e) {
                        vside[v] = eside[i];
                        break;
                    }
            } else {
                vside[v] = inside_set.count(comp[v]) ? 0 : 1;
            }
        }
    } else {
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            vside[v] = inside_set.count(comp[v]) ? 0 : 1;
        for (int i = 0; i < g.num_edges(); ++i)
            eside[i] = inside_set.count(comp[g.edges()[i].u]) ? 0 : 1;
    }

    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (uset.count(v)) {
            sp.in_vertices.push_back(v);
            sp.out_vertices.push_back(v);
        } else if (vside[v] == 0) {
            sp.in_vertices.push_back(v);
        } else {
            sp.out_vertices.push_back(v);
        }
    }
    for (int i = 0; i < g.num_edges(); ++i)
        (eside[i] == 0 ? sp.in_edges : sp.out_edges).push_back(g.edges()[i]);

    auto restrict_rot = [&](const std::vector<Edge>& keep) {
        std::set<Edge> ks(keep.begin(), keep.end());
        RotationSystem rs;
        rs.rot.resize(g.num_vertices());
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            for (Vertex w : eg.rot.rot[v])
                if (ks.count(Edge(v, w))) rs.rot[v].push_back(w);
        return rs;
    };
    sp.in_rot = restrict_rot(sp.in_edges);
    sp.out_rot = restrict_rot(sp.out_edges);
    return sp;
}

bool noose_valid(const EmbeddedGraph& eg, const std::vector<Vertex>& rho, const Noose& n) {
    int t = static_cast<int>(n.entries.size());
    if (t == 0) return n.region_if_empty >= 0 || rho.empty();
    std::vector<Vertex> seq;
    for (const NooseEntry& e : n.entries) seq.push_back(e.v);
    std::vector<Vertex> want = canonical_rho(rho), got = canonical_rho(seq);
    bool order_ok = false;
    for (int s = 0; s < t && !order_ok; ++s) {
        bool eq = true;
        for (int i = 0; i < t; ++i)
            if (seq[(s + i) % t] != want[i]) eq = false;
        if (eq) order_ok = true;
    }
    (void)got;
    if (!order_ok) return false;
    auto arrs = enumerate_arrangements(eg);
    if (n.arr_index < 0 || n.arr_index >= static_cast<int>(arrs.size())) return false;
    const Arrangement& ar = arrs[n.arr_index];
    std::set<int> regions;
    for (int i = 0; i < t; ++i) {
        const NooseEntry& cur = n.entries[i];
        const NooseEntry& nxt = n.entries[(i + 1) % t];
        auto [cv, ci] = ar.fm.corner_pos(cur.corner_out);
        auto [nv, nci] = ar.fm.corner_pos(nxt.corner_in);
        (void)ci;
        (void)nci;
        if (cv != cur.v || nv != nxt.v) return false;
        int r1 = ar.region_of_corner(cur.corner_out);
        int r2 = ar.region_of_corner(nxt.corner_in);
        if (r1 != r2) return false;
        if (!regions.insert(r1).second) return false;
    }
    try {
        Materialized m = materialize(eg, n);
        classify_sides(eg, n, m);
    } catch (const std::logic_error&) {
        return false;
    }
    return true;
}

// ---- disconnected enumeration --------------------------------------------

std::vector<Noose> get_nooses_disconnected(const EmbeddedGraph& eg, const std::vector<Vertex>& u,
                                           const std::vector<Vertex>& rho) {
    std::vector<Vertex> r = canonical_rho(rho);
    auto comp = comp_ids_of(eg);
    int ncomp = eg.g.num_components();
    std::set<int> touched;
    for (Vertex v : u) touched.insert(comp[v]);

    auto arrs = enumerate_arrangements(eg);
    std::vector<Noose> out;
    std::set<std::vector<int64_t>> seen;

    // nesting hosts for region-side resolution
    std::vector<int> host_comp(ncomp, -1);
    for (const NestEntry& ne : eg.nesting) host_comp[ne.comp] = ne.host_comp;

    for (size_t ai = 0; ai < arrs.size(); ++ai) {
        const Arrangement& ar = arrs[ai];
        // region of each component's anchor position
        std::vector<int> comp_region(ncomp, -1);
        for (int c = 0; c < ncomp; ++c) comp_region[c] = ar.region_of_face[ar.outward[c]];

        auto process = [&](Noose& n) {
            std::set<int> used_regions;
            for (const NooseEntry& e : n.entries) used_regions.insert(e.region);
            if (n.entries.empty() && n.region_if_empty >= 0)
                used_regions.insert(n.region_if_empty);

            // classify untouched components: fixed side or free
            std::vector<int> free_comps, fixed_in;
            std::map<int, int> side_cache;  // comp -> 0 in / 1 out
            SideData sd;
            Materialized m;
            bool have_sides = false;
            if (!n.entries.empty()) {
                m = materialize(eg, n);
                sd = classify_sides(eg, n, m);
                have_sides = true;
            }
            std::function<int(int)> side_of_comp = [&](int c) -> int {
                auto it = side_cache.find(c);
                if (it != side_cache.end()) return it->second;
                int rc = comp_region[c];
                int res;
                if (used_regions.count(rc)) {
                    res = -1;  // free
                } else if (have_sides) {
                    // side of any touched-component face in that region
                    res = -2;
                    for (size_t f = 0; f < ar.fm.faces.size(); ++f) {
                        if (ar.region_of_face[f] != rc) continue;
                        int fc = ar.fm.comp_of_face[f];
                        if (!touched.count(fc)) continue;
                        if (ar.fm.faces[f].boundary.empty()) continue;
                        Dart d = ar.fm.faces[f].boundary.front();
                        int cls = sd.face_class[sd.fm.face_of_dart.at(d)];
                        res = (cls == sd.in_class) ? 0 : 1;
                        break;
                    }
                    if (res == -2) {
                        // region bordered only by untouched comps: inherit
                        res = (host_comp[c] != -1) ? side_of_comp(host_comp[c]) : 1;
                    }
                } else {
                    // empty-boundary noose: direct floaters of the carrier
                    // region choose a side, everything else starts outside
                    // (the nesting closure pulls descendants inward)
                    res = (rc == n.region_if_empty) ? -1 : 1;
                }
                side_cache[c] = res;
                return res;
            };

            for (int c = 0; c < ncomp; ++c) {
                if (touched.count(c)) continue;
                int s = side_of_comp(c);
                if (s == -1)
                    free_comps.push_back(c);
                else if (s == 0)
                    fixed_in.push_back(c);
            }
            // children of an inside comp go inside with it; children of a free
            // comp follow their parent's choice
            std::vector<int> choice_roots;
            for (int c : free_comps) {
                int h = host_comp[c];
                bool dependent = h != -1 && !touched.count(h) && side_cache.count(h) &&
                                 side_cache[h] == -1;
                if (!dependent) choice_roots.push_back(c);
            }
            int k = static_cast<int>(choice_roots.size());
            for (int mask = 0; mask < (1 << k); ++mask) {
                Noose nn = n;
                std::set<int> in_set(fixed_in.begin(), fixed_in.end());
                for (int i = 0; i < k; ++i)
                    if (mask & (1 << i)) in_set.insert(choice_roots[i]);
                // close under nesting: a comp hosted by an inside comp is inside
                bool changed = true;
                while (changed) {
                    changed = false;
                    for (int c = 0; c < ncomp; ++c) {
                        if (touched.count(c) || in_set.count(c)) continue;
                        if (host_comp[c] != -1 && in_set.count(host_comp[c])) {
                            in_set.insert(c);
                            changed = true;
                        }
                    }
                }
                nn.inside_comps.assign(in_set.begin(), in_set.end());
                if (seen.insert(noose_canonical_key(nn)).second) out.push_back(nn);
            }
        };

        if (r.empty()) {
            for (int reg = 0; reg < ar.num_regions; ++reg) {
                Noose n;
                n.arr_index = static_cast<int>(ai);
                n.region_if_empty = reg;
                process(n);
            }
        } else {
            enumerate_sequences(ar, r, static_cast<int>(ai), process);
        }
    }
    return out;
}

// ---- fixed-embedding augmented graph --------------------------------------

AugmentResult augment_fixed(const ProblemInstance& parent, const Noose& n, NooseSide side,
                            const MatPenDelTriple& t) {
    const EmbeddedGraph& eg = *parent.embedding;
    const Graph& g = eg.g;
    NooseSplit sp = split_by_noose(eg, n);
    const bool take_in = (side == NooseSide::IN);
    const std::vector<Vertex>& keep_v = take_in ? sp.in_vertices : sp.out_vertices;
    const std::vector<Edge>& keep_e = take_in ? sp.in_edges : sp.out_edges;

    AugmentResult res;
    std::map<Vertex, int> par2new;
    for (Vertex v : keep_v) {
        par2new[v] = static_cast<int>(res.to_parent.size());
        res.to_parent.push_back(v);
        res.kind.push_back(AugKind::ORIG);
    }
    auto add_vertex = [&](AugKind k) {
        res.to_parent.push_back(-1);
        res.kind.push_back(k);
        return static_cast<int>(res.to_parent.size()) - 1;
    };

    int tn = static_cast<int>(n.entries.size());
    Graph ag(static_cast<int>(res.to_parent.size()));
    RotationSystem rot;
    rot.rot.resize(res.to_parent.size());
    for (const Edge& e : keep_e) ag.add_edge(par2new.at(e.u), par2new.at(e.v));
    const RotationSystem& keep_rot = take_in ? sp.in_rot : sp.out_rot;
    for (Vertex v : keep_v)
        for (Vertex w : keep_rot.rot[v]) rot.rot[par2new[v]].push_back(par2new.at(w));

    std::vector<int> subdiv, witnesses, pendant_partners, hubs;
    std::optional<Dart> far_dart;

    if (tn > 0) {
        // install the noose cycle: the far side of the kept piece
        Materialized m = materialize(eg, n);
        SideData sd = classify_sides(eg, n, m);
        int far_class = take_in ? sd.out_class : sd.in_class;

        // map materialized mids to new subdivision vertices
        std::map<int, int> mid2new;
        for (int mid : m.mids) {
            int s = add_vertex(AugKind::SUBDIV);
            subdiv.push_back(s);
            mid2new[mid] = s;
            ag = [&] {
                Graph g2(static_cast<int>(res.to_parent.size()));
                for (const Edge& e : ag.edges()) g2.add_edge(e.u, e.v);
                return g2;
            }();
            rot.rot.resize(res.to_parent.size());
        }
        auto to_new = [&](Vertex v) {
            return v >= m.base_n ? mid2new.at(v) : par2new.at(v);
        };
        // rotations of boundary vertices: restriction of the materialized
        // rotation to kept edges plus the cycle darts
        std::set<Edge> keep_set(keep_e.begin(), keep_e.end());
        std::set<Vertex> uset;
        for (const NooseEntry& e : n.entries) uset.insert(e.v);
        for (Vertex v : uset) {
            rot.rot[par2new[v]].clear();
            for (Vertex w : m.rot.rot[v]) {
                if (w >= m.base_n) {
                    rot.rot[par2new[v]].push_back(mid2new.at(w));
                    ag.try_add_edge(par2new[v], mid2new.at(w));
                } else if (keep_set.count(Edge(v, w))) {
                    rot.rot[par2new[v]].push_back(par2new.at(w));
                }
            }
        }
        for (int mid : m.mids) {
            for (Vertex w : m.rot.rot[mid]) {
                rot.rot[mid2new[mid]].push_back(to_new(w));
                ag.try_add_edge(mid2new[mid], to_new(w));
            }
        }
        // a dart whose materialized face is on the far side identifies the
        // emptied face after restriction
        for (const Edge& e : m.cycle_edges) {
            for (const Dart& d : {Dart{e.u, e.v}, Dart{e.v, e.u}}) {
                if (sd.face_class[sd.fm.face_of_dart.at(d)] == far_class) {
                    far_dart = Dart{to_new(d.tail), to_new(d.head)};
                    break;
                }
            }
            if (far_dart) break;
        }
        if (!far_dart) throw std::logic_error("augment_fixed: far side not found");
        if (!euler_genus_zero(ag, rot))
            throw std::logic_error("augment_fixed: restricted embedding invalid");

        // track the far side as a set of darts
        std::set<Dart> far_darts;
        {
            FaceMap fm = build_face_map(rot);
            int f0 = fm.face_of_dart.at(*far_dart);
            for (const Dart& d : fm.faces[f0].boundary) far_darts.insert(d);
        }
        auto far_faces = [&](const FaceMap& fm) {
            std::set<int> fs;
            for (const Dart& d : far_darts)
                if (fm.face_of_dart.count(d)) fs.insert(fm.face_of_dart.at(d));
            return fs;
        };

        // matching witnesses into the far side
        for (const Edge& e : t.m) {
            int w = add_vertex(AugKind::M_WITNESS);
            witnesses.push_back(w);
            Graph g2(static_cast<int>(res.to_parent.size()));
            for (const Edge& e2 : ag.edges()) g2.add_edge(e2.u, e2.v);
            ag = std::move(g2);
            rot.rot.resize(res.to_parent.size());
            FaceMap fm = build_face_map(rot);
            int a = par2new.at(e.u), b = par2new.at(e.v);
            int found = -1;
            for (int f : far_faces(fm)) {
                if (!corners_on(fm, a, f).empty() && !corners_on(fm, b, f).empty()) {
                    if (found != -1)
                        throw std::logic_error("augment_fixed: witness face not unique");
                    found = f;
                }
            }
            if (found == -1) throw std::logic_error("augment_fixed: no face for witness");
            insert_at(rot, a, w, corners_on(fm, a, found).front());
            insert_at(rot, b, w, corners_on(fm, b, found).front());
            rot.rot[w] = {a, b};
            ag.add_edge(a, w);
            ag.add_edge(b, w);
            if (!euler_genus_zero(ag, rot)) {
                std::reverse(rot.rot[w].begin(), rot.rot[w].end());
                if (!euler_genus_zero(ag, rot))
                    throw std::logic_error("augment_fixed: witness insertion invalid");
            }
            far_darts.insert({a, w});
            far_darts.insert({w, a});
            far_darts.insert({b, w});
            far_darts.insert({w, b});
        }

        // pendants into the far side
        for (Vertex p : t.p) {
            int q = add_vertex(AugKind::PENDANT);
            pendant_partners.push_back(q);
            Graph g2(static_cast<int>(res.to_parent.size()));
            for (const Edge& e2 : ag.edges()) g2.add_edge(e2.u, e2.v);
            ag = std::move(g2);
            rot.rot.resize(res.to_parent.size());
            FaceMap fm = build_face_map(rot);
            int a = par2new.at(p);
            int found = -1, corner = -1;
            auto ff = far_faces(fm);
            for (int i = 0; i < fm.corners_at(a); ++i) {
                int f = fm.corner_face[fm.corner_id(a, i)];
                if (!ff.count(f)) continue;
                found = f;
                corner = i;
                break;
            }
            if (found == -1) throw std::logic_error("augment_fixed: no face for pendant");
            insert_at(rot, a, q, corner);
            rot.rot[q] = {a};
            ag.add_edge(a, q);
            far_darts.insert({a, q});
            far_darts.insert({q, a});
        }

        // hubs into every far face
        {
            FaceMap fm = build_face_map(rot);
            std::vector<int> fs(far_faces(fm).begin(), far_faces(fm).end());
            for (int f : fs) {
                int h = add_vertex(AugKind::HUB);
                hubs.push_back(h);
                Graph g2(static_cast<int>(res.to_parent.size()));
                for (const Edge& e2 : ag.edges()) g2.add_edge(e2.u, e2.v);
                ag = std::move(g2);
                rot.rot.resize(res.to_parent.size());
                FaceMap fm2 = build_face_map(rot);
                int f2 = -1;
                for (const Dart& d : fm.faces[f].boundary)
                    if (fm2.face_of_dart.count(d)) {
                        f2 = fm2.face_of_dart.at(d);
                        break;
                    }
                insert_star(rot, ag, h, f2, fm2);
            }
        }
    } else {
        // empty-boundary noose: the kept side stands alone; one hub fills the
        // single face on the far side, attached to every root component
        int h = add_vertex(AugKind::HUB);
        hubs.push_back(h);
        Graph g2(static_cast<int>(res.to_parent.size()));
        for (const Edge& e2 : ag.edges()) g2.add_edge(e2.u, e2.v);
        ag = std::move(g2);
        rot.rot.resize(res.to_parent.size());
        // attach to one vertex of each kept component for connectivity
        Graph kg(static_cast<int>(res.to_parent.size()));
        for (const Edge& e2 : ag.edges()) kg.add_edge(e2.u, e2.v);
        auto kc = kg.component_ids();
        std::set<int> done;
        std::vector<Vertex> anchors;
        for (Vertex v = 0; v < static_cast<int>(res.to_parent.size()); ++v) {
            if (v == h) continue;
            if (done.insert(kc[v]).second) anchors.push_back(v);
        }
        for (Vertex v : anchors) {
            ag.add_edge(v, h);
            rot.rot[v].push_back(h);
            rot.rot[h].push_back(v);
        }
        if (!euler_genus_zero(ag, rot))
            throw std::logic_error("augment_fixed: empty-noose hub invalid");
    }

    // clusters and marks
    auto cidx = parent.cg.cluster_index();
    std::set<Vertex> dset(t.d.begin(), t.d.end());
    std::vector<std::vector<Vertex>> clusters(parent.cg.clusters.size());
    for (Vertex v : keep_v)
        if (!dset.count(v)) clusters[cidx[v]].push_back(par2new[v]);
    for (size_t i = 0; i < t.m.size(); ++i) clusters[cidx[t.m[i].u]].push_back(witnesses[i]);
    for (size_t i = 0; i < t.p.size(); ++i) clusters[cidx[t.p[i]]].push_back(pendant_partners[i]);
    std::vector<std::vector<Vertex>> final_clusters;
    for (auto& cl : clusters)
        if (!cl.empty()) {
            std::sort(cl.begin(), cl.end());
            final_clusters.push_back(cl);
        }
    for (Vertex v : t.d) final_clusters.push_back({par2new.at(v)});
    for (int s : subdiv) final_clusters.push_back({s});
    for (int h : hubs) final_clusters.push_back({h});

    std::vector<Vertex> marked;
    for (Vertex v : parent.cg.marked)
        if (par2new.count(v)) marked.push_back(par2new[v]);
    std::sort(marked.begin(), marked.end());

    ag.normalize();
    auto emb = std::make_shared<EmbeddedGraph>();
    emb->g = ag;
    emb->rot = rot;
    // nesting for components that do not touch the main complex: host = the
    // kept face carrying the region the component floated in
    if (!ag.connected()) {
        FaceMap fm = build_face_map(rot);
        auto ac = ag.component_ids();
        int main_comp = tn > 0 ? ac[subdiv.front()] : ac[hubs.front()];
        int ncomp2 = ag.num_components();

        auto arrs = enumerate_arrangements(eg);
        const Arrangement& par = arrs[std::min<size_t>(n.arr_index, arrs.size() - 1)];
        auto pcomp = eg.g.component_ids();

        for (int c = 0; c < ncomp2; ++c) {
            if (c == main_comp) continue;
            // original component and its parent region
            int pc = -1;
            for (Vertex v = 0; v < static_cast<int>(res.to_parent.size()); ++v)
                if (ac[v] == c && res.to_parent[v] >= 0) pc = pcomp[res.to_parent[v]];
            int host_face = -1;
            auto fl = fm.faces_of_comp(main_comp);
            if (pc != -1) {
                int rc = par.region_of_face[par.outward[pc]];
                // a kept parent dart bordering that region identifies the face
                for (const auto& [d, f] : par.fm.face_of_dart) {
                    if (par.region_of_face[f] != rc) continue;
                    if (!par2new.count(d.tail) || !par2new.count(d.head)) continue;
                    Dart nd{par2new.at(d.tail), par2new.at(d.head)};
                    if (!fm.face_of_dart.count(nd)) continue;
                    int cand = fm.face_of_dart.at(nd);
                    if (fm.comp_of_face[cand] != main_comp) continue;
                    host_face = cand;
                    break;
                }
            }
            if (host_face == -1) host_face = fl.empty() ? 0 : fl.front();
            int local = static_cast<int>(std::find(fl.begin(), fl.end(), host_face) - fl.begin());
            if (local >= static_cast<int>(fl.size())) local = 0;
            emb->nesting.push_back({c, main_comp, local});
        }
    }
    res.inst.cg.g = std::move(ag);
    res.inst.cg.clusters = std::move(final_clusters);
    res.inst.cg.marked = std::move(marked);
    res.inst.mode = Mode::FIXED;
    res.inst.variant = Variant::COMPLETION;
    res.inst.embedding = emb;
    res.gadget_rot = rot;
    res.outer_dart = far_dart;
    return res;
}

}  // namespace cpls
