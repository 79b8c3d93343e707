#include "cpls/gen.hpp"

#include <cassert>
#include <random>
#include <set>
#include <stdexcept>

#include "cpls/embedding.hpp"

namespace cpls {

namespace {

using Coord = long long;
struct Pt {
    Coord x{0}, y{0};
};

// random planar triangulation by repeated centroid insertion; coordinates
// stay integral because the initial triangle is scaled by 3^n
struct Drawing {
    std::vector<Pt> pts;
    std::vector<Edge> edges;
};

Drawing random_triangulation(int n, std::mt19937_64& rng) {
    Drawing d;
    d.pts.resize(n);
    if (n == 1) return d;
    if (n == 2) {
        d.pts[1] = {1, 0};
        d.edges.emplace_back(0, 1);
        return d;
    }
    Coord scale = 3;
    for (int i = 0; i < n; ++i) scale *= 3;
    d.pts[0] = {0, 0};
    d.pts[1] = {4 * scale, 0};
    d.pts[2] = {2 * scale, 3 * scale};
    d.edges = {Edge(0, 1), Edge(1, 2), Edge(0, 2)};
    std::vector<std::array<int, 3>> faces{{0, 1, 2}};
    for (int v = 3; v < n; ++v) {
        size_t fi = rng() % faces.size();
        auto [a, b, c] = faces[fi];
        d.pts[v] = {(d.pts[a].x + d.pts[b].x + d.pts[c].x) / 3,
                    (d.pts[a].y + d.pts[b].y + d.pts[c].y) / 3};
        d.edges.emplace_back(v, a);
        d.edges.emplace_back(v, b);
        d.edges.emplace_back(v, c);
        faces.erase(faces.begin() + fi);
        faces.push_back({a, b, v});
        faces.push_back({b, c, v});
        faces.push_back({a, c, v});
    }
    return d;
}

int quadrant(Coord dx, Coord dy) {
    if (dx > 0 && dy >= 0) return 0;
    if (dx <= 0 && dy > 0) return 1;
    if (dx < 0 && dy <= 0) return 2;
    return 3;
}

// angular comparison around origin, exact
bool angle_less(const Pt& a, const Pt& b) {
    int qa = quadrant(a.x, a.y), qb = quadrant(b.x, b.y);
    if (qa != qb) return qa < qb;
    __int128 cross = static_cast<__int128>(a.x) * b.y - static_cast<__int128>(a.y) * b.x;
    return cross > 0;
}

RotationSystem rotation_from_coords(const Graph& g, const std::vector<Pt>& pts) {
    RotationSystem rs;
    rs.rot.resize(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        std::vector<Vertex> nb = g.neighbors(v);
        std::sort(nb.begin(), nb.end(), [&](Vertex a, Vertex b) {
            Pt pa{pts[a].x - pts[v].x, pts[a].y - pts[v].y};
            Pt pb{pts[b].x - pts[v].x, pts[b].y - pts[v].y};
            return angle_less(pa, pb);
        });
        rs.rot[v] = nb;
    }
    return rs;
}

// crossing-number parity of point p against the closed polyline of `walk`
bool point_in_walk(const Pt& p, const std::vector<Pt>& walk) {
    bool in = false;
    size_t n = walk.size();
    for (size_t i = 0; i < n; ++i) {
        const Pt& a = walk[i];
        const Pt& b = walk[(i + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            // x coordinate of the crossing vs p.x, exact
            __int128 lhs = static_cast<__int128>(b.x - a.x) * (p.y - a.y);
            __int128 rhs = static_cast<__int128>(p.x - a.x) * (b.y - a.y);
            bool right = (b.y > a.y) ? (lhs > rhs) : (lhs < rhs);
            if (right) in = !in;
        }
    }
    return in;
}

std::vector<NestEntry> derive_nesting(const Graph& g, const RotationSystem& rot,
                                      const std::vector<Pt>& pts) {
    auto comp = g.component_ids();
    int ncomp = g.num_components();
    if (ncomp <= 1) return {};
    FaceMap fm = build_face_map(rot);

    std::vector<Vertex> anchor(ncomp, -1);
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (anchor[comp[v]] == -1) anchor[comp[v]] = v;

    // bounded faces of b containing a's anchor
    auto containing_face = [&](int a, int b) -> int {
        Pt p = pts[anchor[a]];
        auto faces = fm.faces_of_comp(b);
        int found = -1;
        for (int f : faces) {
            if (fm.faces[f].boundary.empty()) continue;
            std::vector<Pt> walk;
            for (const Dart& d : fm.faces[f].boundary) walk.push_back(pts[d.tail]);
            if (point_in_walk(p, walk)) {
                // both the containing face and the outer walk test odd;
                // keep the one with the smaller enclosed area
                if (found == -1) {
                    found = f;
                } else {
                    auto area2 = [&](int ff) {
                        __int128 s = 0;
                        const auto& bd = fm.faces[ff].boundary;
                        for (size_t i = 0; i < bd.size(); ++i) {
                            const Pt& u = pts[bd[i].tail];
                            const Pt& w = pts[bd[(i + 1) % bd.size()].tail];
                            s += static_cast<__int128>(u.x) * w.y -
                                 static_cast<__int128>(u.y) * w.x;
                        }
                        return s < 0 ? -s : s;
                    };
                    if (area2(f) < area2(found)) found = f;
                }
            }
        }
        return found;
    };

    std::vector<std::set<int>> containers(ncomp);
    std::vector<std::vector<int>> host_face(ncomp, std::vector<int>(ncomp, -1));
    for (int a = 0; a < ncomp; ++a)
        for (int b = 0; b < ncomp; ++b) {
            if (a == b) continue;
            int f = containing_face(a, b);
            if (f != -1) {
                containers[a].insert(b);
                host_face[a][b] = f;
            }
        }
    std::vector<NestEntry> out;
    for (int a = 0; a < ncomp; ++a) {
        if (containers[a].empty()) continue;
        // direct host: the container with the most containers of its own
        int best = -1;
        for (int b : containers[a])
            if (best == -1 || containers[b].size() > containers[best].size()) best = b;
        auto faces = fm.faces_of_comp(best);
        int local = static_cast<int>(std::find(faces.begin(), faces.end(), host_face[a][best]) -
                                     faces.begin());
        out.push_back({a, best, local});
    }
    return out;
}

}  // namespace

ProblemInstance gen_random(const GenOptions& opt) {
    if (opt.n < 1) throw std::invalid_argument("gen_random: n must be positive");
    std::mt19937_64 rng(opt.seed);
    Drawing d = random_triangulation(opt.n, rng);

    // subsample edges
    std::vector<Edge> kept;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (const Edge& e : d.edges)
        if (coin(rng) < opt.edge_keep) kept.push_back(e);
    if (opt.force_connected) {
        Graph t(opt.n);
        for (const Edge& e : kept) t.try_add_edge(e.u, e.v);
        auto comp = t.component_ids();
        for (const Edge& e : d.edges) {
            if (t.num_components() <= 1) break;
            comp = t.component_ids();
            if (comp[e.u] != comp[e.v]) t.try_add_edge(e.u, e.v);
        }
        kept = t.edges();
    }
    Graph g(opt.n);
    for (const Edge& e : kept) g.try_add_edge(e.u, e.v);
    g.normalize();

    // cluster resampling until the variant constraint holds
    ProblemInstance inst;
    inst.cg.g = g;
    inst.mode = opt.mode;
    inst.variant = opt.variant;
    bool ok = false;
    for (int attempt = 0; attempt < opt.retry_budget && !ok; ++attempt) {
        std::vector<std::vector<Vertex>> cl(opt.cluster_count);
        for (Vertex v = 0; v < opt.n; ++v) cl[rng() % opt.cluster_count].push_back(v);
        cl.erase(std::remove_if(cl.begin(), cl.end(), [](const auto& c) { return c.empty(); }),
                 cl.end());
        inst.cg.clusters = cl;
        ProblemInstance probe = inst;  // cluster constraints only; embedding comes below
        probe.mode = Mode::VAR;
        ok = validate_instance(probe).empty();
    }
    if (!ok) throw std::runtime_error("gen_random: cluster constraint unsatisfiable");

    if (opt.mode == Mode::FIXED) {
        auto emb = std::make_shared<EmbeddedGraph>();
        emb->g = g;
        emb->rot = rotation_from_coords(g, d.pts);
        if (!euler_genus_zero(g, emb->rot))
            throw std::logic_error("gen_random: drawing rotation not planar");
        emb->nesting = derive_nesting(g, emb->rot, d.pts);
        inst.embedding = emb;
    }
    return inst;
}

// ---- gadgets ---------------------------------------------------------------

PQMerge pq_merge(const Graph& w, Vertex b_s, Vertex b_t, Vertex r_s, Vertex r_t) {
    std::set<Vertex> anchors{b_s, b_t, r_s, r_t};
    if (anchors.size() != 4) throw std::invalid_argument("pq_merge: anchors must be distinct");
    PQMerge out;
    int n0 = w.num_vertices();
    Graph g(n0 + 12);
    for (const Edge& e : w.edges()) g.add_edge(e.u, e.v);

    // originating gadget Q at (b_t, r_s): outer cycle (b'_t, beta, r'_s, psi),
    // inner cycle (alpha, r*, omega, b*), spokes and the chord (r*, b*)
    int beta = n0 + 0, psi = n0 + 1, alpha = n0 + 2, rstar = n0 + 3, omega = n0 + 4,
        bstar = n0 + 5;
    // traversing gadget P at (b_s, r_t): same minus the chord
    int mu = n0 + 6, nu = n0 + 7, lambda = n0 + 8, rdia = n0 + 9, chi = n0 + 10, bdia = n0 + 11;

    auto add_gadget = [&](Vertex bt, Vertex rs, int b, int p, int a, int r, int o, int bs2,
                          bool chord) {
        // outer cycle
        g.add_edge(bt, b);
        g.add_edge(b, rs);
        g.add_edge(rs, p);
        g.add_edge(p, bt);
        // inner cycle
        g.add_edge(a, r);
        g.add_edge(r, o);
        g.add_edge(o, bs2);
        g.add_edge(bs2, a);
        // spokes
        g.add_edge(bt, a);
        g.add_edge(b, r);
        g.add_edge(rs, o);
        g.add_edge(p, bs2);
        if (chord) g.add_edge(r, bs2);
    };
    add_gadget(b_t, r_s, beta, psi, alpha, rstar, omega, bstar, true);
    add_gadget(b_s, r_t, mu, nu, lambda, rdia, chi, bdia, false);

    g.normalize();
    out.g = std::move(g);
    out.names = {{"beta", beta},     {"psi", psi},     {"alpha", alpha}, {"rstar", rstar},
                 {"omega", omega},   {"bstar", bstar}, {"mu", mu},       {"nu", nu},
                 {"lambda", lambda}, {"rdia", rdia},   {"chi", chi},     {"bdia", bdia}};
    return out;
}

ReductionResult reduce_b2pbe_to_cpls3(const Graph& bip, const std::vector<int>& color,
                                      const std::array<Vertex, 4>& quad) {
    auto [b_s, b_t, r_s, r_t] = quad;
    if (color[b_s] != 0 || color[b_t] != 0 || color[r_s] != 1 || color[r_t] != 1 || b_s == b_t ||
        r_s == r_t)
        throw std::invalid_argument("reduce_b2pbe_to_cpls3: invalid quadruple");
    for (const Edge& e : bip.edges())
        if (color[e.u] == color[e.v])
            throw std::invalid_argument("reduce_b2pbe_to_cpls3: coloring not proper");

    PQMerge merged = pq_merge(bip, b_s, b_t, r_s, r_t);
    int n1 = merged.g.num_vertices();
    std::vector<Edge> orig = bip.edges();
    std::sort(orig.begin(), orig.end());
    int n2 = n1 + static_cast<int>(orig.size());

    Graph h(n2);
    for (const Edge& e : merged.g.edges()) {
        bool is_orig = std::binary_search(orig.begin(), orig.end(), e);
        if (!is_orig) h.add_edge(e.u, e.v);
    }
    ReductionResult out;
    for (size_t i = 0; i < orig.size(); ++i) {
        Vertex ce = n1 + static_cast<int>(i);
        h.add_edge(orig[i].u, ce);
        h.add_edge(ce, orig[i].v);
        out.names["c_" + std::to_string(orig[i].u) + "_" + std::to_string(orig[i].v)] = ce;
    }
    h.normalize();

    std::vector<Vertex> vb, vr, vc;
    for (Vertex v = 0; v < bip.num_vertices(); ++v) (color[v] == 0 ? vb : vr).push_back(v);
    vb.push_back(merged.names.at("bstar"));
    vb.push_back(merged.names.at("bdia"));
    vr.push_back(merged.names.at("rstar"));
    vr.push_back(merged.names.at("rdia"));
    for (const char* nm : {"alpha", "beta", "lambda", "mu", "nu", "chi", "psi", "omega"})
        vc.push_back(merged.names.at(nm));
    for (size_t i = 0; i < orig.size(); ++i) vc.push_back(n1 + static_cast<int>(i));
    std::sort(vb.begin(), vb.end());
    std::sort(vr.begin(), vr.end());
    std::sort(vc.begin(), vc.end());

    out.inst.cg.g = std::move(h);
    out.inst.cg.clusters = {vb, vr, vc};
    out.inst.mode = Mode::VAR;
    out.inst.variant = Variant::INDEPENDENT;
    for (auto& [k, v] : merged.names) out.names[k] = v;
    return out;
}

ProblemInstance strip_cliques(const ClusteredGraph& cg) {
    for (const auto& cl : cg.clusters)
        for (size_t i = 0; i < cl.size(); ++i)
            for (size_t j = i + 1; j < cl.size(); ++j)
                if (!cg.g.has_edge(cl[i], cl[j]))
                    throw std::invalid_argument("strip_cliques: cluster is not a clique");
    auto cidx = cg.cluster_index();
    Graph g(cg.g.num_vertices());
    for (const Edge& e : cg.g.edges())
        if (cidx[e.u] != cidx[e.v]) g.add_edge(e.u, e.v);
    g.normalize();
    ProblemInstance out;
    out.cg.g = std::move(g);
    out.cg.clusters = cg.clusters;
    out.cg.marked = cg.marked;
    out.mode = Mode::VAR;
    out.variant = Variant::INDEPENDENT;
    return out;
}

ProblemInstance subdivide_edge_split(const ProblemInstance& inst, const Edge& e) {
    const Graph& g = inst.graph();
    if (!g.has_edge(e.u, e.v)) throw std::invalid_argument("subdivide_edge_split: missing edge");
    int n = g.num_vertices();
    Graph h(n + 2);
    for (const Edge& e2 : g.edges())
        if (!(e2 == e)) h.add_edge(e2.u, e2.v);
    h.add_edge(e.u, n);
    h.add_edge(e.v, n + 1);
    h.normalize();
    ProblemInstance out;
    out.cg.g = std::move(h);
    out.cg.clusters = inst.cg.clusters;
    out.cg.clusters.push_back({n, n + 1});
    out.cg.marked = inst.cg.marked;
    out.mode = Mode::VAR;
    out.variant = inst.variant;
    return out;
}

}  // namespace cpls
