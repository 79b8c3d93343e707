#include "cpls/embedding.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include <cassert>
#include <numeric>
#include <set>

namespace cpls {

namespace {

std::vector<int> components_of_rotation(const RotationSystem& rot) {
    int n = rot.size();
    std::vector<int> comp(n, -1);
    int c = 0;
    for (Vertex s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::vector<Vertex> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : rot.rot[v])
                if (comp[w] == -1) {
                    comp[w] = c;
                    stack.push_back(w);
                }
        }
        ++c;
    }
    return comp;
}

}  // namespace

std::pair<Vertex, int> FaceMap::corner_pos(int cid) const {
    int v = static_cast<int>(std::upper_bound(corner_off.begin(), corner_off.end(), cid) -
                             corner_off.begin()) -
            1;
    return {v, cid - corner_off[v]};
}

std::vector<int> FaceMap::faces_of_comp(int c) const {
    std::vector<int> out;
    for (size_t f = 0; f < faces.size(); ++f)
        if (comp_of_face[f] == c) out.push_back(static_cast<int>(f));
    return out;
}

std::vector<Face> faces_of(const RotationSystem& rot) {
    std::vector<Face> out;
    std::set<Dart> seen;
    for (Vertex v = 0; v < rot.size(); ++v) {
        for (Vertex w : rot.rot[v]) {
            Dart start{v, w};
            if (seen.count(start)) continue;
            Face f;
            Dart d = start;
            do {
                f.boundary.push_back(d);
                seen.insert(d);
                d = rot.face_next(d);
            } while (!(d == start));
            out.push_back(std::move(f));
        }
    }
    return out;
}

FaceMap build_face_map(const RotationSystem& rot) {
    FaceMap fm;
    fm.comp_of_vertex = components_of_rotation(rot);
    fm.faces = faces_of(rot);
    fm.comp_of_face.resize(fm.faces.size());
    for (size_t f = 0; f < fm.faces.size(); ++f) {
        fm.comp_of_face[f] = fm.comp_of_vertex[fm.faces[f].boundary.front().tail];
        for (const Dart& d : fm.faces[f].boundary) fm.face_of_dart[d] = static_cast<int>(f);
    }
    // one synthetic (empty-boundary) face per dartless component
    int ncomp = fm.comp_of_vertex.empty()
                    ? 0
                    : 1 + *std::max_element(fm.comp_of_vertex.begin(), fm.comp_of_vertex.end());
    std::vector<bool> has_face(ncomp, false);
    for (int c : fm.comp_of_face) has_face[c] = true;
    for (int c = 0; c < ncomp; ++c)
        if (!has_face[c]) {
            fm.faces.push_back(Face{});
            fm.comp_of_face.push_back(c);
        }

    int n = rot.size();
    fm.corner_off.assign(n + 1, 0);
    for (Vertex v = 0; v < n; ++v)
        fm.corner_off[v + 1] = fm.corner_off[v] + std::max<int>(1, rot.rot[v].size());
    fm.corner_face.assign(fm.corner_off[n], -1);
    for (Vertex v = 0; v < n; ++v) {
        int d = static_cast<int>(rot.rot[v].size());
        if (d == 0) {
            // synthetic corner of an isolated vertex -> its synthetic face
            for (size_t f = 0; f < fm.faces.size(); ++f)
                if (fm.faces[f].boundary.empty() && fm.comp_of_face[f] == fm.comp_of_vertex[v])
                    fm.corner_face[fm.corner_off[v]] = static_cast<int>(f);
            continue;
        }
        for (int i = 0; i < d; ++i) {
            Dart leaving{v, rot.rot[v][(i + 1) % d]};
            fm.corner_face[fm.corner_off[v] + i] = fm.face_of_dart.at(leaving);
        }
    }
    return fm;
}

bool rotation_well_formed(const Graph& g, const RotationSystem& rot) {
    if (rot.size() != g.num_vertices()) return false;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        std::vector<Vertex> a = rot.rot[v];
        std::vector<Vertex> b = g.neighbors(v);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
        if (std::adjacent_find(a.begin(), a.end()) != a.end()) return false;
    }
    return true;
}

bool euler_genus_zero(const Graph& g, const RotationSystem& rot) {
    if (!rotation_well_formed(g, rot)) return false;
    auto comp = components_of_rotation(rot);
    int ncomp = comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
    std::vector<int> nv(ncomp, 0), nm(ncomp, 0), nf(ncomp, 0);
    for (Vertex v = 0; v < g.num_vertices(); ++v) ++nv[comp[v]];
    for (const Edge& e : g.edges()) ++nm[comp[e.u]];
    for (const Face& f : faces_of(rot)) ++nf[comp[f.boundary.front().tail]];
    for (int c = 0; c < ncomp; ++c) {
        if (nm[c] == 0) continue;  // isolated vertex, trivially planar
        if (nv[c] - nm[c] + nf[c] != 2) return false;
    }
    return true;
}

std::optional<RotationSystem> is_planar(const Graph& g) {
    int n = g.num_vertices();
    RotationSystem rs;
    rs.rot.resize(n);
    if (n == 0 || g.num_edges() == 0) return rs;

    using BGraph =
        boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                              boost::property<boost::vertex_index_t, int>,
                              boost::property<boost::edge_index_t, int>>;
    BGraph bg(n);
    {
        std::vector<Edge> es = g.edges();
        std::sort(es.begin(), es.end());
        int idx = 0;
        for (const Edge& e : es) boost::add_edge(e.u, e.v, idx++, bg);
    }
    using Emb = std::vector<std::vector<boost::graph_traits<BGraph>::edge_descriptor>>;
    Emb emb(n);
    bool planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = bg,
        boost::boyer_myrvold_params::embedding =
            boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, bg)));
    if (!planar) return std::nullopt;
    for (int v = 0; v < n; ++v)
        for (auto ed : emb[v]) {
            int s = static_cast<int>(boost::source(ed, bg));
            int t = static_cast<int>(boost::target(ed, bg));
            rs.rot[v].push_back(s == v ? t : s);
        }
    if (!euler_genus_zero(g, rs)) {
        // opposite orientation convention; mirror it
        for (auto& r : rs.rot) std::reverse(r.begin(), r.end());
        assert(euler_genus_zero(g, rs));
    }
    return rs;
}

std::vector<RotationSystem> enumerate_plane_rotations(const Graph& g, int cap) {
    if (g.num_vertices() > cap)
        throw std::runtime_error("enumerate_plane_rotations: vertex cap exceeded");
    int n = g.num_vertices();

    // canonical cyclic order per vertex: smallest neighbor first, the rest permuted
    std::vector<std::vector<std::vector<Vertex>>> options(n);
    for (Vertex v = 0; v < n; ++v) {
        std::vector<Vertex> nb = g.neighbors(v);
        std::sort(nb.begin(), nb.end());
        if (nb.size() <= 2) {
            options[v].push_back(nb);
            continue;
        }
        std::vector<Vertex> rest(nb.begin() + 1, nb.end());
        std::sort(rest.begin(), rest.end());
        do {
            std::vector<Vertex> full;
            full.push_back(nb[0]);
            full.insert(full.end(), rest.begin(), rest.end());
            options[v].push_back(full);
        } while (std::next_permutation(rest.begin(), rest.end()));
    }

    // dart indexing for a tight genus check
    std::map<Dart, int> dart_id;
    std::vector<Dart> darts;
    for (const Edge& e : g.edges()) {
        darts.push_back({e.u, e.v});
        darts.push_back({e.v, e.u});
    }
    std::sort(darts.begin(), darts.end());
    for (size_t i = 0; i < darts.size(); ++i) dart_id[darts[i]] = static_cast<int>(i);
    int ndarts = static_cast<int>(darts.size());

    auto comp = g.component_ids();
    int ncomp = g.num_components();
    std::vector<int> nv(ncomp, 0), nm(ncomp, 0);
    for (Vertex v = 0; v < n; ++v) ++nv[comp[v]];
    for (const Edge& e : g.edges()) ++nm[comp[e.u]];

    std::vector<int> succ(ndarts);
    std::vector<char> visited(ndarts);
    std::vector<RotationSystem> out;
    std::vector<size_t> pick(n, 0);

    auto genus_zero_fast = [&](const RotationSystem& rs) {
        for (int i = 0; i < ndarts; ++i) {
            const Dart& d = darts[i];
            succ[i] = dart_id[{d.head, rs.next_neighbor(d.head, d.tail)}];
        }
        std::fill(visited.begin(), visited.end(), 0);
        std::vector<int> nf(ncomp, 0);
        for (int i = 0; i < ndarts; ++i) {
            if (visited[i]) continue;
            int j = i;
            while (!visited[j]) {
                visited[j] = 1;
                j = succ[j];
            }
            ++nf[comp[darts[i].tail]];
        }
        for (int c = 0; c < ncomp; ++c)
            if (nm[c] > 0 && nv[c] - nm[c] + nf[c] != 2) return false;
        return true;
    };

    while (true) {
        RotationSystem rs;
        rs.rot.resize(n);
        for (Vertex v = 0; v < n; ++v) rs.rot[v] = options[v][pick[v]];
        if (ndarts == 0 || genus_zero_fast(rs)) out.push_back(rs);
        int v = n - 1;
        while (v >= 0) {
            if (++pick[v] < options[v].size()) break;
            pick[v] = 0;
            --v;
        }
        if (v < 0) break;
    }
    return out;
}

// ---- arrangements ------------------------------------------------------

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

std::vector<std::string> check_embedding_data(const EmbeddedGraph& eg) {
    std::vector<std::string> errs;
    if (!rotation_well_formed(eg.g, eg.rot)) {
        errs.push_back("rotation does not match the graph incidences");
        return errs;
    }
    if (!euler_genus_zero(eg.g, eg.rot)) errs.push_back("rotation is not genus 0");
    FaceMap fm = build_face_map(eg.rot);
    int ncomp = fm.comp_of_vertex.empty()
                    ? 0
                    : 1 + *std::max_element(fm.comp_of_vertex.begin(), fm.comp_of_vertex.end());
    std::vector<int> host(ncomp, -1);
    for (const NestEntry& ne : eg.nesting) {
        if (ne.comp < 0 || ne.comp >= ncomp || ne.host_comp < 0 || ne.host_comp >= ncomp ||
            ne.comp == ne.host_comp) {
            errs.push_back("nesting entry references an invalid component");
            continue;
        }
        if (host[ne.comp] != -1) errs.push_back("component has two nesting hosts");
        host[ne.comp] = ne.host_comp;
        auto fl = fm.faces_of_comp(ne.host_comp);
        if (ne.host_face < 0 || ne.host_face >= static_cast<int>(fl.size()))
            errs.push_back("nesting entry references an invalid host face");
    }
    // forest check
    for (int c = 0; c < ncomp; ++c) {
        int steps = 0, x = c;
        while (x != -1 && steps <= ncomp) {
            x = host[x];
            ++steps;
        }
        if (steps > ncomp) {
            errs.push_back("nesting contains a cycle");
            break;
        }
    }
    if (ncomp > 1) {
        int entries = 0;
        for (int c = 0; c < ncomp; ++c)
            if (host[c] != -1) ++entries;
        if (entries + 1 > ncomp) errs.push_back("too many nesting entries");
    }
    if (eg.outer) {
        if (!fm.face_of_dart.count(*eg.outer)) {
            errs.push_back("outer dart does not exist");
        } else if (ncomp > 1) {
            int c = fm.comp_of_vertex[eg.outer->tail];
            if (host[c] != -1) errs.push_back("outer face lies on a nested component");
        }
    }
    return errs;
}

std::vector<Arrangement> enumerate_arrangements(const EmbeddedGraph& eg) {
    FaceMap fm = build_face_map(eg.rot);
    int ncomp = fm.comp_of_vertex.empty()
                    ? 0
                    : 1 + *std::max_element(fm.comp_of_vertex.begin(), fm.comp_of_vertex.end());
    int nfaces = static_cast<int>(fm.faces.size());

    std::vector<int> host_comp(ncomp, -1), host_face_global(ncomp, -1);
    for (const NestEntry& ne : eg.nesting) {
        host_comp[ne.comp] = ne.host_comp;
        host_face_global[ne.comp] = fm.faces_of_comp(ne.host_comp)[ne.host_face];
    }
    std::vector<int> roots;
    for (int c = 0; c < ncomp; ++c)
        if (host_comp[c] == -1) roots.push_back(c);

    // per-component outward-face candidates (pinned by the outer dart if any)
    std::vector<std::vector<int>> cand(ncomp);
    int pinned_comp = -1, pinned_face = -1;
    if (eg.outer) {
        pinned_face = fm.face_of_dart.at(*eg.outer);
        pinned_comp = fm.comp_of_face[pinned_face];
    }
    for (int c = 0; c < ncomp; ++c) {
        if (c == pinned_comp) {
            cand[c] = {pinned_face};
        } else if (ncomp == 1) {
            cand[c] = {0};  // canonical outer face when unpinned
        } else {
            cand[c] = fm.faces_of_comp(c);
        }
    }

    std::vector<Arrangement> out;
    std::vector<size_t> pick(ncomp, 0);
    while (true) {
        Arrangement ar;
        ar.fm = fm;
        ar.outward.resize(ncomp);
        for (int c = 0; c < ncomp; ++c) ar.outward[c] = cand[c][pick[c]];
        UnionFind uf(nfaces);
        for (int c = 0; c < ncomp; ++c)
            if (host_comp[c] != -1) uf.unite(ar.outward[c], host_face_global[c]);
        for (size_t i = 1; i < roots.size(); ++i)
            uf.unite(ar.outward[roots[0]], ar.outward[roots[i]]);
        ar.region_of_face.assign(nfaces, -1);
        std::map<int, int> rep2id;
        for (int f = 0; f < nfaces; ++f) {
            int r = uf.find(f);
            auto it = rep2id.find(r);
            if (it == rep2id.end()) it = rep2id.emplace(r, static_cast<int>(rep2id.size())).first;
            ar.region_of_face[f] = it->second;
        }
        ar.num_regions = static_cast<int>(rep2id.size());
        ar.outer_region = roots.empty() ? -1 : ar.region_of_face[ar.outward[roots[0]]];
        out.push_back(std::move(ar));

        int c = ncomp - 1;
        while (c >= 0) {
            if (++pick[c] < cand[c].size()) break;
            pick[c] = 0;
            --c;
        }
        if (c < 0) break;
    }
    return out;
}

// ---- extend_embedding --------------------------------------------------

namespace {

// Insert `nbr` into rot[v] right after position i (cyclically).
void insert_after(std::vector<Vertex>& r, int i, Vertex nbr) {
    if (r.empty())
        r.push_back(nbr);
    else
        r.insert(r.begin() + i + 1, nbr);
}

bool insert_edges_connected(RotationSystem& rot, const std::vector<Edge>& extra, size_t idx) {
    if (idx == extra.size()) return true;
    const Edge& e = extra[idx];
    FaceMap fm = build_face_map(rot);
    // corner pairs of u and v on a common face, canonical order
    for (size_t f = 0; f < fm.faces.size(); ++f) {
        std::vector<int> cu, cv;
        for (int i = 0; i < fm.corners_at(e.u); ++i)
            if (fm.corner_face[fm.corner_id(e.u, i)] == static_cast<int>(f)) cu.push_back(i);
        for (int i = 0; i < fm.corners_at(e.v); ++i)
            if (fm.corner_face[fm.corner_id(e.v, i)] == static_cast<int>(f)) cv.push_back(i);
        for (int iu : cu)
            for (int iv : cv) {
                insert_after(rot.rot[e.u], iu, e.v);
                insert_after(rot.rot[e.v], iv, e.u);
                if (insert_edges_connected(rot, extra, idx + 1)) return true;
                rot.rot[e.u].erase(rot.rot[e.u].begin() + iu + 1);
                rot.rot[e.v].erase(rot.rot[e.v].begin() + iv + 1);
            }
    }
    return false;
}

// Relation of two distinct base components: SEPARATE, or one inside a
// specific (global) face of the other.
enum class Rel { SEPARATE, A_IN_B, B_IN_A };
struct RelFace {
    Rel rel{Rel::SEPARATE};
    int face{-1};
};

struct BaseInfo {
    FaceMap fm;
    int ncomp{0};
    std::vector<int> host_comp, host_face_global;  // -1 for roots
    int pinned_face{-1};                           // global face id of base outer, or -1
};

BaseInfo build_base_info(const EmbeddedGraph& base) {
    BaseInfo bi;
    bi.fm = build_face_map(base.rot);
    bi.ncomp = bi.fm.comp_of_vertex.empty()
                   ? 0
                   : 1 + *std::max_element(bi.fm.comp_of_vertex.begin(), bi.fm.comp_of_vertex.end());
    bi.host_comp.assign(bi.ncomp, -1);
    bi.host_face_global.assign(bi.ncomp, -1);
    for (const NestEntry& ne : base.nesting) {
        bi.host_comp[ne.comp] = ne.host_comp;
        bi.host_face_global[ne.comp] = bi.fm.faces_of_comp(ne.host_comp)[ne.host_face];
    }
    if (base.outer) bi.pinned_face = bi.fm.face_of_dart.at(*base.outer);
    return bi;
}

RelFace base_relation(const BaseInfo& bi, int a, int b) {
    for (int x = a; x != -1; x = bi.host_comp[x])
        if (bi.host_comp[x] == b) return {Rel::A_IN_B, bi.host_face_global[x]};
    for (int x = b; x != -1; x = bi.host_comp[x])
        if (bi.host_comp[x] == a) return {Rel::B_IN_A, bi.host_face_global[x]};
    return {Rel::SEPARATE, -1};
}

struct HState {
    FaceMap fm;                // faces of the candidate H rotation
    std::vector<int> hcomp_of; // base comp -> H comp
    int n_hcomp{0};
    // contain[A][h] = global base face of comp A that H-face h refines
    std::vector<std::vector<int>> contain;
    std::vector<std::vector<int>> hcomp_faces;  // H comp -> its H faces
    std::vector<std::vector<int>> gcomps_in;    // H comp -> base comps inside it
};

bool build_hstate(const BaseInfo& bi, const RotationSystem& rotH, HState& hs) {
    hs.fm = build_face_map(rotH);
    int nH = hs.fm.comp_of_vertex.empty()
                 ? 0
                 : 1 + *std::max_element(hs.fm.comp_of_vertex.begin(), hs.fm.comp_of_vertex.end());
    hs.n_hcomp = nH;
    int n = static_cast<int>(hs.fm.comp_of_vertex.size());
    hs.hcomp_of.assign(bi.ncomp, -1);
    for (Vertex v = 0; v < n; ++v) hs.hcomp_of[bi.fm.comp_of_vertex[v]] = hs.fm.comp_of_vertex[v];
    hs.hcomp_faces.assign(nH, {});
    for (size_t f = 0; f < hs.fm.faces.size(); ++f)
        hs.hcomp_faces[hs.fm.comp_of_face[f]].push_back(static_cast<int>(f));
    hs.gcomps_in.assign(nH, {});
    for (int a = 0; a < bi.ncomp; ++a) hs.gcomps_in[hs.hcomp_of[a]].push_back(a);

    int nfH = static_cast<int>(hs.fm.faces.size());
    hs.contain.assign(bi.ncomp, std::vector<int>(nfH, -1));
    for (int a = 0; a < bi.ncomp; ++a) {
        auto& ca = hs.contain[a];
        // seed from darts of component a (their base face, same orientation)
        for (const auto& [d, bf] : bi.fm.face_of_dart) {
            if (bi.fm.comp_of_vertex[d.tail] != a) continue;
            int h = hs.fm.face_of_dart.at(d);
            if (ca[h] != -1 && ca[h] != bf) return false;
            ca[h] = bf;
        }
        // spread across darts that do not belong to a, within the same H comp
        int hc = hs.hcomp_of[a];
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [d, hf] : hs.fm.face_of_dart) {
                if (bi.fm.comp_of_vertex.size() > static_cast<size_t>(d.tail) &&
                    bi.fm.comp_of_vertex[d.tail] == a)
                    continue;
                if (hs.fm.comp_of_vertex[d.tail] != hc) continue;
                int h2 = hs.fm.face_of_dart.at(d.rev());
                int x = ca[hf], y = ca[h2];
                if (x == y) continue;
                if (x == -1) {
                    ca[hf] = y;
                    changed = true;
                } else if (y == -1) {
                    ca[h2] = x;
                    changed = true;
                } else {
                    return false;
                }
            }
        }
        for (int h : hs.hcomp_faces[hc])
            if (ca[h] == -1) return false;
    }
    return true;
}

// Search outer-face choices per H component and a placement forest of the H
// components such that all pairwise base relations are reproduced.
struct PlacementSearch {
    const BaseInfo* bi;
    const HState* hs;
    std::vector<int> outer_choice;              // H comp -> its H outer face
    std::vector<std::pair<int, int>> placement; // H comp -> (host H comp, host H face) or (-1,-1)

    bool relations_ok() const {
        for (int a = 0; a < bi->ncomp; ++a)
            for (int b = a + 1; b < bi->ncomp; ++b) {
                RelFace want = base_relation(*bi, a, b);
                RelFace got = candidate_relation(a, b);
                if (got.rel != want.rel || got.face != want.face) return false;
            }
        if (bi->pinned_face != -1) {
            int astar = bi->fm.comp_of_face[bi->pinned_face];
            int k = hs->hcomp_of[astar];
            if (placement[k].first != -1) return false;
            if (hs->contain[astar][outer_choice[k]] != bi->pinned_face) return false;
        }
        return true;
    }

    RelFace candidate_relation(int a, int b) const {
        int ka = hs->hcomp_of[a], kb = hs->hcomp_of[b];
        if (ka == kb) {
            int ha = first_face_of_comp(a), hb = first_face_of_comp(b);
            int fb = hs->contain[b][ha];  // face of b that a sits in, spherically
            int fa = hs->contain[a][hb];
            int ob = hs->contain[b][outer_choice[ka]];
            int oa = hs->contain[a][outer_choice[ka]];
            bool a_in_b = (ob != fb), b_in_a = (oa != fa);
            if (a_in_b && b_in_a) return {Rel::SEPARATE, -2};  // impossible, poisons compare
            if (a_in_b) return {Rel::A_IN_B, fb};
            if (b_in_a) return {Rel::B_IN_A, fa};
            return {Rel::SEPARATE, -1};
        }
        // different H comps: walk placement chains
        for (int x = ka; x != -1; x = placement[x].first)
            if (placement[x].first == kb) {
                int h = placement[x].second;  // H face of kb hosting the chain
                int fb = hs->contain[b][h];
                if (hs->contain[b][outer_choice[kb]] != fb) return {Rel::A_IN_B, fb};
                return {Rel::SEPARATE, -1};
            }
        for (int x = kb; x != -1; x = placement[x].first)
            if (placement[x].first == ka) {
                int h = placement[x].second;
                int fa = hs->contain[a][h];
                if (hs->contain[a][outer_choice[ka]] != fa) return {Rel::B_IN_A, fa};
                return {Rel::SEPARATE, -1};
            }
        return {Rel::SEPARATE, -1};
    }

    int first_face_of_comp(int a) const {
        for (const auto& [d, bf] : bi->fm.face_of_dart)
            if (bi->fm.comp_of_vertex[d.tail] == a) return hs->fm.face_of_dart.at(d);
        // dartless base comp: its H comp faces
        return hs->hcomp_faces[hs->hcomp_of[a]].front();
    }

    bool search_placement(int k) {
        if (k == hs->n_hcomp) return relations_ok();
        placement[k] = {-1, -1};
        if (search_placement(k + 1)) return true;
        for (int k2 = 0; k2 < hs->n_hcomp; ++k2) {
            if (k2 == k) continue;
            bool cyc = false;  // k2 must not be (transitively) placed under k
            for (int x = k2; x != -1; x = placement[x].first)
                if (x == k) {
                    cyc = true;
                    break;
                }
            if (cyc) continue;
            for (int h : hs->hcomp_faces[k2]) {
                placement[k] = {k2, h};
                if (search_placement(k + 1)) return true;
            }
        }
        placement[k] = {-1, -1};
        return false;
    }

    bool search_outer(int k) {
        if (k == hs->n_hcomp) {
            placement.assign(hs->n_hcomp, {-1, -1});
            return search_placement(0);
        }
        for (int h : hs->hcomp_faces[k]) {
            outer_choice[k] = h;
            if (search_outer(k + 1)) return true;
        }
        return false;
    }
};

bool check_arrangement_and_fill(const EmbeddedGraph& base, const BaseInfo& bi, const Graph& gH,
                                const RotationSystem& rotH, EmbeddedGraph& out) {
    HState hs;
    if (!build_hstate(bi, rotH, hs)) return false;
    PlacementSearch ps;
    ps.bi = &bi;
    ps.hs = &hs;
    ps.outer_choice.assign(hs.n_hcomp, -1);
    if (!ps.search_outer(0)) return false;

    out.g = gH;
    out.rot = rotH;
    out.nesting.clear();
    for (int k = 0; k < hs.n_hcomp; ++k) {
        auto [pk, ph] = ps.placement[k];
        if (pk == -1) continue;
        auto fl = hs.hcomp_faces[pk];
        int local = static_cast<int>(std::find(fl.begin(), fl.end(), ph) - fl.begin());
        out.nesting.push_back({k, pk, local});
    }
    out.outer.reset();
    if (base.outer) {
        int astar = bi.fm.comp_of_face[bi.pinned_face];
        int k = hs.hcomp_of[astar];
        int h = ps.outer_choice[k];
        if (!hs.fm.faces[h].boundary.empty())
            out.outer = hs.fm.faces[h].boundary.front();
    }
    return true;
}

bool insert_edges_general(const EmbeddedGraph& base, const BaseInfo& bi, Graph& gcur,
                          RotationSystem& rot, const std::vector<Edge>& extra, size_t idx,
                          EmbeddedGraph& out) {
    if (idx == extra.size())
        return check_arrangement_and_fill(base, bi, gcur, rot, out);
    const Edge& e = extra[idx];
    int du = std::max<int>(1, rot.rot[e.u].size());
    int dv = std::max<int>(1, rot.rot[e.v].size());
    for (int iu = 0; iu < du; ++iu)
        for (int iv = 0; iv < dv; ++iv) {
            bool ue = rot.rot[e.u].empty(), ve = rot.rot[e.v].empty();
            insert_after(rot.rot[e.u], iu, e.v);
            insert_after(rot.rot[e.v], iv, e.u);
            gcur.try_add_edge(e.u, e.v);
            if (euler_genus_zero(gcur, rot) &&
                insert_edges_general(base, bi, gcur, rot, extra, idx + 1, out))
                return true;
            gcur.remove_edge(e.u, e.v);
            if (ue)
                rot.rot[e.u].clear();
            else
                rot.rot[e.u].erase(rot.rot[e.u].begin() + iu + 1);
            if (ve)
                rot.rot[e.v].clear();
            else
                rot.rot[e.v].erase(rot.rot[e.v].begin() + iv + 1);
        }
    return false;
}

}  // namespace

std::optional<EmbeddedGraph> extend_embedding(const EmbeddedGraph& base,
                                              const std::vector<Edge>& extra_in) {
    std::vector<Edge> extra = extra_in;
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    for (const Edge& e : extra)
        if (base.g.has_edge(e.u, e.v))
            throw std::invalid_argument("extend_embedding: extra edge already present");

    if (base.g.connected()) {
        RotationSystem rot = base.rot;
        if (!insert_edges_connected(rot, extra, 0)) return std::nullopt;
        EmbeddedGraph out;
        out.g = base.g;
        for (const Edge& e : extra) out.g.add_edge(e.u, e.v);
        out.g.normalize();
        out.rot = std::move(rot);
        out.outer = base.outer;
        return out;
    }

    BaseInfo bi = build_base_info(base);
    Graph gcur = base.g;
    RotationSystem rot = base.rot;
    EmbeddedGraph out;
    if (!insert_edges_general(base, bi, gcur, rot, extra, 0, out)) return std::nullopt;
    out.g.normalize();
    return out;
}

}  // namespace cpls
