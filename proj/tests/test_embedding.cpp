#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cpls/catalog.hpp"
#include "cpls/embedding.hpp"

using namespace cpls;

namespace {

Graph complete(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    g.normalize();
    return g;
}

Graph k33() {
    Graph g(6);
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j) g.add_edge(i, j);
    g.normalize();
    return g;
}

}  // namespace

TEST_CASE("faces of a triangle") {
    Graph g = complete(3);
    auto rot = is_planar(g);
    REQUIRE(rot);
    auto fs = faces_of(*rot);
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].boundary.size() == 3);
    CHECK(fs[1].boundary.size() == 3);
}

TEST_CASE("faces of a single edge and of two disjoint edges") {
    Graph g(2);
    g.add_edge(0, 1);
    RotationSystem rot;
    rot.rot = {{1}, {0}};
    auto fs = faces_of(rot);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].boundary.size() == 2);

    Graph g2(4);
    g2.add_edge(0, 1);
    g2.add_edge(2, 3);
    RotationSystem rot2;
    rot2.rot = {{1}, {0}, {3}, {2}};
    CHECK(faces_of(rot2).size() == 2);
}

TEST_CASE("dart partition property on random planar rotations") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 40; ++it) {
        int n = 3 + static_cast<int>(rng() % 5);
        Graph g(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) g.try_add_edge(i, j);
        g.normalize();
        // any rotation system: random shuffles
        RotationSystem rot;
        rot.rot.resize(n);
        for (int v = 0; v < n; ++v) {
            rot.rot[v] = g.neighbors(v);
            std::shuffle(rot.rot[v].begin(), rot.rot[v].end(), rng);
        }
        auto fs = faces_of(rot);
        std::map<Dart, int> count;
        for (const auto& f : fs)
            for (const Dart& d : f.boundary) ++count[d];
        int darts = 0;
        for (const auto& f : fs) darts += static_cast<int>(f.boundary.size());
        CHECK(darts == 2 * g.num_edges());
        for (auto& [d, c] : count) CHECK(c == 1);
    }
}

TEST_CASE("euler genus check distinguishes planar and crossing rotations of K4") {
    Graph g = complete(4);
    auto rot = is_planar(g);
    REQUIRE(rot);
    CHECK(euler_genus_zero(g, *rot));

    // a rotation of K4 traced to two faces has positive genus
    bool found_bad = false;
    for (const auto& rs : enumerate_plane_rotations(g, 4)) {
        (void)rs;
    }
    // construct one by brute force over all rotations
    std::vector<RotationSystem> all;
    {
        // swap two entries of a planar one until the face count drops
        RotationSystem rs = *rot;
        std::swap(rs.rot[0][0], rs.rot[0][1]);
        if (!euler_genus_zero(g, rs)) found_bad = true;
        std::swap(rs.rot[1][0], rs.rot[1][1]);
        if (!euler_genus_zero(g, rs)) found_bad = true;
    }
    CHECK(found_bad);
}

TEST_CASE("K5 has no genus-0 rotation") {
    Graph g = complete(5);
    CHECK_FALSE(is_planar(g));
    RotationSystem any;
    any.rot.resize(5);
    for (int v = 0; v < 5; ++v) any.rot[v] = g.neighbors(v);
    CHECK_FALSE(euler_genus_zero(g, any));
}

TEST_CASE("planarity witnesses: K4 yes, K5 and K3,3 no") {
    auto w = is_planar(complete(4));
    REQUIRE(w);
    CHECK(euler_genus_zero(complete(4), *w));
    CHECK_FALSE(is_planar(complete(5)));
    CHECK_FALSE(is_planar(k33()));
}

TEST_CASE("enumerate_plane_rotations: edge, triangle, K5") {
    Graph e(2);
    e.add_edge(0, 1);
    CHECK(enumerate_plane_rotations(e).size() == 1);

    // every vertex of the triangle has degree 2, so there is exactly one
    // rotation system, and it is planar
    CHECK(enumerate_plane_rotations(complete(3)).size() == 1);

    CHECK(enumerate_plane_rotations(complete(5)).empty());
    CHECK_THROWS(enumerate_plane_rotations(complete(5), 4));
}

TEST_CASE("K4 has two planar rotation systems (mirror pair)") {
    auto rs = enumerate_plane_rotations(complete(4));
    CHECK(rs.size() == 2);
}

TEST_CASE("is_planar agrees with rotation enumeration on small graphs") {
    for (int n = 1; n <= 5; ++n)
        for (const Graph& g : connected_graph_catalog(n)) {
            bool a = is_planar(g).has_value();
            bool b = !enumerate_plane_rotations(g).empty();
            CHECK(a == b);
        }
}

TEST_CASE("extend_embedding: identity on empty extra set") {
    Graph g = complete(3);
    EmbeddedGraph base{g, *is_planar(g), std::nullopt, {}};
    auto ext = extend_embedding(base, {});
    REQUIRE(ext);
    CHECK(ext->rot == base.rot);
}

TEST_CASE("extend_embedding: C4 takes both diagonals, C5 cannot take all chords") {
    Graph c4(4);
    c4.add_edge(0, 1);
    c4.add_edge(1, 2);
    c4.add_edge(2, 3);
    c4.add_edge(3, 0);
    c4.normalize();
    EmbeddedGraph base{c4, *is_planar(c4), std::nullopt, {}};
    auto ext = extend_embedding(base, {Edge(0, 2), Edge(1, 3)});
    REQUIRE(ext);
    CHECK(euler_genus_zero(ext->g, ext->rot));
    // the old rotation survives as a cyclic suborder
    for (Vertex v = 0; v < 4; ++v) {
        std::vector<Vertex> restricted;
        for (Vertex w : ext->rot.rot[v])
            if (c4.has_edge(v, w)) restricted.push_back(w);
        // compare as cyclic sequences
        auto& orig = base.rot.rot[v];
        bool match = false;
        for (size_t s = 0; s < restricted.size(); ++s) {
            bool eq = true;
            for (size_t i = 0; i < orig.size(); ++i)
                if (restricted[(s + i) % restricted.size()] != orig[i]) eq = false;
            if (eq) match = true;
        }
        CHECK(match);
    }

    Graph c5(5);
    for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
    c5.normalize();
    EmbeddedGraph base5{c5, *is_planar(c5), std::nullopt, {}};
    std::vector<Edge> chords;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (!c5.has_edge(i, j)) chords.emplace_back(i, j);
    CHECK_FALSE(extend_embedding(base5, chords));
}

TEST_CASE("extend_embedding respects nesting of disconnected bases") {
    // two triangles, the second nested inside a face of the first
    Graph g(6);
    for (int i = 0; i < 3; ++i) g.add_edge(i, (i + 1) % 3);
    for (int i = 0; i < 3; ++i) g.add_edge(3 + i, 3 + (i + 1) % 3);
    g.normalize();
    auto rot = *is_planar(g);

    EmbeddedGraph nested{g, rot, std::nullopt, {{1, 0, 0}}};
    EmbeddedGraph separate{g, rot, std::nullopt, {}};
    // the nested component reaches its host: connecting them is fine either way
    CHECK(extend_embedding(nested, {Edge(0, 3)}).has_value());
    CHECK(extend_embedding(separate, {Edge(0, 3)}).has_value());
}

TEST_CASE("exhaustive agreement at n <= 6 between planarity routes") {
    for (int n = 1; n <= 6; ++n) {
        for (const Graph& g : connected_graph_catalog(n)) {
            bool direct = is_planar(g).has_value();
            bool enumerated = !enumerate_plane_rotations(g).empty();
            REQUIRE(direct == enumerated);
        }
    }
}
