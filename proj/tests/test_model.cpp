#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cpls/embedding.hpp"
#include "cpls/model.hpp"

using namespace cpls;

namespace {

ProblemInstance make(int n, std::vector<Edge> es, std::vector<std::vector<Vertex>> clusters,
                     Variant var = Variant::COMPLETION, std::vector<Vertex> marked = {}) {
    ProblemInstance inst;
    inst.cg.g = graph_from_edges(n, es);
    inst.cg.clusters = std::move(clusters);
    inst.cg.marked = std::move(marked);
    inst.mode = Mode::VAR;
    inst.variant = var;
    return inst;
}

}  // namespace

TEST_CASE("validate: two isolated vertices, one cluster, independent") {
    auto inst = make(2, {}, {{0, 1}}, Variant::INDEPENDENT);
    CHECK(validate_instance(inst).empty());
}

TEST_CASE("validate: triangle cluster fails the completion constraint") {
    auto inst = make(3, {{0, 1}, {1, 2}, {0, 2}}, {{0, 1, 2}}, Variant::COMPLETION);
    auto v = validate_instance(inst);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "cluster-not-paths");
}

TEST_CASE("validate: two disjoint edges in one cluster are fine paths") {
    auto inst = make(4, {{0, 1}, {2, 3}}, {{0, 1, 2, 3}}, Variant::COMPLETION);
    CHECK(validate_instance(inst).empty());
}

TEST_CASE("validate: partition violations are reported") {
    auto inst = make(3, {}, {{0, 1}}, Variant::INDEPENDENT);
    auto v = validate_instance(inst);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "clusters-not-covering");

    auto inst2 = make(2, {}, {{0, 1}, {1}}, Variant::INDEPENDENT);
    auto v2 = validate_instance(inst2);
    REQUIRE(v2.size() == 1);
    CHECK(v2[0].rule == "clusters-not-disjoint");
}

TEST_CASE("verify: single pair saturated") {
    auto inst = make(2, {}, {{0, 1}}, Variant::INDEPENDENT);
    SaturationSolution sol;
    sol.z_sets = {{Edge(0, 1)}};
    CHECK(verify_solution(inst, sol).ok);
}

TEST_CASE("verify: closing a cycle is rejected") {
    auto inst = make(3, {}, {{0, 1, 2}}, Variant::INDEPENDENT);
    SaturationSolution sol;
    sol.z_sets = {{Edge(0, 1), Edge(1, 2), Edge(0, 2)}};
    auto r = verify_solution(inst, sol);
    CHECK_FALSE(r.ok);
}

TEST_CASE("verify: marked vertices reject incident additions") {
    auto inst = make(2, {}, {{0, 1}}, Variant::INDEPENDENT, {1});
    SaturationSolution sol;
    sol.z_sets = {{Edge(0, 1)}};
    auto r = verify_solution(inst, sol);
    CHECK_FALSE(r.ok);
    CHECK(r.reason.find("marked") != std::string::npos);
}

TEST_CASE("verify: pair that is already an edge is malformed") {
    auto inst = make(2, {{0, 1}}, {{0, 1}}, Variant::COMPLETION);
    SaturationSolution sol;
    sol.z_sets = {{Edge(0, 1)}};
    auto r = verify_solution(inst, sol);
    CHECK_FALSE(r.ok);
    CHECK(r.reason.find("already an edge") != std::string::npos);
}

TEST_CASE("verify: planarity is enforced") {
    // K5 minus one edge, the missing pair forms a cluster
    std::vector<Edge> es;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (!(i == 0 && j == 1)) es.emplace_back(i, j);
    auto inst = make(5, es, {{0, 1}, {2}, {3}, {4}}, Variant::COMPLETION);
    SaturationSolution sol;
    sol.z_sets = {{Edge(0, 1)}, {}, {}, {}};
    auto r = verify_solution(inst, sol);
    CHECK_FALSE(r.ok);
    CHECK(r.reason.find("planar") != std::string::npos);
}

TEST_CASE("verify is repeatable") {
    auto inst = make(4, {{0, 1}}, {{0, 1}, {2, 3}}, Variant::COMPLETION);
    SaturationSolution sol;
    sol.z_sets = {{}, {Edge(2, 3)}};
    auto a = verify_solution(inst, sol);
    auto b = verify_solution(inst, sol);
    CHECK(a.ok == b.ok);
    CHECK(a.ok);
}

TEST_CASE("single-vertex cluster counts as a path") {
    auto inst = make(1, {}, {{0}}, Variant::INDEPENDENT);
    SaturationSolution sol;
    sol.z_sets = {{}};
    CHECK(verify_solution(inst, sol).ok);
}
