#include "cpls/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cpls/embedding.hpp"

namespace cpls {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("instance file: " + msg); }

void check_fields(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail("unknown field '" + it.key() + "' in " + where);
}

}  // namespace

ProblemInstance parse_instance(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("JSON parse error: ") + e.what());
    }
    check_fields(j, {"vertices", "edges", "clusters", "marked", "mode", "variant", "embedding"},
                 "top-level object");
    for (const char* req : {"vertices", "edges", "clusters", "mode", "variant"})
        if (!j.contains(req)) fail(std::string("missing field '") + req + "'");

    ProblemInstance inst;
    int n = j["vertices"].get<int>();
    if (n < 0) fail("vertices must be non-negative");
    Graph g(n);
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2) fail("edge entries must be pairs");
        int u = e[0].get<int>(), v = e[1].get<int>();
        if (u < 0 || v < 0 || u >= n || v >= n) fail("edge endpoint out of range");
        if (u == v) fail("self-loops are not allowed");
        if (g.has_edge(u, v)) fail("duplicate edge");
        g.add_edge(u, v);
    }
    g.normalize();
    inst.cg.g = std::move(g);

    for (const auto& cl : j["clusters"]) {
        std::vector<Vertex> c;
        for (const auto& v : cl) c.push_back(v.get<int>());
        std::sort(c.begin(), c.end());
        inst.cg.clusters.push_back(std::move(c));
    }
    if (j.contains("marked"))
        for (const auto& v : j["marked"]) inst.cg.marked.push_back(v.get<int>());
    std::sort(inst.cg.marked.begin(), inst.cg.marked.end());

    std::string mode = j["mode"].get<std::string>();
    if (mode == "VAR")
        inst.mode = Mode::VAR;
    else if (mode == "FIXED")
        inst.mode = Mode::FIXED;
    else
        fail("mode must be VAR or FIXED");
    std::string variant = j["variant"].get<std::string>();
    if (variant == "INDEPENDENT")
        inst.variant = Variant::INDEPENDENT;
    else if (variant == "COMPLETION")
        inst.variant = Variant::COMPLETION;
    else
        fail("variant must be INDEPENDENT or COMPLETION");

    if (j.contains("embedding")) {
        const json& je = j["embedding"];
        check_fields(je, {"rotations", "outer_face", "nesting"}, "embedding");
        if (!je.contains("rotations")) fail("embedding requires rotations");
        auto emb = std::make_shared<EmbeddedGraph>();
        emb->g = inst.cg.g;
        emb->rot.rot.resize(n);
        int v = 0;
        for (const auto& r : je["rotations"]) {
            if (v >= n) fail("too many rotation entries");
            for (const auto& w : r) emb->rot.rot[v].push_back(w.get<int>());
            ++v;
        }
        if (v != n) fail("rotation entry count differs from vertex count");
        if (!rotation_well_formed(emb->g, emb->rot))
            fail("rotations do not match the edge set");
        if (je.contains("outer_face")) {
            const auto& of = je["outer_face"];
            if (!of.is_array() || of.size() != 2) fail("outer_face must be a dart [u,v]");
            Dart d{of[0].get<int>(), of[1].get<int>()};
            if (!inst.cg.g.has_edge(d.tail, d.head)) fail("outer_face dart is not an edge");
            emb->outer = d;
        }
        if (je.contains("nesting"))
            for (const auto& ne : je["nesting"]) {
                if (!ne.is_array() || ne.size() != 3)
                    fail("nesting entries must be [component, host_component, host_face_index]");
                emb->nesting.push_back({ne[0].get<int>(), ne[1].get<int>(), ne[2].get<int>()});
            }
        inst.embedding = emb;
    } else if (inst.mode == Mode::FIXED) {
        fail("mode=FIXED requires an embedding");
    }
    return inst;
}

ProblemInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

std::string serialize_instance(const ProblemInstance& inst) {
    json j;
    j["vertices"] = inst.graph().num_vertices();
    json edges = json::array();
    std::vector<Edge> es = inst.graph().edges();
    std::sort(es.begin(), es.end());
    for (const Edge& e : es) edges.push_back({e.u, e.v});
    j["edges"] = edges;
    json clusters = json::array();
    for (const auto& cl : inst.cg.clusters) clusters.push_back(cl);
    j["clusters"] = clusters;
    j["marked"] = inst.cg.marked;
    j["mode"] = inst.mode == Mode::VAR ? "VAR" : "FIXED";
    j["variant"] = inst.variant == Variant::INDEPENDENT ? "INDEPENDENT" : "COMPLETION";
    if (inst.embedding) {
        json je;
        je["rotations"] = inst.embedding->rot.rot;
        if (inst.embedding->outer)
            je["outer_face"] = {inst.embedding->outer->tail, inst.embedding->outer->head};
        if (!inst.embedding->nesting.empty()) {
            json ns = json::array();
            for (const NestEntry& ne : inst.embedding->nesting)
                ns.push_back({ne.comp, ne.host_comp, ne.host_face});
            je["nesting"] = ns;
        }
        j["embedding"] = je;
    }
    return j.dump(2) + "\n";
}

void save_instance(const ProblemInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail("cannot write '" + path + "'");
    out << serialize_instance(inst);
}

}  // namespace cpls
