#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "cpls/gen.hpp"
#include "cpls/io.hpp"
#include "cpls/kernel_fixed.hpp"
#include "cpls/kernel_var.hpp"
#include "cpls/oracle.hpp"
#include "cpls/solver.hpp"

using namespace cpls;

namespace {

SaturationSolution parse_solution(const ProblemInstance& inst, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open solution file '" + path + "'");
    nlohmann::json j = nlohmann::json::parse(in);
    SaturationSolution sol;
    sol.z_sets.assign(inst.cg.clusters.size(), {});
    auto cidx = inst.cg.cluster_index();
    for (const auto& e : j.at("z")) {
        Edge ed(e[0].get<int>(), e[1].get<int>());
        int c = (ed.u >= 0 && ed.u < inst.n()) ? cidx[ed.u] : -1;
        if (c < 0) throw std::runtime_error("solution pair outside the vertex range");
        sol.z_sets[c].push_back(ed);
    }
    return sol;
}

void print_solution(const ProblemInstance& inst, const SaturationSolution& sol) {
    std::cout << "YES\n";
    std::vector<Edge> z = sol.all_edges();
    std::cout << "z:";
    for (const Edge& e : z) std::cout << " " << e.u << "-" << e.v;
    std::cout << "\n";
    if (sol.witness) {
        std::cout << "witness rotation:\n";
        for (size_t v = 0; v < sol.witness->rot.size(); ++v) {
            std::cout << "  " << v << ":";
            for (Vertex w : sol.witness->rot[v]) std::cout << " " << w;
            std::cout << "\n";
        }
    }
    (void)inst;
}

std::optional<SaturationSolution> run_solver(const ProblemInstance& inst, const std::string& algo,
                                             int threshold, int threads) {
    SolveOptions opt;
    opt.base_threshold = threshold;
    opt.threads = threads;
    std::string chosen = algo;
    if (chosen == "auto") chosen = inst.n() <= 10 ? "oracle" : "divide";
    if (chosen == "oracle") return oracle_solve(inst, std::max(10, inst.n()));
    return inst.mode == Mode::VAR ? solve_var(inst, opt) : solve_fixed(inst, opt);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"solver toolkit for clustered planarity with linear saturators"};
    app.require_subcommand(1);

    std::string algo = "auto";
    int threshold = 100;
    int threads = 1;
    uint64_t seed = 1;

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "decide an instance and print a saturation");
    std::string solve_file, solution_out;
    solve_cmd->add_option("file", solve_file, "instance file")->required();
    solve_cmd->add_option("--algo", algo, "auto|oracle|divide");
    solve_cmd->add_option("--base-threshold", threshold, "brute-force threshold");
    solve_cmd->add_option("--threads", threads, "guess fan-out");
    solve_cmd->add_option("--solution-out", solution_out, "write the saturation as JSON");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check a saturation against an instance");
    std::string verify_file, verify_sol;
    verify_cmd->add_option("file", verify_file, "instance file")->required();
    verify_cmd->add_option("solution", verify_sol, "solution file")->required();

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
    GenOptions gopt;
    std::string gen_out, gen_variant = "COMPLETION", gen_mode = "VAR";
    gen_cmd->add_option("-n,--n", gopt.n, "vertex count");
    gen_cmd->add_option("--clusters", gopt.cluster_count, "cluster count");
    gen_cmd->add_option("--seed", seed, "random seed");
    gen_cmd->add_option("--variant", gen_variant, "INDEPENDENT|COMPLETION");
    gen_cmd->add_option("--mode", gen_mode, "VAR|FIXED");
    gen_cmd->add_option("--edge-keep", gopt.edge_keep, "edge subsampling probability");
    gen_cmd->add_flag("--connected", gopt.force_connected, "force a connected graph");
    gen_cmd->add_option("-o,--out", gen_out, "output file")->required();

    // kernelize
    auto* kern_cmd = app.add_subcommand("kernelize", "apply the vertex-cover kernel");
    std::string kern_file, kern_out;
    kern_cmd->add_option("file", kern_file, "instance file")->required();
    kern_cmd->add_option("-o,--out", kern_out, "output file for the reduced instance");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "solve a batch and tabulate");
    std::vector<std::string> bench_files;
    bool with_time = false;
    bench_cmd->add_option("files", bench_files, "instance files")->required();
    bench_cmd->add_option("--algo", algo, "auto|oracle|divide");
    bench_cmd->add_option("--base-threshold", threshold, "brute-force threshold");
    bench_cmd->add_option("--threads", threads, "guess fan-out");
    bench_cmd->add_flag("--with-time", with_time, "include wall-clock times");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) {
            ProblemInstance inst = load_instance(solve_file);
            auto viols = validate_instance(inst);
            if (!viols.empty()) {
                for (const auto& v : viols)
                    std::cerr << "invalid instance: " << v.rule << " (" << v.witness << ")\n";
                return 2;
            }
            auto sol = run_solver(inst, algo, threshold, threads);
            if (!sol) {
                std::cout << "NO\n";
                return 1;
            }
            print_solution(inst, *sol);
            if (!solution_out.empty()) {
                nlohmann::json j;
                nlohmann::json z = nlohmann::json::array();
                for (const Edge& e : sol->all_edges()) z.push_back({e.u, e.v});
                j["z"] = z;
                std::ofstream out(solution_out);
                out << j.dump(2) << "\n";
            }
            return 0;
        }
        if (verify_cmd->parsed()) {
            ProblemInstance inst = load_instance(verify_file);
            SaturationSolution sol = parse_solution(inst, verify_sol);
            VerifyResult vr = verify_solution(inst, sol);
            if (vr.ok) {
                std::cout << "valid\n";
                return 0;
            }
            std::cout << "invalid: " << vr.reason << "\n";
            return 1;
        }
        if (gen_cmd->parsed()) {
            gopt.seed = seed;
            gopt.variant = gen_variant == "INDEPENDENT" ? Variant::INDEPENDENT
                                                        : Variant::COMPLETION;
            gopt.mode = gen_mode == "FIXED" ? Mode::FIXED : Mode::VAR;
            ProblemInstance inst = gen_random(gopt);
            save_instance(inst, gen_out);
            std::cout << "wrote " << gen_out << " (n=" << inst.n()
                      << ", m=" << inst.graph().num_edges() << ")\n";
            return 0;
        }
        if (kern_cmd->parsed()) {
            ProblemInstance inst = load_instance(kern_file);
            KernelOutcome ko = inst.mode == Mode::VAR ? kernelize_variable(inst)
                                                      : kernelize_fixed(inst);
            if (ko.answer) {
                std::cout << (*ko.answer ? "YES" : "NO") << " (decided during kernelization)\n";
                return *ko.answer ? 0 : 1;
            }
            std::cout << "kernel: n " << inst.n() << " -> " << ko.inst.n() << ", cover "
                      << ko.cover_size << "\n";
            if (!kern_out.empty()) save_instance(ko.inst, kern_out);
            return 0;
        }
        if (bench_cmd->parsed()) {
            std::cout << "instance\tn\tk\tmode\talgorithm\tanswer";
            if (with_time) std::cout << "\ttime_ms";
            std::cout << "\n";
            for (const std::string& f : bench_files) {
                ProblemInstance inst = load_instance(f);
                int k = static_cast<int>(approx_vertex_cover(inst.graph()).size());
                auto t0 = std::chrono::steady_clock::now();
                auto sol = run_solver(inst, algo, threshold, threads);
                auto t1 = std::chrono::steady_clock::now();
                std::cout << f << "\t" << inst.n() << "\t" << k << "\t"
                          << (inst.mode == Mode::VAR ? "VAR" : "FIXED") << "\t" << algo << "\t"
                          << (sol ? "YES" : "NO");
                if (with_time)
                    std::cout << "\t"
                              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
                                     .count();
                std::cout << "\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
