#include "CLI11.hpp"

#include "icpot/bench_geo.hpp"
#include "icpot/bench_pu.hpp"
#include "icpot/certificates.hpp"
#include "icpot/entropic.hpp"
#include "icpot/io.hpp"
#include "icpot/oracle.hpp"
#include "icpot/solver.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("ICPOT_SEED")) {
        return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
    }
    return 1;
}

icpot::Tolerances tolerances_from(double tol) {
    icpot::Tolerances out;
    if (tol > 0.0) {
        out.feasibility = tol;
        out.complementary = tol;
    }
    return out;
}

void write_csv(const std::string& path, const std::string& text) {
    icpot::io::write_text_file(path, text);
    std::cout << "wrote " << path << "\n";
}

int run_solve(const std::string& problem_path, const std::string& out_path,
              const std::string& mode, bool use_oracle, double tol) {
    const icpot::IcPotProblem problem = icpot::io::load_problem(problem_path);
    icpot::SolverOptions opts;
    opts.tol = tolerances_from(tol);

    icpot::IcPotResult result;
    if (use_oracle) {
        result.solution = icpot::oracle_solve(problem);
        // The oracle is primal only; pair it with the main solver's dual so
        // the output schema stays uniform.
        const icpot::IcPotResult dual_source =
            icpot::solve_icpot(problem, icpot::SolveMode::full, opts);
        result.duals = dual_source.duals;
        result.report = dual_source.report;
        result.report.primal_objective = result.solution.objective;
        result.report.duality_gap =
            result.report.primal_objective - result.report.dual_objective;
    } else {
        const icpot::SolveMode solve_mode =
            mode == "full" ? icpot::SolveMode::full : icpot::SolveMode::sparse;
        result = icpot::solve_icpot(problem, solve_mode, opts);
    }
    if (!out_path.empty()) {
        icpot::io::save_solution(result, out_path);
    }
    std::cout << "objective " << result.solution.objective << " (mode "
              << (use_oracle ? "oracle" : mode) << ", " << result.report.iterations
              << " pivots, gap " << result.report.duality_gap << ")\n";
    return kExitOk;
}

int run_verify(const std::string& problem_path, const std::string& solution_path,
               const std::string& out_path, double tol) {
    const icpot::IcPotProblem problem = icpot::io::load_problem(problem_path);
    const icpot::IcPotResult solution = icpot::io::load_solution(solution_path);
    const icpot::CertificateSummary summary =
        icpot::run_all_checks(problem, solution.solution, solution.duals, tolerances_from(tol));
    const std::string text = icpot::io::certificate_to_json_text(summary);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        icpot::io::write_text_file(out_path, text);
    }
    std::cout << (summary.all_passed ? "verdict: all checks passed\n"
                                     : "verdict: checks FAILED\n");
    return kExitOk;
}

int run_reduce(const std::string& problem_path, const std::string& out_path) {
    const icpot::IcPotProblem problem = icpot::io::load_problem(problem_path);
    const std::string text = icpot::io::augmented_to_json_text(icpot::to_augmented(problem));
    if (out_path.empty()) {
        std::cout << text;
    } else {
        icpot::io::write_text_file(out_path, text);
    }
    return kExitOk;
}

int run_sinkhorn(const std::string& problem_path, const std::string& out_path, double epsilon,
                 std::size_t max_iterations, double tol) {
    const icpot::IcPotProblem problem = icpot::io::load_problem(problem_path);
    icpot::EntropicConfig cfg;
    cfg.epsilon = epsilon;
    cfg.max_iterations = max_iterations;
    cfg.convergence_tol = tol;
    const icpot::Matrix coupling = icpot::sinkhorn_augmented(problem, cfg);
    const std::string text = icpot::io::sinkhorn_to_json_text(coupling, problem, epsilon);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        icpot::io::write_text_file(out_path, text);
    }
    return kExitOk;
}

std::string csv_escape_policy_rows(const std::vector<icpot::pu::PuSweepRow>& rows) {
    std::string csv = "sweep,x,regime,policy,mean_f1,mean_gap_vs_partial_w\n";
    for (const auto& row : rows) {
        csv += row.sweep + "," + std::to_string(row.x) + "," + row.regime + "," + row.policy +
               "," + std::to_string(row.mean_f1) + "," +
               std::to_string(row.mean_gap_vs_partial_w) + "\n";
    }
    return csv;
}

int run_bench_pu(const std::string& out_dir, std::size_t seeds, std::uint64_t seed0) {
    namespace pu = icpot::pu;
    std::filesystem::create_directories(out_dir);
    std::string csv = "seed,regime,policy,f1,accuracy,transported_mass\n";
    for (std::uint64_t s = 0; s < seeds; ++s) {
        const std::uint64_t seed = seed0 + s;
        for (bool heterogeneous : {false, true}) {
            const pu::PuConfig cfg = heterogeneous ? pu::PuConfig::heterogeneous(seed)
                                                   : pu::PuConfig::homogeneous(seed);
            const pu::PuCase pu_case = pu::generate_pu_case(cfg);
            const double prior = cfg.mass_prior.value_or(pu_case.latent_positive_fraction());
            for (pu::PuPolicy policy : {pu::PuPolicy::partial_w, pu::PuPolicy::icpot_aligned,
                                        pu::PuPolicy::icpot_misaligned}) {
                const pu::PuRunResult run = pu::pu_pipeline(pu_case, policy, prior);
                csv += std::to_string(seed) + "," +
                       (heterogeneous ? "heterogeneous" : "homogeneous") + "," +
                       pu::to_string(policy) + "," + std::to_string(run.metrics.f1) + "," +
                       std::to_string(run.metrics.accuracy) + "," +
                       std::to_string(run.transported_mass_fraction) + "\n";
            }
        }
    }
    write_csv(out_dir + "/pu_metrics.csv", csv);
    return kExitOk;
}

int run_bench_geo(const std::string& out_dir, std::size_t cases, std::uint64_t seed0, bool sweep,
                  std::size_t emit_cases) {
    namespace geo = icpot::geo;
    std::filesystem::create_directories(out_dir);
    std::string csv =
        "case,method,comparable_recovery,unmatch_precision,reliable_loss,spurious_transport\n";
    std::string sweep_csv = "case,price,is_pointwise,spurious_transport,comparable_recovery\n";
    const icpot::Vec price_grid = {0.005, 0.02, 0.05, 0.1, 0.2, 0.35, 0.6, 1.0, 1.6, 2.5};
    for (std::size_t c = 0; c < cases; ++c) {
        const std::uint64_t seed = seed0 + c;
        const geo::GeoCase geo_case = geo::simulate_geo_case(seed);
        struct Row {
            const char* name;
            geo::GeoMethod method;
        };
        const Row rows[] = {{"partial_w_low", geo::GeoMethod::partial_w(0.02)},
                            {"partial_w_high", geo::GeoMethod::partial_w(2.5)},
                            {"icpot", geo::GeoMethod::icpot()}};
        for (const Row& row : rows) {
            const geo::GeoMetrics m = geo::evaluate_geo(geo_case, row.method);
            csv += std::to_string(seed) + "," + row.name + "," +
                   std::to_string(m.comparable_recovery) + "," +
                   std::to_string(m.unmatch_precision) + "," + std::to_string(m.reliable_loss) +
                   "," + std::to_string(m.spurious_transport) + "\n";
        }
        if (sweep) {
            for (const auto& point : geo::partial_w_tradeoff_sweep(geo_case, price_grid)) {
                sweep_csv += std::to_string(seed) + "," + std::to_string(point.price) + "," +
                             (point.is_pointwise ? "1" : "0") + "," +
                             std::to_string(point.spurious_transport) + "," +
                             std::to_string(point.comparable_recovery) + "\n";
            }
        }
        if (c < emit_cases) {
            icpot::io::write_text_file(out_dir + "/geo_case_" + std::to_string(seed) + ".json",
                                       icpot::io::geo_case_to_json_text(geo_case));
        }
    }
    write_csv(out_dir + "/geo_metrics.csv", csv);
    if (sweep) write_csv(out_dir + "/geo_tradeoff.csv", sweep_csv);
    return kExitOk;
}

int run_sweep_pu(const std::string& out_dir, std::size_t seeds, std::uint64_t seed0) {
    namespace pu = icpot::pu;
    std::filesystem::create_directories(out_dir);
    std::vector<std::uint64_t> seed_list;
    for (std::uint64_t s = 0; s < seeds; ++s) seed_list.push_back(seed0 + s);
    const pu::PuConfig base = pu::PuConfig::heterogeneous(seed0);
    const auto rows = pu::pu_sweeps(base, seed_list);
    write_csv(out_dir + "/pu_sweeps.csv", csv_escape_policy_rows(rows));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solver and benchmarks for pointwise-priced partial transport"};
    app.require_subcommand(1);

    double tol = 0.0;
    app.add_option("--tol", tol, "override the feasibility/slackness tolerance");

    // solve
    auto* solve = app.add_subcommand("solve", "solve a problem file");
    std::string solve_problem, solve_out, solve_mode = "sparse";
    bool solve_oracle = false;
    solve->add_option("--problem", solve_problem, "problem JSON")->required();
    solve->add_option("--out", solve_out, "solution JSON output path");
    solve->add_option("--mode", solve_mode, "full or sparse")
        ->check(CLI::IsMember({"full", "sparse"}));
    solve->add_flag("--oracle", solve_oracle, "use the brute-force oracle (tiny instances)");

    // verify
    auto* verify = app.add_subcommand("verify", "check a solution against a problem");
    std::string verify_problem, verify_solution, verify_out;
    verify->add_option("--problem", verify_problem, "problem JSON")->required();
    verify->add_option("--solution", verify_solution, "solution JSON")->required();
    verify->add_option("--out", verify_out, "report JSON output path");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "emit the augmented balanced form");
    std::string reduce_problem, reduce_out;
    reduce->add_option("--problem", reduce_problem, "problem JSON")->required();
    reduce->add_option("--out", reduce_out, "augmented JSON output path");

    // sinkhorn-augmented
    auto* sinkhorn = app.add_subcommand("sinkhorn-augmented",
                                        "entropic coupling on the augmented support");
    std::string sk_problem, sk_out;
    double sk_epsilon = 1.0;
    std::size_t sk_iters = 20000;
    double sk_tol = 1e-9;
    sinkhorn->add_option("--problem", sk_problem, "problem JSON")->required();
    sinkhorn->add_option("--epsilon", sk_epsilon, "regularization strength")->required();
    sinkhorn->add_option("--max-iters", sk_iters, "iteration budget");
    sinkhorn->add_option("--convergence-tol", sk_tol, "marginal residual target");
    sinkhorn->add_option("--out", sk_out, "output JSON path");

    // bench
    auto* bench = app.add_subcommand("bench", "run a synthetic benchmark");
    auto* bench_pu = bench->add_subcommand("pu", "selection-bias benchmark");
    std::string pu_out = "bench_pu_out";
    std::size_t pu_seeds = 5;
    std::uint64_t pu_seed0 = default_seed();
    bench_pu->add_option("--out", pu_out, "output directory");
    bench_pu->add_option("--seeds", pu_seeds, "number of seeds");
    bench_pu->add_option("--seed0", pu_seed0, "first seed");

    auto* bench_geo = bench->add_subcommand("geo", "wave-spectrum benchmark");
    std::string geo_out = "bench_geo_out";
    std::size_t geo_cases = 20;
    std::uint64_t geo_seed0 = default_seed();
    bool geo_sweep = false;
    std::size_t geo_emit = 0;
    bench_geo->add_option("--out", geo_out, "output directory");
    bench_geo->add_option("--cases", geo_cases, "number of seeded cases");
    bench_geo->add_option("--seed0", geo_seed0, "first seed");
    bench_geo->add_flag("--sweep", geo_sweep, "also emit the constant-price trade-off curve");
    bench_geo->add_option("--emit-cases", geo_emit, "write the first K case bundles as JSON");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "parameter sweeps");
    auto* sweep_pu = sweep->add_subcommand("pu", "selection-bias and negative-geometry sweeps");
    std::string sweep_pu_out = "sweep_pu_out";
    std::size_t sweep_pu_seeds = 5;
    std::uint64_t sweep_pu_seed0 = default_seed();
    sweep_pu->add_option("--out", sweep_pu_out, "output directory");
    sweep_pu->add_option("--seeds", sweep_pu_seeds, "number of seeds");
    sweep_pu->add_option("--seed0", sweep_pu_seed0, "first seed");

    auto* sweep_geo = sweep->add_subcommand("geo", "constant-price trade-off curve");
    std::string sweep_geo_out = "sweep_geo_out";
    std::size_t sweep_geo_cases = 5;
    std::uint64_t sweep_geo_seed0 = default_seed();
    sweep_geo->add_option("--out", sweep_geo_out, "output directory");
    sweep_geo->add_option("--cases", sweep_geo_cases, "number of seeded cases");
    sweep_geo->add_option("--seed0", sweep_geo_seed0, "first seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(solve_problem, solve_out, solve_mode, solve_oracle, tol);
        if (verify->parsed()) return run_verify(verify_problem, verify_solution, verify_out, tol);
        if (reduce->parsed()) return run_reduce(reduce_problem, reduce_out);
        if (sinkhorn->parsed()) return run_sinkhorn(sk_problem, sk_out, sk_epsilon, sk_iters, sk_tol);
        if (bench->parsed()) {
            if (bench_pu->parsed()) return run_bench_pu(pu_out, pu_seeds, pu_seed0);
            if (bench_geo->parsed())
                return run_bench_geo(geo_out, geo_cases, geo_seed0, geo_sweep, geo_emit);
            std::cerr << "bench requires a pu or geo subcommand\n";
            return kExitUsage;
        }
        if (sweep->parsed()) {
            if (sweep_pu->parsed()) return run_sweep_pu(sweep_pu_out, sweep_pu_seeds, sweep_pu_seed0);
            if (sweep_geo->parsed())
                return run_bench_geo(sweep_geo_out, sweep_geo_cases, sweep_geo_seed0, true, 0);
            std::cerr << "sweep requires a pu or geo subcommand\n";
            return kExitUsage;
        }
    } catch (const icpot::SolveError& err) {
        std::cerr << "solver failure: " << err.what() << "\n";
        return kExitSolver;
    } catch (const std::invalid_argument& err) {
        std::cerr << "input error: " << err.what() << "\n";
        return kExitParse;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitParse;
    }
    return kExitUsage;
}
