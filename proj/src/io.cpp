#include "icpot/io.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace icpot::io {

using nlohmann::json;

namespace {

Vec vec_from(const json& j, const std::string& key) {
    if (!j.contains(key)) throw std::invalid_argument("problem JSON is missing \"" + key + "\"");
    return j.at(key).get<Vec>();
}

Matrix matrix_from(const json& j, const std::string& key) {
    if (!j.contains(key)) throw std::invalid_argument("problem JSON is missing \"" + key + "\"");
    const auto rows = j.at(key).get<std::vector<Vec>>();
    return Matrix::from_rows(rows);
}

json matrix_to(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Vec> coords_from(const json& j, const std::string& key) {
    return j.at(key).get<std::vector<Vec>>();
}

json coords_to(const std::vector<Vec>& coords) {
    json out = json::array();
    for (const auto& pt : coords) out.push_back(pt);
    return out;
}

}  // namespace

IcPotProblem problem_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("problem JSON parse error: ") + err.what());
    }
    IcPotProblem p;
    p.mu.weights = vec_from(j, "mu");
    p.nu.weights = vec_from(j, "nu");
    p.cost = matrix_from(j, "cost");
    p.c_s = vec_from(j, "c_s");
    p.c_t = vec_from(j, "c_t");
    if (j.contains("coords_mu")) p.mu.coords = coords_from(j, "coords_mu");
    if (j.contains("coords_nu")) p.nu.coords = coords_from(j, "coords_nu");
    validate_problem(p);
    return p;
}

std::string problem_to_json_text(const IcPotProblem& p) {
    json j;
    j["format_version"] = kFormatVersion;
    j["mu"] = p.mu.weights;
    j["nu"] = p.nu.weights;
    j["cost"] = matrix_to(p.cost);
    j["c_s"] = p.c_s;
    j["c_t"] = p.c_t;
    if (p.mu.coords) j["coords_mu"] = coords_to(*p.mu.coords);
    if (p.nu.coords) j["coords_nu"] = coords_to(*p.nu.coords);
    return j.dump(2) + "\n";
}

IcPotProblem load_problem(const std::string& path) {
    return problem_from_json_text(read_text_file(path));
}

void save_problem(const IcPotProblem& p, const std::string& path) {
    write_text_file(path, problem_to_json_text(p));
}

std::string solution_to_json_text(const IcPotResult& result) {
    json j;
    j["format_version"] = kFormatVersion;
    json plan = json::array();
    for (const auto& e : result.solution.plan.entries) {
        plan.push_back(json::array({e.i, e.j, e.mass}));
    }
    j["plan"] = std::move(plan);
    j["n"] = result.solution.plan.n;
    j["m"] = result.solution.plan.m;
    j["u"] = result.solution.u;
    j["v"] = result.solution.v;
    j["f"] = result.duals.f;
    j["g"] = result.duals.g;
    j["objective"] = result.solution.objective;
    j["report"] = {{"primal_objective", result.report.primal_objective},
                   {"dual_objective", result.report.dual_objective},
                   {"duality_gap", result.report.duality_gap},
                   {"solver_mode", to_string(result.report.solver_mode)},
                   {"admissible_edge_count", result.report.admissible_edge_count},
                   {"iterations", result.report.iterations}};
    return j.dump(2) + "\n";
}

IcPotResult solution_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("solution JSON parse error: ") + err.what());
    }
    IcPotResult out;
    out.solution.plan.n = j.at("n").get<std::size_t>();
    out.solution.plan.m = j.at("m").get<std::size_t>();
    for (const auto& entry : j.at("plan")) {
        out.solution.plan.entries.push_back(
            {entry.at(0).get<std::size_t>(), entry.at(1).get<std::size_t>(),
             entry.at(2).get<double>()});
    }
    out.solution.u = j.at("u").get<Vec>();
    out.solution.v = j.at("v").get<Vec>();
    out.duals.f = j.at("f").get<Vec>();
    out.duals.g = j.at("g").get<Vec>();
    out.solution.objective = j.at("objective").get<double>();
    if (j.contains("report")) {
        const json& r = j.at("report");
        out.report.primal_objective = r.value("primal_objective", out.solution.objective);
        out.report.dual_objective = r.value("dual_objective", 0.0);
        out.report.duality_gap = r.value("duality_gap", 0.0);
        out.report.solver_mode =
            r.value("solver_mode", std::string("sparse")) == "full" ? SolveMode::full
                                                                    : SolveMode::sparse;
        out.report.admissible_edge_count = r.value("admissible_edge_count", std::size_t{0});
        out.report.iterations = r.value("iterations", std::uint64_t{0});
    }
    return out;
}

IcPotResult load_solution(const std::string& path) {
    return solution_from_json_text(read_text_file(path));
}

void save_solution(const IcPotResult& result, const std::string& path) {
    write_text_file(path, solution_to_json_text(result));
}

std::string certificate_to_json_text(const CertificateSummary& summary) {
    json j;
    j["format_version"] = kFormatVersion;
    j["all_passed"] = summary.all_passed;
    j["primal"] = {{"max_row_residual", summary.primal.max_row_residual},
                   {"max_col_residual", summary.primal.max_col_residual},
                   {"min_entry", summary.primal.min_entry},
                   {"objective_residual", summary.primal.objective_residual}};
    j["dual"] = {{"max_pair_violation", summary.dual.max_pair_violation},
                 {"max_source_cap_violation", summary.dual.max_source_cap_violation},
                 {"max_target_cap_violation", summary.dual.max_target_cap_violation}};
    json pair_conditions = json::array();
    for (const auto& v : summary.slackness.pair_conditions) {
        pair_conditions.push_back({{"i", v.i}, {"j", v.j}, {"amount", v.amount}});
    }
    json source_conditions = json::array();
    for (const auto& v : summary.slackness.source_conditions) {
        source_conditions.push_back({{"index", v.index}, {"amount", v.amount}});
    }
    json target_conditions = json::array();
    for (const auto& v : summary.slackness.target_conditions) {
        target_conditions.push_back({{"index", v.index}, {"amount", v.amount}});
    }
    j["complementary_slackness"] = {{"pair", std::move(pair_conditions)},
                                    {"source", std::move(source_conditions)},
                                    {"target", std::move(target_conditions)}};
    json dominated = json::array();
    for (const auto& v : summary.dominated_edges) {
        dominated.push_back({{"i", v.i}, {"j", v.j}, {"amount", v.amount}});
    }
    j["dominated_edges"] = std::move(dominated);
    j["duality_gap"] = summary.duality_gap;
    return j.dump(2) + "\n";
}

std::string augmented_to_json_text(const AugmentedProblem& aug) {
    json j;
    j["format_version"] = kFormatVersion;
    j["bar_mu"] = aug.bar_mu;
    j["bar_nu"] = aug.bar_nu;
    j["bar_cost"] = matrix_to(aug.bar_cost);
    return j.dump(2) + "\n";
}

std::string sinkhorn_to_json_text(const Matrix& bar_plan, const IcPotProblem& p, double epsilon) {
    const SlackSolution embedded = from_augmented(bar_plan, p, 1e-6);
    const double direct = entropic_slack_objective(embedded, p, epsilon);
    const double augmented = augmented_entropic_objective(bar_plan, p, epsilon);
    const double transported = embedded.plan.total_mass();

    json j;
    j["format_version"] = kFormatVersion;
    j["epsilon"] = epsilon;
    j["coupling"] = matrix_to(bar_plan);
    j["transported_mass"] = transported;
    j["entropic_slack_objective"] = direct;
    j["augmented_entropic_objective"] = augmented;
    // The two objectives differ by exactly eps * phi(transported mass).
    j["identity_residual"] = augmented - direct - epsilon * phi(transported);
    const DummyScaleReport scale = dummy_scale_report(p);
    j["dummy_scale"] = {{"dummy_source_mass", scale.dummy_source_mass},
                        {"dummy_target_mass", scale.dummy_target_mass},
                        {"dummy_source_over_min_target", scale.dummy_source_over_min_target},
                        {"dummy_target_over_min_source", scale.dummy_target_over_min_source}};
    return j.dump(2) + "\n";
}

std::string geo_case_to_json_text(const geo::GeoCase& geo_case) {
    json j;
    j["format_version"] = kFormatVersion;
    j["grid"] = {{"log_k", geo_case.grid.log_k}, {"phi", geo_case.grid.phi}};
    j["sar_energy"] = geo_case.sar_energy;
    j["swim_energy"] = geo_case.swim_energy;
    j["a_sar"] = geo_case.a_sar;
    j["a_swim"] = geo_case.a_swim;
    j["b_sar"] = geo_case.b_sar;
    j["s_swim"] = geo_case.s_swim;
    j["comparable_sar"] = geo_case.comparable_sar;
    j["noncomparable_sar"] = geo_case.noncomparable_sar;
    j["comparable_swim"] = geo_case.comparable_swim;
    j["noncomparable_swim"] = geo_case.noncomparable_swim;
    return j.dump() + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace icpot::io
