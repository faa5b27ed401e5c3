#pragma once

#include "icpot/bench_geo.hpp"
#include "icpot/bench_pu.hpp"
#include "icpot/certificates.hpp"
#include "icpot/entropic.hpp"
#include "icpot/reduction.hpp"
#include "icpot/solver.hpp"
#include "icpot/types.hpp"

#include <string>

namespace icpot::io {

inline constexpr int kFormatVersion = 1;

/// Problem schema: {"mu": [...], "nu": [...], "cost": [[...]], "c_s": [...],
/// "c_t": [...]} with optional "coords_mu"/"coords_nu".
IcPotProblem problem_from_json_text(const std::string& text);
std::string problem_to_json_text(const IcPotProblem& p);

IcPotProblem load_problem(const std::string& path);
void save_problem(const IcPotProblem& p, const std::string& path);

/// Solution schema: sparse plan triplets plus u, v, f, g, the objective and
/// the solve report.
std::string solution_to_json_text(const IcPotResult& result);
IcPotResult solution_from_json_text(const std::string& text);

IcPotResult load_solution(const std::string& path);
void save_solution(const IcPotResult& result, const std::string& path);

std::string certificate_to_json_text(const CertificateSummary& summary);

std::string augmented_to_json_text(const AugmentedProblem& aug);

std::string sinkhorn_to_json_text(const Matrix& bar_plan, const IcPotProblem& p, double epsilon);

std::string geo_case_to_json_text(const geo::GeoCase& geo_case);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace icpot::io
