#pragma once

#include "icpot/types.hpp"

namespace icpot {

/// Brute-force reference optimum for tiny instances (n*m <= 36), computed by
/// a textbook dense tableau simplex with Bland's rule on the slack LP. The
/// code path shares nothing with the network solver. For n*m <= 9 the result
/// is additionally cross-checked against basic-feasible-point enumeration.
SlackSolution oracle_solve(const IcPotProblem& p);

/// Enumerates every basic feasible point of the slack LP and returns the best
/// objective found. Only sensible for n*m <= 9.
double oracle_enumerate_optimum(const IcPotProblem& p);

}  // namespace icpot
