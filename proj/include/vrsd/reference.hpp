#pragma once

#include "vrsd/io.hpp"
#include "vrsd/problem.hpp"

namespace vrsd {

/// Long conservative solve that pins F(x*) for gap curves. Runs a proximal
/// SVRG loop until the epoch-to-epoch objective change drops below
/// 1e-14 * (1 + |F|) or the budget runs out; returns the best iterate seen.
ReferenceOptimum compute_reference_optimum(const ProblemInstance& p, std::size_t budget_epochs,
                                           std::uint64_t seed = 12345);

}  // namespace vrsd
