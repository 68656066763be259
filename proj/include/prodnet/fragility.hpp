#pragma once

#include <cstdint>
#include <string>

#include "prodnet/model.hpp"

namespace prodnet {

struct ComplexityStats {
    double S = 0.0;  // mean number of distinct intermediate techs upstream of a final good
    double q = 0.0;  // mean intermediate-tech expenditure / mean final-good expenditure
    double m = 0.0;  // mean number of final goods downstream of an intermediate tech
    std::size_t M_count = 0;  // active intermediate technologies
    std::size_t F_count = 0;  // final goods with active producers
};

ComplexityStats complexity_stats(const Economy& economy, const FlowState& state);

struct ExpectedLoss {
    double short_run = 0.0;
    double long_run = 0.0;
};

// Small-probability approximations: (1-lambda) pi S and (1-lambda) pi S q / m.
ExpectedLoss expected_loss_formulas(const ComplexityStats& stats, double pi, double lambda);

struct MonteCarloResult {
    double short_run_mean = 0.0;
    double long_run_mean = 0.0;
    double short_run_se = 0.0;
    double long_run_se = 0.0;
    std::uint64_t trials = 0;
};

// Each active intermediate technology is shocked independently with
// probability pi. The shock set of trial k is a pure function of (seed, k), so
// results are reproducible and independent of the thread count, which is read
// from PRODNET_THREADS (0 or unset = hardware concurrency).
MonteCarloResult expected_loss_mc(const Economy& economy, const FlowState& state, double pi,
                                  double lambda, std::uint64_t trials, std::uint64_t seed);

struct ConsolidationReport {
    std::size_t upstream1 = 0;
    std::size_t upstream2 = 0;
    double prob1 = 0.0;  // probability that some upstream tech is disrupted
    double prob2 = 0.0;
    double size1 = 0.0;  // conditional short-run loss: (1-lambda) p y of the final tech
    double size2 = 0.0;
};

ConsolidationReport consolidation_compare(const Economy& economy1, const FlowState& state1,
                                          const Economy& economy2, const FlowState& state2,
                                          const std::string& final_good, double pi,
                                          double lambda);

// Number of worker threads from PRODNET_THREADS (0/unset = hardware concurrency).
unsigned worker_threads();

} // namespace prodnet
