#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msp/algorithms.hpp"
#include "msp/stats.hpp"

namespace msp {

// Augmentation policy for Monte Carlo runs. `automatic` enables the root
// construction for the graphic algorithms and runs everything else plain.
enum class AugmentPolicy { automatic, on, off };

struct ElementReport {
  ElementId elem = -1;
  long hits = 0;
  long trials = 0;
  double freq = 0;
  WilsonCI ci;
};

struct CompetitivenessReport {
  std::vector<ElementReport> per_element;  // optimal elements of the base instance
  ElementReport min_element;
  Algorithm algorithm = Algorithm::greedy;
  RunConfig cfg;
  AugmentMode mode_used = AugmentMode::none;
  long trials = 0;
  std::uint64_t seed = 0;
  int threads = 1;
};

CompetitivenessReport estimate(const MatroidInstance& base, Algorithm algo, RunConfig cfg,
                               AugmentPolicy policy, long trials, std::uint64_t seed,
                               int threads = 0);

struct ExactResult {
  std::vector<ElementReport> per_element;  // freq holds the exact probability
  double weight_sum = 0;                   // must be 1 within 1e-12
  long cases = 0;
};

// Enumerates all n! arrival orders and the binomial sampling cut; every
// implemented algorithm is a deterministic function of (order, cut, coin).
// Requires n <= 8 including any fixed dummies; stochastic augmentation is
// refused.
ExactResult exact_oracle(const MatroidInstance& instance, Algorithm algo, const RunConfig& cfg);

struct IntervalFit {
  double a = 0, b = 0, rate = 0;
  ChiSquareResult chi;
};

struct DistributionReport {
  int rank = 0;
  long trials = 0;
  KsResult ks_last_time;             // S(1) against x^r
  std::vector<IntervalFit> poisson;  // N[a,b) against Poisson(r ln(b/a))
  double correlation = 0;            // disjoint interval counts
  double correlation_limit = 0;      // 3/sqrt(trials)
  bool pass(double alpha = 0.01) const;
};

DistributionReport distribution_tests(const MatroidInstance& base, double p, long trials,
                                      std::uint64_t seed);

int resolve_threads(int requested);  // --threads / MSP_THREADS / hardware

}  // namespace msp
