#pragma once

#include <functional>

#include "msp/labeling.hpp"
#include "msp/rng.hpp"

namespace msp {

// Stable Poisson helpers; terms are evaluated in log space and tail sums are
// truncated when a term drops below 1e-18 of the running sum.
double poisson_pmf(double rate, long k);
double poisson_cdf(double rate, long k);   // P[X <= k]
double poisson_tail(double rate, long k);  // P[X >= k]

// Exact probability-competitiveness of greedy-improving on rank-r uniform
// matroids with sample fraction p.
double c_uniform(int r, double p);

// Lower bound for greedy-improving on rank-r laminar matroids.
double a_laminar(int r, double p);

double basic_bound(double p);       // p(1-p)
double generation_bound(double p);  // p(1-p^2)/4 - p ln(p)/2

// Mixture lower bounds; the crossover point q_eps is found by bisection.
double rank2_mixture_bound(double p, double epsilon);
double graphic_mixture_bound(double p, double epsilon);  // requires p >= 1/2

double forbidden_bound(int q, double p);

struct ScalarOpt {
  double arg = 0;
  double value = 0;
};

// Deterministic coarse grid followed by golden-section refinement.
ScalarOpt optimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          double tol);

ScalarOpt forbidden_optimum(int q);

struct MixtureOpt {
  double p = 0, q = 0, eps = 0, value = 0;
};

MixtureOpt optimize_mixture_rank2();
MixtureOpt optimize_mixture_graphic();
// Restriction to the eps > R(1/2) region of the graphic proof.
MixtureOpt optimize_mixture_graphic_high_eps();

struct McEstimate {
  double value = 0;
  double stderr_ = 0;
  long samples = 0;
};

// Independent oracle for the closed forms: samples Poisson(r ln(b/a))-length
// uniform words over [r] and measures language membership.
McEstimate language_prob_mc(const Language& lang, int r, double a, double b, long samples,
                            SplitMix64& rng);

}  // namespace msp
