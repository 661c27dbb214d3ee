#pragma once

#include <functional>
#include <vector>

namespace msp {

struct WilsonCI {
  double lo = 0;
  double hi = 0;
};

WilsonCI wilson_ci(long hits, long trials, double z = 1.959963984540054);

double regularized_gamma_q(double a, double x);  // upper, Q(a, x)

double chi_square_pvalue(double stat, int df);

struct ChiSquareResult {
  double stat = 0;
  int df = 0;
  double pvalue = 1;
};

// Goodness of fit of observed non-negative counts against Poisson(rate).
// Tail bins are merged until every expected count is at least 5.
ChiSquareResult chi_square_poisson(const std::vector<long>& observed, double rate);

// Uniformity over categories 1..k given per-category counts.
ChiSquareResult chi_square_uniform(const std::vector<long>& category_counts);

// Independence test on a joint count table (rows x cols), sparse bins merged.
ChiSquareResult chi_square_independence(const std::vector<std::vector<long>>& table);

// One-sample Kolmogorov-Smirnov against a fully specified CDF.
struct KsResult {
  double stat = 0;
  double pvalue = 1;
};
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace msp
