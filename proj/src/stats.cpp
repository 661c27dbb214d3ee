#include "msp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msp {

WilsonCI wilson_ci(long hits, long trials, double z) {
  if (trials <= 0 || hits < 0 || hits > trials)
    throw std::invalid_argument("wilson_ci: bad counts");
  double n = static_cast<double>(trials);
  double phat = static_cast<double>(hits) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (phat + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

// Regularized incomplete gamma, series and continued fraction (P + Q = 1).
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (a <= 0 || x < 0) throw std::invalid_argument("regularized_gamma_q: bad arguments");
  if (x == 0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_pvalue(double stat, int df) {
  if (df <= 0) return 1.0;
  return regularized_gamma_q(df / 2.0, stat / 2.0);
}

namespace {

ChiSquareResult chi_square_from_bins(const std::vector<double>& expected,
                                     const std::vector<double>& observed) {
  // Merge adjacent bins until each expected count is >= 5.
  std::vector<double> e, o;
  double ce = 0, co = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    ce += expected[i];
    co += observed[i];
    if (ce >= 5.0) {
      e.push_back(ce);
      o.push_back(co);
      ce = co = 0;
    }
  }
  if (ce > 0 || co > 0) {
    if (!e.empty()) {
      e.back() += ce;
      o.back() += co;
    } else {
      e.push_back(ce);
      o.push_back(co);
    }
  }
  ChiSquareResult res;
  res.df = static_cast<int>(e.size()) - 1;
  for (std::size_t i = 0; i < e.size(); ++i) {
    double d = o[i] - e[i];
    res.stat += d * d / e[i];
  }
  res.pvalue = chi_square_pvalue(res.stat, res.df);
  return res;
}

}  // namespace

ChiSquareResult chi_square_poisson(const std::vector<long>& observed, double rate) {
  if (observed.empty()) throw std::invalid_argument("chi_square_poisson: no data");
  long maxv = *std::max_element(observed.begin(), observed.end());
  double n = static_cast<double>(observed.size());
  std::vector<double> exp_bins, obs_bins;
  std::vector<long> counts(maxv + 1, 0);
  for (long v : observed) ++counts[v];
  double tail = 1.0;
  double logr = std::log(rate);
  for (long k = 0; k <= maxv; ++k) {
    double pmf = std::exp(k * logr - rate - std::lgamma(k + 1.0));
    exp_bins.push_back(pmf * n);
    obs_bins.push_back(static_cast<double>(counts[k]));
    tail -= pmf;
  }
  exp_bins.push_back(std::max(0.0, tail) * n);  // values above maxv
  obs_bins.push_back(0.0);
  return chi_square_from_bins(exp_bins, obs_bins);
}

ChiSquareResult chi_square_uniform(const std::vector<long>& category_counts) {
  double total = 0;
  for (long c : category_counts) total += static_cast<double>(c);
  std::vector<double> e(category_counts.size(), total / category_counts.size());
  std::vector<double> o(category_counts.begin(), category_counts.end());
  return chi_square_from_bins(e, o);
}

ChiSquareResult chi_square_independence(const std::vector<std::vector<long>>& table) {
  std::size_t rows = table.size();
  std::size_t cols = rows ? table[0].size() : 0;
  if (!rows || !cols) throw std::invalid_argument("chi_square_independence: empty table");
  std::vector<double> row_sum(rows, 0), col_sum(cols, 0);
  double total = 0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      row_sum[i] += table[i][j];
      col_sum[j] += table[i][j];
      total += table[i][j];
    }
  ChiSquareResult res;
  int kept_rows = 0, kept_cols = 0;
  for (std::size_t i = 0; i < rows; ++i)
    if (row_sum[i] > 0) ++kept_rows;
  for (std::size_t j = 0; j < cols; ++j)
    if (col_sum[j] > 0) ++kept_cols;
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_sum[i] == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) {
      if (col_sum[j] == 0) continue;
      double e = row_sum[i] * col_sum[j] / total;
      double d = table[i][j] - e;
      res.stat += d * d / e;
    }
  }
  res.df = (kept_rows - 1) * (kept_cols - 1);
  res.pvalue = chi_square_pvalue(res.stat, res.df);
  return res;
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_test: no data");
  std::sort(samples.begin(), samples.end());
  double n = static_cast<double>(samples.size());
  double d = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double f = cdf(samples[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(f - static_cast<double>(i + 1) / n));
  }
  double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
  double p = 0;
  for (int k = 1; k <= 100; ++k) {
    double term = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
    p += term;
    if (std::fabs(term) < 1e-12) break;
  }
  return {d, std::min(1.0, std::max(0.0, p))};
}

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty())
    throw std::invalid_argument("pearson_correlation: size mismatch");
  double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace msp
