#include "msp/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace msp {

namespace {

double log_pmf(double rate, long k) {
  return k * std::log(rate) - rate - std::lgamma(static_cast<double>(k) + 1.0);
}

void check_rate(double rate, long k) {
  if (rate < 0 || k < 0) throw std::invalid_argument("poisson: negative input");
}

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sample fraction p must be in (0,1)");
}

}  // namespace

double poisson_pmf(double rate, long k) {
  check_rate(rate, k);
  if (rate == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(log_pmf(rate, k));
}

double poisson_cdf(double rate, long k) {
  check_rate(rate, k);
  if (rate == 0.0) return 1.0;
  double sum = 0.0;
  for (long i = 0; i <= k; ++i) sum += std::exp(log_pmf(rate, i));
  return std::min(sum, 1.0);
}

double poisson_tail(double rate, long k) {
  check_rate(rate, k);
  if (rate == 0.0) return k <= 0 ? 1.0 : 0.0;
  if (k == 0) return 1.0;
  double sum = 0.0;
  for (long i = k;; ++i) {
    double term = std::exp(log_pmf(rate, i));
    sum += term;
    if (i > rate && term < 1e-18 * sum) break;
  }
  return std::min(sum, 1.0);
}

double c_uniform(int r, double p) {
  if (r < 1) throw std::invalid_argument("c_uniform: rank >= 1");
  check_p(p);
  if (r == 1) return -p * std::log(p);
  double lam = -r * std::log(p);
  double lamp = -(r - 1) * std::log(p);
  double beta = std::pow(1.0 - 1.0 / r, r);
  return (1.0 - beta) / beta * p + poisson_cdf(lam, r - 1) -
         p / beta * poisson_cdf(lamp, r - 1);
}

double a_laminar(int r, double p) {
  if (r < 1) throw std::invalid_argument("a_laminar: rank >= 1");
  check_p(p);
  if (r == 1) return -p * std::log(p);
  double lam = -r * std::log(p);
  double lamp = -(r - 1) * std::log(p);
  double beta = std::pow(1.0 - 1.0 / r, r);
  return -2.0 * p + (2.0 + std::log(p)) * poisson_cdf(lam, r - 2) +
         2.0 * poisson_pmf(lam, r - 1) + p / beta * poisson_tail(lamp, r);
}

double basic_bound(double p) {
  check_p(p);
  return p * (1.0 - p);
}

double generation_bound(double p) {
  check_p(p);
  return 0.25 * p * (1.0 - p * p) - 0.5 * p * std::log(p);
}

namespace {

// Monotone root finding for the crossover relations. `f` must be decreasing
// on [lo, hi]; verified on a coarse grid before bisecting.
double bisect_decreasing(const std::function<double(double)>& f, double lo, double hi,
                         double target, double tol) {
  double prev = f(lo);
  for (int i = 1; i <= 64; ++i) {
    double x = lo + (hi - lo) * i / 64.0;
    double v = f(x);
    if (v > prev + 1e-9) throw std::logic_error("crossover relation is not decreasing");
    prev = v;
  }
  double a = lo, b = hi;
  while (b - a > tol) {
    double mid = 0.5 * (a + b);
    if (f(mid) > target)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

// eps value at which G1 and G2 cross at position q (rank-2 proof).
double rank2_crossover(double p, double q) {
  double L = std::log(q / p);
  return p * L / (q - p + p * L);
}

// Piecewise value of the rank-2 mixture bound once q_eps = q is known.
double rank2_value_at(double p, double eps, double q) {
  double a2 = p * (2.0 - 2.0 * p + p * std::log(p));
  if (q >= 1.0)  // greedy branch plus the all-G1 integral
    return (1.0 - eps) * a2 + eps * p * std::log(1.0 / p);
  double lnp = std::log(p);
  double greedy = a2 + p * p / q * (1.0 - q) * (1.0 - lnp) + p * p / q * std::log(q);
  double part = p * p / q * (1.0 - q) + p * std::log(q / p);
  return (1.0 - eps) * greedy + eps * part;
}

double graphic_R(double q) {
  double g = q - std::log(q) - 1.0;
  return g / (g + 1.0 / q);
}

// p * integral of (1-eps)(q - ln q) over [x, 1].
double graphic_k2_integral(double p, double eps, double x) {
  auto anti = [](double q) { return q * q / 2.0 - q * std::log(q) + q; };
  return p * (1.0 - eps) * (anti(1.0) - anti(x));
}

}  // namespace

double rank2_mixture_bound(double p, double epsilon) {
  check_p(p);
  if (epsilon < 0.0 || epsilon > 1.0)
    throw std::invalid_argument("rank2_mixture_bound: epsilon in [0,1]");
  double at_one = rank2_crossover(p, 1.0);
  if (epsilon <= at_one) return rank2_value_at(p, epsilon, 1.0);
  if (epsilon >= 0.5) return rank2_value_at(p, epsilon, p);
  double q = bisect_decreasing([&](double x) { return rank2_crossover(p, x); },
                               p + 1e-12, 1.0, epsilon, 1e-10);
  return rank2_value_at(p, epsilon, q);
}

double graphic_mixture_bound(double p, double epsilon) {
  if (!(p >= 0.5 && p < 1.0))
    throw std::invalid_argument("graphic_mixture_bound: proof requires p in [1/2, 1)");
  if (epsilon < 0.0 || epsilon > 1.0)
    throw std::invalid_argument("graphic_mixture_bound: epsilon in [0,1]");
  if (epsilon > graphic_R(0.5)) return graphic_k2_integral(p, epsilon, p);
  double q = bisect_decreasing(graphic_R, 0.5, 1.0, epsilon, 1e-10);
  if (p >= q) return graphic_k2_integral(p, epsilon, p);
  double k1 = p * epsilon * std::log(q / p) + p * (1.0 - epsilon) * (q - p);
  return k1 + graphic_k2_integral(p, epsilon, q);
}

double forbidden_bound(int q, double p) {
  if (q < 1) throw std::invalid_argument("forbidden_bound: q >= 1");
  check_p(p);
  if (q == 1) return -p * std::log(p);
  return (p - std::pow(p, q)) / (q - 1);
}

ScalarOpt optimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
  if (!(tol > 0) || !(lo < hi)) throw std::invalid_argument("optimize_scalar: bad interval");
  const int grid = 10000;
  int best = 0;
  double best_val = -1e300;
  for (int i = 0; i <= grid; ++i) {
    double x = lo + (hi - lo) * i / grid;
    double v = f(x);
    if (!std::isfinite(v)) throw std::runtime_error("optimize_scalar: non-finite value");
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(0, best - 1) / grid;
  double b = lo + (hi - lo) * std::min(grid, best + 1) / grid;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  while (b - a > tol) {
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    if (f(c) > f(d))
      b = d;
    else
      a = c;
  }
  ScalarOpt out;
  out.arg = 0.5 * (a + b);
  out.value = f(out.arg);
  return out;
}

ScalarOpt forbidden_optimum(int q) {
  return optimize_scalar([q](double p) { return forbidden_bound(q, p); }, 1e-6, 1.0 - 1e-6,
                         1e-10);
}

namespace {

MixtureOpt grid_refine(const std::function<double(double, double)>& value, double plo,
                       double phi, double qlo, double qhi,
                       const std::function<bool(double, double)>& feasible) {
  MixtureOpt best;
  best.value = -1e300;
  double pa = plo, pb = phi, qa = qlo, qb = qhi;
  int steps = 200;
  for (int round = 0; round < 4; ++round) {
    double bp = best.p, bq = best.q;
    for (int i = 0; i <= steps; ++i) {
      double p = pa + (pb - pa) * i / steps;
      for (int j = 0; j <= steps; ++j) {
        double q = qa + (qb - qa) * j / steps;
        if (!feasible(p, q)) continue;
        double v = value(p, q);
        if (v > best.value) {
          best.value = v;
          best.p = p;
          best.q = q;
          bp = p;
          bq = q;
        }
      }
    }
    double pw = (pb - pa) * 2.5 / steps, qw = (qb - qa) * 2.5 / steps;
    pa = std::max(plo, bp - pw);
    pb = std::min(phi, bp + pw);
    qa = std::max(qlo, bq - qw);
    qb = std::min(qhi, bq + qw);
  }
  return best;
}

}  // namespace

MixtureOpt optimize_mixture_rank2() {
  // On the crossover, eps is pinned by q: eps = p ln(q/p) / (q - p + p ln(q/p)).
  MixtureOpt best = grid_refine(
      [](double p, double q) { return rank2_value_at(p, rank2_crossover(p, q), q); }, 0.01,
      0.99, 0.01, 1.0, [](double p, double q) { return q > p + 1e-9; });
  best.eps = rank2_crossover(best.p, best.q);
  return best;
}

MixtureOpt optimize_mixture_graphic() {
  MixtureOpt best = grid_refine(
      [](double p, double q) {
        double eps = graphic_R(q);
        double k1 = p * eps * std::log(q / p) + p * (1.0 - eps) * (q - p);
        return k1 + graphic_k2_integral(p, eps, q);
      },
      0.5, 0.999, 0.5, 1.0, [](double p, double q) { return q >= p; });
  best.eps = graphic_R(best.q);
  return best;
}

MixtureOpt optimize_mixture_graphic_high_eps() {
  // For eps > R(1/2) the integrand is the K2 branch everywhere; the bound is
  // decreasing in eps, so the supremum sits at eps = R(1/2).
  double eps = graphic_R(0.5);
  ScalarOpt s = optimize_scalar(
      [eps](double p) { return graphic_k2_integral(p, eps, p); }, 0.5, 0.999, 1e-10);
  MixtureOpt out;
  out.p = s.arg;
  out.q = 0.5;
  out.eps = eps;
  out.value = s.value;
  return out;
}

McEstimate language_prob_mc(const Language& lang, int r, double a, double b, long samples,
                            SplitMix64& rng) {
  if (samples <= 0) throw std::invalid_argument("language_prob_mc: samples >= 1");
  if (!(0.0 < a && a < b && b <= 1.0))
    throw std::invalid_argument("language_prob_mc: need 0 < a < b <= 1");
  double rate = r * std::log(b / a);
  long hits = 0;
  Word w;
  for (long s = 0; s < samples; ++s) {
    long len = rng.poisson(rate);
    w.resize(len);
    for (long i = 0; i < len; ++i) w[i] = 1 + static_cast<int>(rng.uniform_int(r));
    if (in_language(w, lang)) ++hits;
  }
  McEstimate out;
  out.samples = samples;
  out.value = static_cast<double>(hits) / samples;
  out.stderr_ = std::sqrt(out.value * (1.0 - out.value) / samples);
  return out;
}

}  // namespace msp
