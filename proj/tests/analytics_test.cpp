#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "msp/analytics.hpp"

using namespace msp;

TEST_CASE("poisson helpers") {
  CHECK(poisson_pmf(0.0, 0) == 1.0);
  CHECK(poisson_pmf(0.0, 3) == 0.0);
  CHECK(poisson_pmf(2 * std::log(2.0), 1) == doctest::Approx(0.34657359).epsilon(1e-7));
  // normalization
  double rate = 7.3;
  double sum = 0;
  for (long k = 0; k <= 40 * 8; ++k) sum += poisson_pmf(rate, k);
  CHECK(std::fabs(sum - 1.0) < 1e-12);
  CHECK(poisson_cdf(rate, 5) + poisson_tail(rate, 6) == doctest::Approx(1.0).epsilon(1e-12));
  // high-precision references at the top of the supported rate range
  CHECK(poisson_pmf(1000.0, 1000) == doctest::Approx(0.0126146113487215).epsilon(1e-12));
  CHECK(poisson_cdf(1000.0, 1000) == doctest::Approx(0.50840936716850599).epsilon(1e-12));
  CHECK(poisson_tail(346.574, 499) == doctest::Approx(9.213086e-15).epsilon(1e-5));
  CHECK_THROWS_AS(poisson_pmf(-1.0, 0), std::invalid_argument);
}

TEST_CASE("closed forms match the small-rank polynomial rows") {
  // Uniform: c(2,p) = p(3 - 3p + 2p ln p)
  for (double p : {0.2, 0.3824, 0.6, 0.9}) {
    CHECK(c_uniform(2, p) ==
          doctest::Approx(p * (3 - 3 * p + 2 * p * std::log(p))).epsilon(1e-12));
    CHECK(a_laminar(2, p) ==
          doctest::Approx(p * (2 - 2 * p + p * std::log(p))).epsilon(1e-12));
    double L = std::log(p);
    CHECK(c_uniform(3, p) ==
          doctest::Approx(p / 8 * (19 - 19 * p * p + 30 * p * p * L - 18 * p * p * L * L))
              .epsilon(1e-12));
    CHECK(a_laminar(3, p) ==
          doctest::Approx(p / 8 * (11 - 11 * p * p + 14 * p * p * L - 6 * p * p * L * L))
              .epsilon(1e-12));
    CHECK(a_laminar(4, p) == doctest::Approx(p / 81 *
                                             (94 - 94 * std::pow(p, 3) +
                                              201 * std::pow(p, 3) * L -
                                              180 * std::pow(p, 3) * L * L +
                                              72 * std::pow(p, 3) * L * L * L))
                                 .epsilon(1e-12));
  }
  CHECK(c_uniform(1, 1 / std::exp(1.0)) == doctest::Approx(1 / std::exp(1.0)).epsilon(1e-12));
  CHECK(c_uniform(2, 0.3824) == doctest::Approx(0.4273).epsilon(3e-4));
  CHECK(c_uniform(3, 0.3867) == doctest::Approx(0.4575).epsilon(3e-4));
  CHECK(a_laminar(2, 0.4241) == doctest::Approx(0.3341).epsilon(3e-4));
  CHECK(a_laminar(4, 0.4629) == doctest::Approx(0.3169).epsilon(3e-4));
  // large rank at p = 1/2 approaches 1 - ln 2 from above
  CHECK(a_laminar(200, 0.5) == doctest::Approx(1 - std::log(2.0)).epsilon(5e-4));
  CHECK(a_laminar(200, 0.5) >= 1 - std::log(2.0) - 1e-9);
}

TEST_CASE("bounds") {
  CHECK(basic_bound(0.5) == 0.25);
  CHECK(basic_bound(0.1) == doctest::Approx(basic_bound(0.9)).epsilon(1e-12));
  CHECK(basic_bound(1e-9) == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(generation_bound(0.4485) == doctest::Approx(0.2693).epsilon(2e-3));
  CHECK(generation_bound(0.5) == doctest::Approx(0.2670).epsilon(2e-4));
  CHECK(generation_bound(0.999999) == doctest::Approx(0.0).epsilon(1e-4));
}

TEST_CASE("rank-2 mixture bound") {
  for (double p : {0.25, 0.4067, 0.55}) {
    CHECK(rank2_mixture_bound(p, 0.0) == doctest::Approx(a_laminar(2, p)).epsilon(1e-12));
    CHECK(rank2_mixture_bound(p, 1.0) == doctest::Approx(p * (1 - p)).epsilon(1e-9));
  }
  CHECK(rank2_mixture_bound(0.4067, 0.3928) == doctest::Approx(0.3462).epsilon(3e-3));
  // the greedy term persists
  for (double p : {0.2, 0.4, 0.6, 0.8})
    for (double eps : {0.1, 0.3, 0.5, 0.9})
      CHECK(rank2_mixture_bound(p, eps) >= a_laminar(2, p) * (1 - eps) - 1e-12);
}

TEST_CASE("graphic mixture bound") {
  CHECK(graphic_mixture_bound(0.5, 0.0141) >= 0.2504 - 1e-3);
  CHECK(graphic_mixture_bound(0.5, 0.0) == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(graphic_mixture_bound(0.7, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(graphic_mixture_bound(0.3, 0.0), std::invalid_argument);
}

TEST_CASE("forbidden bounds and optima") {
  ScalarOpt q1 = forbidden_optimum(1);
  CHECK(q1.arg == doctest::Approx(1 / std::exp(1.0)).epsilon(1e-6));
  CHECK(q1.value == doctest::Approx(1 / std::exp(1.0)).epsilon(1e-9));
  ScalarOpt q2 = forbidden_optimum(2);
  CHECK(q2.arg == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(q2.value == doctest::Approx(0.25).epsilon(1e-6));
  ScalarOpt q3 = forbidden_optimum(3);
  CHECK(q3.arg == doctest::Approx(0.5774).epsilon(1e-3));
  CHECK(q3.value == doctest::Approx(std::pow(3.0, -1.5)).epsilon(1e-4));
}

TEST_CASE("scalar optimizer") {
  ScalarOpt s = optimize_scalar([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0,
                                1e-9);
  CHECK(s.arg == doctest::Approx(0.3).epsilon(1e-6));
  ScalarOpt c2 = optimize_scalar([](double p) { return c_uniform(2, p); }, 1e-4, 1 - 1e-4,
                                 1e-9);
  CHECK(c2.arg == doctest::Approx(0.3824).epsilon(2e-3));
  ScalarOpt a3 = optimize_scalar([](double p) { return a_laminar(3, p); }, 1e-4, 1 - 1e-4,
                                 1e-9);
  CHECK(a3.arg == doctest::Approx(0.4490).epsilon(2e-3));
  CHECK(a3.value == doctest::Approx(0.3225).epsilon(3e-4));
}

TEST_CASE("mixture optimizers recover the reported parameters") {
  MixtureOpt r2 = optimize_mixture_rank2();
  CHECK(r2.p == doctest::Approx(0.4067).epsilon(6e-3));
  CHECK(r2.q == doctest::Approx(0.9194).epsilon(4e-3));
  CHECK(r2.eps == doctest::Approx(0.3928).epsilon(8e-3));
  CHECK(r2.value == doctest::Approx(0.3462).epsilon(3e-3));

  MixtureOpt gm = optimize_mixture_graphic();
  CHECK(gm.p == doctest::Approx(0.5).epsilon(4e-3));
  CHECK(gm.q == doctest::Approx(0.8251).epsilon(4e-3));
  CHECK(gm.eps == doctest::Approx(0.0141).epsilon(0.25));
  CHECK(gm.value >= 0.2504 - 1.5e-3);

  MixtureOpt he = optimize_mixture_graphic_high_eps();
  CHECK(he.p == doctest::Approx(0.5).epsilon(2e-3));
  CHECK(he.value == doctest::Approx(0.2409).epsilon(2e-3));
}

TEST_CASE("monotonicity invariants") {
  // a <= c on a grid
  for (int r : {1, 2, 3, 5, 10, 25, 50})
    for (double p = 0.01; p < 0.995; p += 0.07)
      CHECK(a_laminar(r, p) <= c_uniform(r, p) + 1e-12);
  // a(r, 1/2) non-increasing toward 1 - ln 2
  double prev = 1.0;
  for (int r = 1; r <= 500; r = r < 16 ? r + 1 : r * 2) {
    double v = a_laminar(r, 0.5);
    CHECK(v <= prev + 1e-12);
    CHECK(v >= 1 - std::log(2.0) - 1e-3);
    prev = v;
  }
  // c(r, p(r)) non-decreasing toward 1 - 1/e
  double prev_c = 0.0;
  for (int r : {1, 2, 3, 4, 6, 8, 12, 20, 40}) {
    ScalarOpt s = optimize_scalar([r](double p) { return c_uniform(r, p); }, 1e-4, 1 - 1e-4,
                                  1e-8);
    CHECK(s.value >= prev_c - 1e-12);
    CHECK(s.value <= 1 - 1 / std::exp(1.0) + 1e-9);
    prev_c = s.value;
  }
}

TEST_CASE("language Monte Carlo agrees with the closed forms") {
  SplitMix64 rng(4242);
  const long n = 300000;
  // rank grid for the ranked languages
  for (int r : {1, 2, 3, 5, 8})
    for (double p : {0.35, 0.55, 0.75}) {
      McEstimate u = language_prob_mc(Language::uniform(r), r, p, 1.0, 120000, rng);
      CHECK(std::fabs(u.value - c_uniform(r, p)) < 4 * u.stderr_ + 1e-9);
      McEstimate l = language_prob_mc(Language::laminar(r), r, p, 1.0, 120000, rng);
      CHECK(std::fabs(l.value - a_laminar(r, p)) < 4 * l.stderr_ + 1e-9);
    }
  for (double p : {0.3, 0.5, 0.7}) {
    McEstimate u = language_prob_mc(Language::uniform(3), 3, p, 1.0, n, rng);
    CHECK(std::fabs(u.value - c_uniform(3, p)) < 4 * u.stderr_ + 1e-9);
    McEstimate l = language_prob_mc(Language::laminar(3), 3, p, 1.0, n, rng);
    CHECK(std::fabs(l.value - a_laminar(3, p)) < 4 * l.stderr_ + 1e-9);
    McEstimate b = language_prob_mc(Language::basic(), 3, p, 1.0, n, rng);
    CHECK(std::fabs(b.value - basic_bound(p)) < 4 * b.stderr_ + 1e-9);
    McEstimate g = language_prob_mc(Language::generation(), 3, p, 1.0, n, rng);
    CHECK(std::fabs(g.value - generation_bound(p)) < 4 * g.stderr_ + 1e-9);
    McEstimate f = language_prob_mc(Language::forbidden(2), 4, p, 1.0, n, rng);
    CHECK(std::fabs(f.value - forbidden_bound(2, p)) < 4 * f.stderr_ + 1e-9);
  }
  CHECK_THROWS_AS(language_prob_mc(Language::basic(), 3, 0.5, 1.0, 0, rng),
                  std::invalid_argument);
}
