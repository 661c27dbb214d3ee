#include "msp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace msp {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MSP_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

AugmentMode resolve_mode(const MatroidInstance& base, Algorithm algo, AugmentPolicy policy) {
  switch (policy) {
    case AugmentPolicy::on:
      return AugmentMode::record;
    case AugmentPolicy::off:
      return AugmentMode::none;
    case AugmentPolicy::automatic:
      return needs_graphic_augmentation(algo) && base.kind == MatroidKind::graphic &&
                     !base.has_dummies()
                 ? AugmentMode::record
                 : AugmentMode::none;
  }
  return AugmentMode::none;
}

void check_compat(const MatroidInstance& base, Algorithm algo) {
  bool graphic = base.kind == MatroidKind::graphic;
  bool rank2 = base.kind == MatroidKind::rank2;
  switch (algo) {
    case Algorithm::greedy:
      return;
    case Algorithm::oblivious_partition:
    case Algorithm::mixture_rank2:
      if (!rank2) throw std::invalid_argument("algorithm requires a rank-2 instance");
      return;
    default:
      if (!graphic) throw std::invalid_argument("algorithm requires a graphic instance");
  }
}

}  // namespace

CompetitivenessReport estimate(const MatroidInstance& base, Algorithm algo, RunConfig cfg,
                               AugmentPolicy policy, long trials, std::uint64_t seed,
                               int threads) {
  if (trials < 1) throw std::invalid_argument("estimate: trials >= 1");
  check_compat(base, algo);
  AugmentMode mode = resolve_mode(base, algo, policy);
  if (mode == AugmentMode::record && base.has_dummies())
    throw std::invalid_argument("estimate: instance already carries fixed dummies");

  ElementSet opt = base_optimum(base);
  if (opt.empty()) throw std::invalid_argument("estimate: base optimum is empty");

  int workers = resolve_threads(threads);
  workers = static_cast<int>(std::min<long>(workers, trials));
  AugmentedInstance shared = no_augment(base);  // reused when mode == none

  std::vector<std::vector<long>> hits(workers, std::vector<long>(opt.size(), 0));
  std::vector<std::thread> pool;
  auto work = [&](int w) {
    std::vector<long>& local = hits[w];
    for (long trial = w; trial < trials; trial += workers) {
      SplitMix64 rng = child_rng(seed, static_cast<std::uint64_t>(trial));
      const AugmentedInstance* aug = &shared;
      AugmentedInstance fresh;
      if (mode == AugmentMode::record) {
        fresh = augment(base, cfg.p, rng);
        aug = &fresh;
      }
      ArrivalSample sample = arrivals_for(*aug, rng);
      RunOutcome outcome = run_algorithm(algo, *aug, sample, cfg, rng);
      for (std::size_t i = 0; i < opt.size(); ++i)
        if (std::binary_search(outcome.selected.begin(), outcome.selected.end(), opt[i]))
          ++local[i];
    }
  };
  for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  for (auto& t : pool) t.join();

  CompetitivenessReport rep;
  rep.algorithm = algo;
  rep.cfg = cfg;
  rep.mode_used = mode;
  rep.trials = trials;
  rep.seed = seed;
  rep.threads = workers;
  for (std::size_t i = 0; i < opt.size(); ++i) {
    ElementReport er;
    er.elem = opt[i];
    for (int w = 0; w < workers; ++w) er.hits += hits[w][i];
    er.trials = trials;
    er.freq = static_cast<double>(er.hits) / trials;
    er.ci = wilson_ci(er.hits, trials);
    rep.per_element.push_back(er);
  }
  rep.min_element = *std::min_element(
      rep.per_element.begin(), rep.per_element.end(),
      [](const ElementReport& a, const ElementReport& b) { return a.freq < b.freq; });
  return rep;
}

ExactResult exact_oracle(const MatroidInstance& instance, Algorithm algo,
                         const RunConfig& cfg) {
  if (instance.n > 8) throw std::invalid_argument("exact_oracle: n <= 8 required");
  check_compat(instance, algo);
  if (needs_graphic_augmentation(algo) && instance.root < 0)
    throw std::invalid_argument("exact_oracle: graphic algorithms need a fixed dummy set");

  ElementSet opt = base_optimum(instance);
  int n = instance.n;
  double p = cfg.p;

  bool mixture = algo == Algorithm::mixture_rank2 || algo == Algorithm::mixture_graphic;
  std::vector<std::pair<int, double>> coins;
  if (mixture) {
    if (cfg.epsilon > 0.0) coins.emplace_back(1, cfg.epsilon);
    if (cfg.epsilon < 1.0) coins.emplace_back(0, 1.0 - cfg.epsilon);
  } else {
    coins.emplace_back(-1, 1.0);
  }

  // Binomial weights for the sampling cut; n <= 8 keeps everything exact.
  std::vector<double> cut_weight(n + 1);
  double fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  for (int k = 0; k <= n; ++k) {
    double binom = 1;
    for (int i = 0; i < k; ++i) binom = binom * (n - i) / (i + 1);
    cut_weight[k] = binom * std::pow(p, k) * std::pow(1.0 - p, n - k);
  }
  double perm_weight = 1.0 / fact;

  AugmentedInstance aug = no_augment(instance);

  // Kahan accumulation keeps the 360k-case weight sum at unit roundoff.
  std::vector<double> prob(opt.size(), 0.0), prob_c(opt.size(), 0.0);
  double weight_sum = 0, weight_c = 0;
  auto kahan_add = [](double& sum, double& comp, double term) {
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  long cases = 0;

  std::vector<ElementId> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  SplitMix64 dummy_rng(0);  // mixtures receive an explicit coin instead
  ArrivalSample sample;
  sample.t.resize(n);
  do {
    for (int k = 0; k <= n; ++k) {
      // First k arrivals land uniformly inside (0,p), the rest inside (p,1).
      for (int i = 0; i < n; ++i) {
        double t = i < k ? p * (i + 0.5) / std::max(1, k)
                         : p + (1.0 - p) * (i - k + 0.5) / std::max(1, n - k);
        sample.t[order[i]] = t;
      }
      for (auto [coin, cw] : coins) {
        RunConfig run_cfg = cfg;
        if (coin >= 0) run_cfg.coin = coin;
        RunOutcome out = run_algorithm(algo, aug, sample, run_cfg, dummy_rng);
        double w = perm_weight * cut_weight[k] * cw;
        kahan_add(weight_sum, weight_c, w);
        ++cases;
        for (std::size_t i = 0; i < opt.size(); ++i)
          if (std::binary_search(out.selected.begin(), out.selected.end(), opt[i]))
            kahan_add(prob[i], prob_c[i], w);
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));

  ExactResult res;
  res.weight_sum = weight_sum;
  res.cases = cases;
  for (std::size_t i = 0; i < opt.size(); ++i) {
    ElementReport er;
    er.elem = opt[i];
    er.freq = prob[i];
    res.per_element.push_back(er);
  }
  return res;
}

bool DistributionReport::pass(double alpha) const {
  if (ks_last_time.pvalue <= alpha) return false;
  for (const IntervalFit& f : poisson)
    if (f.chi.pvalue <= alpha) return false;
  return std::fabs(correlation) < correlation_limit;
}

DistributionReport distribution_tests(const MatroidInstance& base, double p, long trials,
                                      std::uint64_t seed) {
  if (trials < 100) throw std::invalid_argument("distribution_tests: too few trials");
  double mid = 0.5 * (p + 1.0);
  std::vector<double> last_times;
  last_times.reserve(trials);
  std::vector<long> n_full, n_lo, n_hi;
  int rank = 0;
  for (long trial = 0; trial < trials; ++trial) {
    SplitMix64 rng = child_rng(seed, static_cast<std::uint64_t>(trial));
    AugmentedInstance aug = augment(base, p, rng);
    if (trial == 0) rank = aug.matroid.rank();
    ArrivalSample sample = arrivals_for(aug, rng);
    ImprovingTrace trace = improving_trace(aug, sample);
    ImprovingStats s1 = improving_stats(trace, 0.0, 1.0);
    if (s1.last_before_b) last_times.push_back(*s1.last_before_b);
    n_full.push_back(improving_stats(trace, p, 1.0).count);
    n_lo.push_back(improving_stats(trace, p, mid).count);
    n_hi.push_back(improving_stats(trace, mid, 1.0).count);
  }

  DistributionReport rep;
  rep.rank = rank;
  rep.trials = trials;
  rep.ks_last_time =
      ks_test(std::move(last_times), [rank](double x) { return std::pow(x, rank); });
  rep.poisson.push_back({p, 1.0, rank * std::log(1.0 / p), chi_square_poisson(n_full, rank * std::log(1.0 / p))});
  rep.poisson.push_back({p, mid, rank * std::log(mid / p), chi_square_poisson(n_lo, rank * std::log(mid / p))});
  rep.poisson.push_back({mid, 1.0, rank * std::log(1.0 / mid), chi_square_poisson(n_hi, rank * std::log(1.0 / mid))});
  std::vector<double> xs(n_lo.begin(), n_lo.end()), ys(n_hi.begin(), n_hi.end());
  rep.correlation = pearson_correlation(xs, ys);
  rep.correlation_limit = 3.0 / std::sqrt(static_cast<double>(trials));
  return rep;
}

}  // namespace msp
