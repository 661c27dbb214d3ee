#include "msp/labeling.hpp"

#include <algorithm>
#include <stdexcept>

namespace msp {

LabelScheme LabelScheme::induced(ValueOrder pi) {
  LabelScheme s;
  s.kind = Kind::induced;
  s.order = std::move(pi);
  return s;
}

LabelScheme LabelScheme::induced_estar_first(const MatroidInstance& m, ElementId estar) {
  // e* first, the rest in value order.
  std::vector<ElementId> ranking;
  ranking.push_back(estar);
  for (ElementId e : m.order.ranking)
    if (e != estar) ranking.push_back(e);
  LabelScheme s;
  s.kind = Kind::induced;
  s.order = ValueOrder::from_ranking(std::move(ranking));
  s.estar = estar;
  return s;
}

LabelScheme LabelScheme::chain(ElementId estar) {
  LabelScheme s;
  s.kind = Kind::chain;
  s.estar = estar;
  return s;
}

LabelScheme LabelScheme::lambda0(ElementId estar) {
  LabelScheme s;
  s.kind = Kind::lambda0;
  s.estar = estar;
  return s;
}

LabelScheme LabelScheme::lambda1(ElementId estar) {
  LabelScheme s;
  s.kind = Kind::lambda1;
  s.estar = estar;
  return s;
}

ValueOrder chain_order(const MatroidInstance& m, ElementId estar) {
  ElementSet opt = base_optimum(m);
  if (!std::binary_search(opt.begin(), opt.end(), estar)) {
    // Augmented instances have the same real optimum; recheck on the full set.
    ElementSet all(m.n);
    for (int i = 0; i < m.n; ++i) all[i] = i;
    ElementSet full = opt_greedy(m, all);
    if (!std::binary_search(full.begin(), full.end(), estar))
      throw std::logic_error("chain_order: element is not optimal");
  }
  // Chain sets containing e*, innermost first; every element's membership
  // pattern in the chain is an up-set, so the minimal containing index sorts.
  std::vector<int> chain_index(m.n, 1 << 30);
  if (m.kind != MatroidKind::graphic) {
    LaminarView view = laminar_view(m);
    std::vector<int> chain;  // set indices containing e*, small to large
    for (int s : view.sets_of[estar]) chain.push_back(s);
    for (int depth = 0; depth < static_cast<int>(chain.size()); ++depth)
      for (ElementId e : view.sets[chain[depth]].members)
        chain_index[e] = std::min(chain_index[e], depth);
  }
  std::vector<ElementId> ids(m.n);
  for (int i = 0; i < m.n; ++i) ids[i] = i;
  std::sort(ids.begin(), ids.end(), [&](ElementId a, ElementId b) {
    if (a == estar || b == estar) return a == estar;
    if (chain_index[a] != chain_index[b]) return chain_index[a] < chain_index[b];
    return a < b;
  });
  return ValueOrder::from_ranking(std::move(ids));
}

namespace {

int induced_label(const TraceRecord& rec, const ValueOrder& pi) {
  int rank = 1;
  for (ElementId f : rec.opt_after)
    if (f != rec.elem && pi.prefers(f, rec.elem)) ++rank;
  return rank;
}

// Label among the non-pinned OPT members, by element id (3.. or 4..).
int free_label(const TraceRecord& rec, const std::vector<ElementId>& pinned, int base,
               bool reverse) {
  int rank = 0;
  for (ElementId f : rec.opt_after) {
    if (f == rec.elem) continue;
    if (std::find(pinned.begin(), pinned.end(), f) != pinned.end()) continue;
    if (reverse ? f > rec.elem : f < rec.elem) ++rank;
  }
  return base + rank;
}

}  // namespace

Word improving_word(const ImprovingTrace& trace, const LabelScheme& scheme, double a,
                    double b) {
  if (!(0.0 <= a && a < b && b <= 1.0))
    throw std::invalid_argument("improving_word: interval outside (0,1]");
  const MatroidInstance& m = *trace.instance;

  ValueOrder pi;
  int estar_idx = -1;
  if (scheme.kind == LabelScheme::Kind::induced) {
    pi = scheme.order;
  } else if (scheme.kind == LabelScheme::Kind::chain) {
    pi = chain_order(m, scheme.estar);
  } else {
    // lambda0 / lambda1: the standard e*-first order after t*, a head-based
    // labeling before.
    pi = LabelScheme::induced_estar_first(m, scheme.estar).order;
    for (int i = 0; i < static_cast<int>(trace.records.size()); ++i)
      if (trace.records[i].elem == scheme.estar) estar_idx = i;
    if (estar_idx < 0)
      throw std::logic_error("improving_word: e* does not appear in the trace");
  }

  Word word;
  for (int i = static_cast<int>(trace.records.size()) - 1; i >= 0; --i) {
    const TraceRecord& rec = trace.records[i];
    if (rec.t <= a || rec.t > b) continue;
    if (scheme.kind == LabelScheme::Kind::induced ||
        scheme.kind == LabelScheme::Kind::chain) {
      word.push_back(induced_label(rec, pi));
      continue;
    }

    const TraceRecord& star = trace.records[estar_idx];
    if (i >= estar_idx) {
      word.push_back(induced_label(rec, pi));
      continue;
    }
    if (!star.arc || !rec.arc)
      throw std::logic_error("improving_word: orientation missing before t*");
    int ustar = star.arc->tail;
    int vstar = star.arc->head;
    int head = rec.arc->head;
    if (head == vstar) {
      word.push_back(1);
      continue;
    }
    if (head == ustar) {
      word.push_back(2);
      continue;
    }
    if (scheme.kind == LabelScheme::Kind::lambda0) {
      word.push_back(free_label(rec, {rec.in_edge[vstar], rec.in_edge[ustar]}, 3,
                                scheme.reverse_tiebreak));
      continue;
    }
    // lambda1: label 3 follows the earliest future improving arc into u*.
    int wstar = -1;
    for (int j = i + 1; j < static_cast<int>(trace.records.size()); ++j) {
      const auto& future = trace.records[j];
      if (future.arc && future.arc->head == ustar) {
        if (future.arc->tail != m.root) wstar = future.arc->tail;
        break;
      }
    }
    if (wstar < 0) {
      // Arbitrary fallback vertex distinct from u* and v*.
      for (int v = scheme.reverse_tiebreak ? m.vertices - 1 : 0;
           v >= 0 && v < m.vertices; v += scheme.reverse_tiebreak ? -1 : 1) {
        if (v != ustar && v != vstar && v != m.root) {
          wstar = v;
          break;
        }
      }
      if (wstar < 0) throw std::logic_error("improving_word: lambda1 needs |V| >= 3");
    }
    if (head == wstar) {
      word.push_back(3);
      continue;
    }
    word.push_back(free_label(
        rec, {rec.in_edge[vstar], rec.in_edge[ustar], rec.in_edge[wstar]}, 4,
        scheme.reverse_tiebreak));
  }
  return word;
}

std::string word_to_string(const Word& w, int r) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (r > 9 && i > 0) out += ',';
    out += std::to_string(w[i]);
  }
  return out;
}

bool in_language(const Word& w, const Language& lang) {
  auto check_symbols = [&](int r) {
    for (int s : w)
      if (s < 1 || s > r) throw std::invalid_argument("in_language: symbol out of range");
  };
  switch (lang.kind) {
    case Language::Kind::uniform: {
      check_symbols(lang.r);
      // First 1 must exist, with at most r-1 symbols after it.
      for (int i = 0; i < static_cast<int>(w.size()); ++i)
        if (w[i] == 1) return static_cast<int>(w.size()) - 1 - i <= lang.r - 1;
      return false;
    }
    case Language::Kind::laminar: {
      check_symbols(lang.r);
      int ones = 0, first = -1;
      for (int i = 0; i < static_cast<int>(w.size()); ++i)
        if (w[i] == 1) {
          ++ones;
          if (first < 0) first = i;
        }
      if (ones != 1) return false;
      // Well-indexed suffix: at most c-1 symbols <= c, for every c.
      int len = static_cast<int>(w.size()) - 1 - first;
      for (int c = 1; c <= len; ++c) {
        int cnt = 0;
        for (int i = first + 1; i < static_cast<int>(w.size()); ++i)
          if (w[i] <= c) ++cnt;
        if (cnt > c - 1) return false;
      }
      return true;
    }
    case Language::Kind::basic: {
      int first = -1;
      for (int i = 0; i < static_cast<int>(w.size()); ++i) {
        if (w[i] == 1 && first < 0) {
          first = i;
        } else if (first >= 0 && (w[i] == 1 || w[i] == 2)) {
          return false;
        }
      }
      return first >= 0;
    }
    case Language::Kind::generation: {
      Word restricted;
      for (int s : w)
        if (s <= 3) restricted.push_back(s);
      int ones = 0, first = -1;
      for (int i = 0; i < static_cast<int>(restricted.size()); ++i)
        if (restricted[i] == 1) {
          ++ones;
          if (first < 0) first = i;
        }
      if (ones != 1) return false;
      return restricted.back() != 2 || restricted.size() - 1 == static_cast<std::size_t>(first);
    }
    case Language::Kind::forbidden: {
      // x 1 y with x free of 1 and y free of symbols <= q.
      int first = -1;
      for (int i = 0; i < static_cast<int>(w.size()); ++i) {
        if (w[i] == 1 && first < 0) {
          first = i;
        } else if (first >= 0 && w[i] <= lang.q) {
          return false;
        }
      }
      return first >= 0;
    }
  }
  return false;
}

ImplicationStats verify_implication(const MatroidInstance& base, Pairing pairing,
                                    ElementId estar, double p, long trials,
                                    std::uint64_t seed) {
  ElementSet opt = base_optimum(base);
  if (!std::binary_search(opt.begin(), opt.end(), estar))
    throw std::invalid_argument("verify_implication: e* must be optimal");

  Algorithm algo = Algorithm::greedy;
  Language lang = Language::basic();
  AugmentMode mode = AugmentMode::record;
  switch (pairing) {
    case Pairing::uniform:
      if (base.kind != MatroidKind::uniform)
        throw std::invalid_argument("uniform pairing requires a uniform instance");
      algo = Algorithm::greedy;
      lang = Language::uniform(base.rank());
      // The uniform-language equivalence holds on the plain uniform matroid;
      // parallel-copy augmentation would change the acceptance rule.
      mode = AugmentMode::none;
      break;
    case Pairing::laminar:
      if (base.kind == MatroidKind::graphic)
        throw std::invalid_argument("laminar pairing requires a capacity-based instance");
      algo = Algorithm::greedy;
      lang = Language::laminar(base.rank());
      break;
    case Pairing::basic:
      if (base.kind != MatroidKind::graphic)
        throw std::invalid_argument("basic pairing requires a graphic instance");
      algo = Algorithm::basic;
      lang = Language::basic();
      break;
    case Pairing::generation: {
      if (base.kind != MatroidKind::graphic)
        throw std::invalid_argument("generation pairing requires a graphic instance");
      std::vector<std::pair<int, int>> pairs;
      for (auto [u, v] : base.edges) pairs.push_back(std::minmax(u, v));
      std::sort(pairs.begin(), pairs.end());
      if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end())
        throw std::invalid_argument("generation pairing requires a simple graph");
      if (base.vertices < 3)
        throw std::invalid_argument("generation pairing requires |V| >= 3");
      algo = Algorithm::generation;
      lang = Language::generation();
      break;
    }
  }

  ImplicationStats stats;
  stats.trials = trials;
  RunConfig cfg;
  cfg.p = p;
  for (long trial = 0; trial < trials; ++trial) {
    SplitMix64 rng = child_rng(seed, static_cast<std::uint64_t>(trial));
    AugmentedInstance aug =
        mode == AugmentMode::record ? augment(base, p, rng) : no_augment(base);
    ArrivalSample sample = arrivals_for(aug, rng);
    ImprovingTrace trace = improving_trace(aug, sample);
    RunOutcome outcome = run_algorithm(algo, aug, sample, cfg, rng);

    LabelScheme scheme =
        pairing == Pairing::uniform
            ? LabelScheme::induced_estar_first(aug.matroid, estar)
            : pairing == Pairing::laminar
                  ? LabelScheme::chain(estar)
                  : pairing == Pairing::basic ? LabelScheme::lambda0(estar)
                                              : LabelScheme::lambda1(estar);
    // The augmented rank drives the ranked languages.
    if (lang.kind == Language::Kind::uniform || lang.kind == Language::Kind::laminar)
      lang.r = aug.matroid.rank();

    Word z = improving_word(trace, scheme, p, 1.0);
    bool member = in_language(z, lang);
    bool selected =
        std::binary_search(outcome.selected.begin(), outcome.selected.end(), estar);
    if (member) ++stats.word_in_lang;
    if (selected) ++stats.selected;
    if (member && !selected) ++stats.violations;
    if (pairing == Pairing::uniform && selected && !member) ++stats.converse_violations;
  }
  return stats;
}

}  // namespace msp
