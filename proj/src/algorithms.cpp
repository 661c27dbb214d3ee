#include "msp/algorithms.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace msp {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::greedy: return "greedy";
    case Algorithm::oblivious_partition: return "oblivious-partition";
    case Algorithm::mixture_rank2: return "mixture-rank2";
    case Algorithm::basic: return "basic";
    case Algorithm::generation: return "generation";
    case Algorithm::oblivious_graphic: return "oblivious-graphic";
    case Algorithm::mixture_graphic: return "mixture-graphic";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_name(const std::string& name) {
  for (Algorithm a : {Algorithm::greedy, Algorithm::oblivious_partition, Algorithm::mixture_rank2,
                      Algorithm::basic, Algorithm::generation, Algorithm::oblivious_graphic,
                      Algorithm::mixture_graphic})
    if (name == algorithm_name(a)) return a;
  return std::nullopt;
}

bool needs_graphic_augmentation(Algorithm algo) {
  switch (algo) {
    case Algorithm::basic:
    case Algorithm::generation:
    case Algorithm::oblivious_graphic:
    case Algorithm::mixture_graphic:
      return true;
    default:
      return false;
  }
}

int AuxDigraph::insert(const Arc& arc, double t, bool dummy) {
  if (in_arc_[arc.head] != -1) return -1;
  AuxArc rec;
  rec.tail = arc.tail;
  rec.head = arc.head;
  rec.elem = arc.elem;
  rec.t = t;
  bool tail_free = in_arc_[arc.tail] == -1;
  if (dummy)
    rec.gen = 1;
  else if (tail_free)
    rec.gen = 0;
  else
    rec.gen = arcs_[in_arc_[arc.tail]].gen + 1;
  int idx = static_cast<int>(arcs_.size());
  arcs_.push_back(rec);
  tail_free_.push_back(tail_free);
  in_arc_[arc.head] = idx;
  return idx;
}

IndepTracker::IndepTracker(const MatroidInstance& m) : m_(&m) {
  if (m.kind == MatroidKind::graphic) {
    uf_.resize(m.vertices);
    for (int i = 0; i < m.vertices; ++i) uf_[i] = i;
  } else {
    view_ = laminar_view(m);
    count_.assign(view_.sets.size(), 0);
  }
}

int IndepTracker::uf_find(int x) const {
  while (uf_[x] != x) {
    uf_[x] = uf_[uf_[x]];
    x = uf_[x];
  }
  return x;
}

bool IndepTracker::can_add(ElementId e) const {
  if (m_->kind == MatroidKind::graphic) {
    auto [u, v] = m_->edges[e];
    return uf_find(u) != uf_find(v);
  }
  for (int s : view_.sets_of[e])
    if (count_[s] >= view_.sets[s].cap) return false;
  return true;
}

void IndepTracker::add(ElementId e) {
  if (m_->kind == MatroidKind::graphic) {
    auto [u, v] = m_->edges[e];
    uf_[uf_find(u)] = uf_find(v);
  } else {
    for (int s : view_.sets_of[e]) ++count_[s];
  }
}

namespace {

RunOutcome finalize(const MatroidInstance& m, ElementSet internal) {
  RunOutcome out;
  std::sort(internal.begin(), internal.end());
  for (ElementId e : internal)
    if (!m.is_dummy[e]) out.selected.push_back(e);
  out.selected_internal = std::move(internal);
  // The reported set must be independent in the base matroid; checked on
  // every run.
  IndepTracker check(m);
  for (ElementId e : out.selected) {
    if (!check.can_add(e)) throw std::logic_error("algorithm output is dependent");
    check.add(e);
  }
  return out;
}

void require_graphic(const AugmentedInstance& aug, const char* who) {
  if (aug.matroid.kind != MatroidKind::graphic)
    throw std::invalid_argument(std::string(who) + " requires a graphic instance");
  if (aug.matroid.root < 0)
    throw std::logic_error(std::string(who) + " requires the root augmentation");
}

}  // namespace

RunOutcome greedy_improving(const AugmentedInstance& aug, const ArrivalSample& sample,
                            const RunConfig& cfg) {
  const MatroidInstance& m = aug.matroid;
  OptTracker opt(m);
  IndepTracker alg(m);
  ElementSet internal;
  for (const ReplayItem& it : time_order(sample)) {
    bool improving = opt.arrive(it.e);
    if (it.t < cfg.p || !improving) continue;
    if (alg.can_add(it.e)) {
      alg.add(it.e);
      internal.push_back(it.e);
    }
  }
  return finalize(m, std::move(internal));
}

RunOutcome oblivious_partition_rank2(const AugmentedInstance& aug, const ArrivalSample& sample,
                                     const RunConfig& cfg) {
  const MatroidInstance& m = aug.matroid;
  if (m.kind != MatroidKind::rank2)
    throw std::invalid_argument("oblivious-partition requires a rank-2 instance");
  std::vector<int> class_of(m.n, -1);
  for (int c = 0; c < static_cast<int>(m.classes.size()); ++c)
    for (ElementId e : m.classes[c]) class_of[e] = c;

  OptTracker opt(m);
  ElementSet internal;
  bool boundary_done = false;
  ElementId g1 = -1;
  bool have_f1 = false, have_f2 = false;
  for (const ReplayItem& it : time_order(sample)) {
    if (!boundary_done && it.t >= cfg.p) {
      boundary_done = true;
      const auto& sample_opt = opt.opt();  // OPT(E_p), value-sorted
      if (static_cast<int>(sample_opt.size()) < 2 && aug.mode == AugmentMode::record)
        throw std::logic_error("oblivious-partition: OPT(E_p) has rank < 2 under augmentation");
      if (!sample_opt.empty()) g1 = sample_opt.front();
    }
    bool improving = opt.arrive(it.e);
    if (it.t < cfg.p || !improving || g1 < 0) continue;
    bool parallel_g1 = class_of[it.e] == class_of[g1];
    if (parallel_g1 && !have_f1) {
      have_f1 = true;
      internal.push_back(it.e);
    } else if (!parallel_g1 && !have_f2) {
      have_f2 = true;
      internal.push_back(it.e);
    }
  }
  return finalize(m, std::move(internal));
}

RunOutcome mixture_rank2(const AugmentedInstance& aug, const ArrivalSample& sample,
                         const RunConfig& cfg, SplitMix64& rng) {
  int coin = cfg.coin ? *cfg.coin : (rng.uniform01() < cfg.epsilon ? 1 : 0);
  RunOutcome out = coin == 1 ? oblivious_partition_rank2(aug, sample, cfg)
                             : greedy_improving(aug, sample, cfg);
  out.branch = coin;
  return out;
}

namespace {

// Shared replay for the AUX-based graphic algorithms. `select` decides, given
// the inserted arc index and the digraph, whether the arriving edge joins the
// output.
template <typename SelectFn>
RunOutcome run_aux_algorithm(const AugmentedInstance& aug, const ArrivalSample& sample,
                             const RunConfig& cfg, SelectFn select) {
  const MatroidInstance& m = aug.matroid;
  OptTracker opt(m);
  AuxDigraph aux(m.vertices);
  ElementSet internal;
  for (const ReplayItem& it : time_order(sample)) {
    bool improving = opt.arrive(it.e);
    if (it.t < cfg.p || !improving) continue;
    const auto& arc = opt.last_arc();
    if (!arc) continue;  // optimum not yet rooted (fixed finite dummy sets only)
    if (!aux.head_free(arc->head)) continue;
    int idx = aux.insert(*arc, it.t, m.is_dummy[it.e]);
    if (select(idx, aux)) internal.push_back(it.e);
  }
  RunOutcome out = finalize(m, std::move(internal));
  out.aux = aux.arcs();
  return out;
}

}  // namespace

RunOutcome basic_graphic(const AugmentedInstance& aug, const ArrivalSample& sample,
                         const RunConfig& cfg) {
  require_graphic(aug, "basic");
  return run_aux_algorithm(aug, sample, cfg, [](int idx, const AuxDigraph& aux) {
    return aux.tail_free_at_insert(idx);
  });
}

RunOutcome generation_graphic(const AugmentedInstance& aug, const ArrivalSample& sample,
                              const RunConfig& cfg) {
  require_graphic(aug, "generation");
  int root = aug.matroid.root;
  return run_aux_algorithm(aug, sample, cfg, [root](int idx, const AuxDigraph& aux) {
    const AuxArc& arc = aux.arcs()[idx];
    if (arc.tail == root) return false;  // dummy edges never enter the output
    bool selected;
    if (aux.tail_free_at_insert(idx)) {
      selected = true;
    } else {
      const AuxArc& f = aux.arcs()[aux.in_arc(arc.tail)];
      selected = f.tail == root || !aux.tail_free_at_insert(aux.in_arc(arc.tail));
    }
    // The branch conditions must coincide with the Gen != 1 rule.
    if (selected != (arc.gen != 1))
      throw std::logic_error("generation: branch rule disagrees with Gen != 1");
    return selected;
  });
}

RunOutcome oblivious_graphic(const AugmentedInstance& aug, const ArrivalSample& sample,
                             const RunConfig& cfg) {
  require_graphic(aug, "oblivious-graphic");
  const MatroidInstance& m = aug.matroid;
  OptTracker opt(m);
  IndepTracker alg(m);
  ElementSet internal;
  bool boundary_done = false;
  std::set<std::pair<int, int>> x_pairs;
  auto norm = [&](ElementId e) {
    auto [u, v] = m.edges[e];
    return std::minmax(u, v);
  };
  for (const ReplayItem& it : time_order(sample)) {
    if (!boundary_done && it.t >= cfg.p) {
      boundary_done = true;
      for (ElementId e : opt.opt()) x_pairs.insert(norm(e));
    }
    bool improving = opt.arrive(it.e);
    if (it.t < cfg.p || !improving) continue;
    if (!x_pairs.count(norm(it.e))) continue;
    if (alg.can_add(it.e)) {
      alg.add(it.e);
      internal.push_back(it.e);
    }
  }
  return finalize(m, std::move(internal));
}

RunOutcome mixture_graphic(const AugmentedInstance& aug, const ArrivalSample& sample,
                           const RunConfig& cfg, SplitMix64& rng) {
  int coin = cfg.coin ? *cfg.coin : (rng.uniform01() < cfg.epsilon ? 1 : 0);
  RunOutcome out = coin == 1 ? oblivious_graphic(aug, sample, cfg)
                             : generation_graphic(aug, sample, cfg);
  out.branch = coin;
  return out;
}

RunOutcome run_algorithm(Algorithm algo, const AugmentedInstance& aug,
                         const ArrivalSample& sample, const RunConfig& cfg, SplitMix64& rng) {
  switch (algo) {
    case Algorithm::greedy: return greedy_improving(aug, sample, cfg);
    case Algorithm::oblivious_partition: return oblivious_partition_rank2(aug, sample, cfg);
    case Algorithm::mixture_rank2: return mixture_rank2(aug, sample, cfg, rng);
    case Algorithm::basic: return basic_graphic(aug, sample, cfg);
    case Algorithm::generation: return generation_graphic(aug, sample, cfg);
    case Algorithm::oblivious_graphic: return oblivious_graphic(aug, sample, cfg);
    case Algorithm::mixture_graphic: return mixture_graphic(aug, sample, cfg, rng);
  }
  throw std::logic_error("unknown algorithm");
}

}  // namespace msp
