#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msp/arrivals.hpp"
#include "msp/matroid.hpp"
#include "msp/rng.hpp"

namespace msp {

enum class Algorithm {
  greedy,
  oblivious_partition,
  mixture_rank2,
  basic,
  generation,
  oblivious_graphic,
  mixture_graphic,
};

const char* algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(const std::string& name);

struct RunConfig {
  double p = 0.5;
  double epsilon = 0.0;
  std::optional<int> coin;  // pre-drawn mixture branch: 1 = oblivious side
};

struct AuxArc {
  int tail = -1;
  int head = -1;
  ElementId elem = -1;
  double t = 0;
  int gen = 0;
};

// Greedy auxiliary digraph with maximum in-degree one; generations are
// computed at insertion (dummy -> 1, fresh tail -> 0, else parent + 1).
class AuxDigraph {
 public:
  explicit AuxDigraph(int vertices) : in_arc_(vertices, -1) {}

  bool head_free(int v) const { return in_arc_[v] == -1; }
  // Returns the arc index, or -1 when the head is already covered.
  int insert(const Arc& arc, double t, bool dummy);

  const std::vector<AuxArc>& arcs() const { return arcs_; }
  int in_arc(int v) const { return in_arc_[v]; }
  bool tail_free_at_insert(int idx) const { return tail_free_[idx]; }

 private:
  std::vector<AuxArc> arcs_;
  std::vector<int> in_arc_;
  std::vector<char> tail_free_;  // tail in-degree was zero at insertion
};

// Independence maintenance for the selected set only.
class IndepTracker {
 public:
  explicit IndepTracker(const MatroidInstance& m);
  bool can_add(ElementId e) const;
  void add(ElementId e);

 private:
  const MatroidInstance* m_;
  LaminarView view_;
  std::vector<int> count_;
  mutable std::vector<int> uf_;  // graphic union-find, mutable for path halving
  int uf_find(int x) const;
};

struct RunOutcome {
  ElementSet selected;           // real elements only, sorted
  ElementSet selected_internal;  // including dummies accepted along the way
  std::vector<AuxArc> aux;       // graphic algorithms
  int branch = -1;               // mixture branch actually run (1 = oblivious)
};

RunOutcome greedy_improving(const AugmentedInstance& aug, const ArrivalSample& sample,
                            const RunConfig& cfg);
RunOutcome oblivious_partition_rank2(const AugmentedInstance& aug, const ArrivalSample& sample,
                                     const RunConfig& cfg);
RunOutcome mixture_rank2(const AugmentedInstance& aug, const ArrivalSample& sample,
                         const RunConfig& cfg, SplitMix64& rng);
RunOutcome basic_graphic(const AugmentedInstance& aug, const ArrivalSample& sample,
                         const RunConfig& cfg);
RunOutcome generation_graphic(const AugmentedInstance& aug, const ArrivalSample& sample,
                              const RunConfig& cfg);
RunOutcome oblivious_graphic(const AugmentedInstance& aug, const ArrivalSample& sample,
                             const RunConfig& cfg);
RunOutcome mixture_graphic(const AugmentedInstance& aug, const ArrivalSample& sample,
                           const RunConfig& cfg, SplitMix64& rng);

RunOutcome run_algorithm(Algorithm algo, const AugmentedInstance& aug,
                         const ArrivalSample& sample, const RunConfig& cfg, SplitMix64& rng);

// True when the algorithm needs the graphic root construction.
bool needs_graphic_augmentation(Algorithm algo);

}  // namespace msp
