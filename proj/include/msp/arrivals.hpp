#pragma once

#include <optional>
#include <vector>

#include "msp/matroid.hpp"
#include "msp/rng.hpp"

namespace msp {

// Arrival time per element, all distinct, in (0,1).
struct ArrivalSample {
  std::vector<double> t;
};

enum class AugmentMode { none, record };

// Instance extended with augmentation dummies. In `record` mode the dummy
// arrival times are part of the construction (copies are created until one
// lands in [0,p)), so they are stored here and merged into each sample.
struct AugmentedInstance {
  MatroidInstance matroid;
  AugmentMode mode = AugmentMode::none;
  int base_n = 0;                   // ids below base_n are the base ground set
  std::vector<double> dummy_times;  // per dummy element, record mode only
  std::vector<int> dummy_target;    // copied base element (or vertex for graphic)
};

ArrivalSample sample_arrivals(const MatroidInstance& m, SplitMix64& rng);

// Truncated record construction: per target, dummy copies with strictly
// decreasing rank and fresh uniform arrival times until one lands in [0,p).
// Laminar-copies construction for uniform/laminar/rank2, root construction
// for graphic.
AugmentedInstance augment(const MatroidInstance& base, double p, SplitMix64& rng);

AugmentedInstance no_augment(const MatroidInstance& base);

// Augmentation from externally supplied per-target copy times. With
// `truncate` the record rule applies (copies up to and including the first
// one below p); otherwise every provided copy is materialized. Targets are
// the value-sorted base optimum (or every vertex for graphic instances).
AugmentedInstance augment_from_copy_times(const MatroidInstance& base, double p,
                                          const std::vector<std::vector<double>>& copy_times,
                                          bool truncate);

// Adds a deterministic finite dummy set (one copy per basis element, or one
// root edge per vertex) whose arrival times are sampled like any element.
// Used by the exact oracle and its Monte Carlo counterpart.
MatroidInstance add_fixed_dummies(const MatroidInstance& base);

// Draws real arrival times and merges the pre-drawn dummy times (record mode).
ArrivalSample arrivals_for(const AugmentedInstance& aug, SplitMix64& rng);

struct Arc {
  int tail = -1;
  int head = -1;
  ElementId elem = -1;
};

// Incremental optimum maintainer: feed arrivals in time order, each call
// reports whether the element is improving and updates OPT by the greedy
// swap (the arriving element enters, the worst element of the created
// circuit leaves).
class OptTracker {
 public:
  explicit OptTracker(const MatroidInstance& m);

  bool arrive(ElementId e);
  const std::vector<ElementId>& opt() const { return opt_; }  // value-sorted

  // Graphic only.
  const std::optional<Arc>& last_arc() const { return last_arc_; }
  const std::vector<ElementId>& in_edge() const { return in_edge_; }  // per vertex

 private:
  bool arrive_laminar(ElementId e);
  bool arrive_graphic(ElementId e);
  void rebuild_arborescence(ElementId arrived);

  const MatroidInstance* m_;
  std::vector<ElementId> opt_;  // sorted by value position

  // laminar machinery
  LaminarView view_;
  std::vector<int> count_;

  // graphic machinery
  std::vector<std::vector<std::pair<int, ElementId>>> adj_;
  std::vector<ElementId> in_edge_;
  std::optional<Arc> last_arc_;
};

struct TraceRecord {
  double t = 0;
  ElementId elem = -1;
  ElementSet opt_before;
  ElementSet opt_after;
  std::optional<Arc> arc;        // graphic: orientation at arrival
  std::vector<ElementId> in_edge;  // graphic: per-vertex incoming OPT edge
};

struct ImprovingTrace {
  const MatroidInstance* instance = nullptr;
  std::vector<TraceRecord> records;  // increasing time
};

ImprovingTrace improving_trace(const AugmentedInstance& aug, const ArrivalSample& sample);

struct ImprovingStats {
  std::optional<double> last_before_b;  // S(b); absent when no improving time in [0,b)
  int count = 0;                        // N[a,b)
};

ImprovingStats improving_stats(const ImprovingTrace& trace, double a, double b);

struct ReplayItem {
  double t;
  ElementId e;
};
std::vector<ReplayItem> time_order(const ArrivalSample& sample);

}  // namespace msp
