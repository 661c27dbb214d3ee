#pragma once

#include <string>
#include <utility>
#include <vector>

namespace msp {

using ElementId = int;
using ElementSet = std::vector<ElementId>;  // sorted, no duplicates

// Total value order over element ids; position 0 is the best element.
struct ValueOrder {
  std::vector<ElementId> ranking;  // ranking[k] = id with rank k
  std::vector<int> pos;            // pos[id] = rank of id

  bool prefers(ElementId a, ElementId b) const { return pos[a] < pos[b]; }

  static ValueOrder from_ranking(std::vector<ElementId> ranking);
  // Higher weight wins; ties broken by lower element id.
  static ValueOrder from_weights(const std::vector<double>& w);
};

enum class MatroidKind { uniform, laminar, rank2, graphic };

struct LaminarSet {
  std::vector<ElementId> members;  // sorted
  int cap = 1;
};

struct MatroidInstance {
  MatroidKind kind = MatroidKind::uniform;
  int n = 0;
  ValueOrder order;
  std::vector<char> is_dummy;  // size n; augmentation elements

  // uniform
  int uniform_rank = 0;
  // laminar
  std::vector<LaminarSet> sets;
  // rank2
  std::vector<std::vector<ElementId>> classes;
  // graphic
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // per element endpoints
  int root = -1;                           // root vertex when augmented

  int rank() const;
  bool has_dummies() const;
  ElementSet real_elements() const;
};

// Capacity view shared by the uniform / laminar / rank-2 kinds.
struct LaminarView {
  std::vector<LaminarSet> sets;
  std::vector<std::vector<int>> sets_of;  // element -> set indices, innermost first
};
LaminarView laminar_view(const MatroidInstance& m);

bool is_independent(const MatroidInstance& m, const ElementSet& s);
int rank_of(const MatroidInstance& m, const ElementSet& s);
ElementSet opt_greedy(const MatroidInstance& m, const ElementSet& s);
bool is_improving(const MatroidInstance& m, const ElementSet& arrived, ElementId e);
bool are_parallel(const MatroidInstance& m, ElementId e, ElementId f);

// Empty result means the instance is well formed. For n <= 10 the matroid
// axioms (I1)-(I3) are checked exhaustively.
std::vector<std::string> validate_instance(const MatroidInstance& m);

// Optimum of the non-dummy part of the ground set.
ElementSet base_optimum(const MatroidInstance& m);

}  // namespace msp
