#include "msp/matroid.hpp"

#include <algorithm>
#include <stdexcept>

#include "msp/union_find.hpp"

namespace msp {

namespace {

void check_set(const MatroidInstance& m, const ElementSet& s) {
  ElementId prev = -1;
  for (ElementId e : s) {
    if (e < 0 || e >= m.n) throw std::invalid_argument("element id out of range");
    if (e <= prev) throw std::invalid_argument("element set must be sorted and duplicate-free");
    prev = e;
  }
}

// Greedy scan in decreasing value order, keeping elements that preserve
// independence. Works for every kind and is the reference optimum.
ElementSet greedy_scan(const MatroidInstance& m, const std::vector<char>& present) {
  ElementSet out;
  if (m.kind == MatroidKind::graphic) {
    UnionFind uf(m.vertices + 1);
    for (ElementId e : m.order.ranking) {
      if (!present[e]) continue;
      auto [u, v] = m.edges[e];
      if (uf.unite(u, v)) out.push_back(e);
    }
  } else {
    LaminarView view = laminar_view(m);
    std::vector<int> count(view.sets.size(), 0);
    for (ElementId e : m.order.ranking) {
      if (!present[e]) continue;
      bool ok = true;
      for (int s : view.sets_of[e]) {
        if (count[s] >= view.sets[s].cap) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (int s : view.sets_of[e]) ++count[s];
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ValueOrder ValueOrder::from_ranking(std::vector<ElementId> ranking) {
  ValueOrder o;
  o.ranking = std::move(ranking);
  o.pos.assign(o.ranking.size(), -1);
  for (int k = 0; k < static_cast<int>(o.ranking.size()); ++k) o.pos[o.ranking[k]] = k;
  return o;
}

ValueOrder ValueOrder::from_weights(const std::vector<double>& w) {
  std::vector<ElementId> ids(w.size());
  for (int i = 0; i < static_cast<int>(w.size()); ++i) ids[i] = i;
  std::sort(ids.begin(), ids.end(), [&](ElementId a, ElementId b) {
    if (w[a] != w[b]) return w[a] > w[b];
    return a < b;
  });
  return from_ranking(ids);
}

bool MatroidInstance::has_dummies() const {
  for (char d : is_dummy)
    if (d) return true;
  return false;
}

ElementSet MatroidInstance::real_elements() const {
  ElementSet out;
  for (ElementId e = 0; e < n; ++e)
    if (!is_dummy[e]) out.push_back(e);
  return out;
}

int MatroidInstance::rank() const {
  ElementSet all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return rank_of(*this, all);
}

LaminarView laminar_view(const MatroidInstance& m) {
  LaminarView view;
  switch (m.kind) {
    case MatroidKind::uniform: {
      LaminarSet whole;
      whole.members.resize(m.n);
      for (int i = 0; i < m.n; ++i) whole.members[i] = i;
      whole.cap = m.uniform_rank;
      view.sets.push_back(std::move(whole));
      break;
    }
    case MatroidKind::laminar:
      view.sets = m.sets;
      break;
    case MatroidKind::rank2: {
      for (const auto& c : m.classes) {
        LaminarSet s;
        s.members = c;
        std::sort(s.members.begin(), s.members.end());
        s.cap = 1;
        view.sets.push_back(std::move(s));
      }
      LaminarSet whole;
      whole.members.resize(m.n);
      for (int i = 0; i < m.n; ++i) whole.members[i] = i;
      whole.cap = 2;
      view.sets.push_back(std::move(whole));
      break;
    }
    case MatroidKind::graphic:
      throw std::logic_error("laminar_view: graphic matroids have no capacity view");
  }
  view.sets_of.assign(m.n, {});
  std::vector<int> order(view.sets.size());
  for (int s = 0; s < static_cast<int>(view.sets.size()); ++s) order[s] = s;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return view.sets[a].members.size() < view.sets[b].members.size();
  });
  for (int s : order)
    for (ElementId e : view.sets[s].members) view.sets_of[e].push_back(s);
  return view;
}

bool is_independent(const MatroidInstance& m, const ElementSet& s) {
  check_set(m, s);
  if (m.kind == MatroidKind::graphic) {
    UnionFind uf(m.vertices + 1);
    for (ElementId e : s) {
      auto [u, v] = m.edges[e];
      if (!uf.unite(u, v)) return false;
    }
    return true;
  }
  LaminarView view = laminar_view(m);
  std::vector<int> count(view.sets.size(), 0);
  for (ElementId e : s)
    for (int idx : view.sets_of[e])
      if (++count[idx] > view.sets[idx].cap) return false;
  return true;
}

int rank_of(const MatroidInstance& m, const ElementSet& s) {
  check_set(m, s);
  std::vector<char> present(m.n, 0);
  for (ElementId e : s) present[e] = 1;
  return static_cast<int>(greedy_scan(m, present).size());
}

ElementSet opt_greedy(const MatroidInstance& m, const ElementSet& s) {
  check_set(m, s);
  std::vector<char> present(m.n, 0);
  for (ElementId e : s) present[e] = 1;
  return greedy_scan(m, present);
}

bool is_improving(const MatroidInstance& m, const ElementSet& arrived, ElementId e) {
  check_set(m, arrived);
  if (e < 0 || e >= m.n) throw std::invalid_argument("element id out of range");
  if (std::binary_search(arrived.begin(), arrived.end(), e))
    throw std::invalid_argument("is_improving: element already arrived");
  std::vector<char> present(m.n, 0);
  for (ElementId f : arrived) present[f] = 1;
  present[e] = 1;
  ElementSet opt = greedy_scan(m, present);
  return std::binary_search(opt.begin(), opt.end(), e);
}

bool are_parallel(const MatroidInstance& m, ElementId e, ElementId f) {
  if (e == f) throw std::invalid_argument("are_parallel: elements must differ");
  if (e < 0 || e >= m.n || f < 0 || f >= m.n)
    throw std::invalid_argument("element id out of range");
  switch (m.kind) {
    case MatroidKind::rank2: {
      for (const auto& c : m.classes) {
        bool he = std::find(c.begin(), c.end(), e) != c.end();
        bool hf = std::find(c.begin(), c.end(), f) != c.end();
        if (he || hf) return he && hf;
      }
      return false;
    }
    case MatroidKind::graphic: {
      auto a = std::minmax(m.edges[e].first, m.edges[e].second);
      auto b = std::minmax(m.edges[f].first, m.edges[f].second);
      return a == b;
    }
    default: {
      ElementSet pair{std::min(e, f), std::max(e, f)};
      return rank_of(m, pair) == 1;
    }
  }
}

ElementSet base_optimum(const MatroidInstance& m) {
  std::vector<char> present(m.n, 0);
  for (ElementId e = 0; e < m.n; ++e) present[e] = !m.is_dummy[e];
  return greedy_scan(m, present);
}

namespace {

bool nested_or_disjoint(const LaminarSet& a, const LaminarSet& b) {
  std::vector<ElementId> inter;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                        b.members.end(), std::back_inserter(inter));
  if (inter.empty()) return true;
  return inter.size() == a.members.size() || inter.size() == b.members.size();
}

void check_axioms(const MatroidInstance& m, std::vector<std::string>& out) {
  int n = m.n;
  std::vector<char> indep(std::size_t(1) << n, 0);
  for (std::size_t mask = 0; mask < indep.size(); ++mask) {
    ElementSet s;
    for (int e = 0; e < n; ++e)
      if (mask >> e & 1) s.push_back(e);
    indep[mask] = is_independent(m, s);
  }
  if (!indep[0]) out.push_back("axiom I1: empty set is dependent");
  for (std::size_t mask = 0; mask < indep.size(); ++mask) {
    if (!indep[mask]) continue;
    for (int e = 0; e < n; ++e) {
      if ((mask >> e & 1) && !indep[mask ^ (std::size_t(1) << e)]) {
        out.push_back("axiom I2: subset of an independent set is dependent");
        return;
      }
    }
  }
  for (std::size_t x = 0; x < indep.size(); ++x) {
    if (!indep[x]) continue;
    for (std::size_t y = 0; y < indep.size(); ++y) {
      if (!indep[y] || __builtin_popcountll(x) >= __builtin_popcountll(y)) continue;
      bool found = false;
      for (int e = 0; e < n && !found; ++e)
        if ((y >> e & 1) && !(x >> e & 1) && indep[x | (std::size_t(1) << e)]) found = true;
      if (!found) {
        out.push_back("axiom I3: exchange fails");
        return;
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate_instance(const MatroidInstance& m) {
  std::vector<std::string> out;
  if (m.n < 0) {
    out.push_back("negative element count");
    return out;
  }
  if (static_cast<int>(m.order.ranking.size()) != m.n ||
      static_cast<int>(m.order.pos.size()) != m.n) {
    out.push_back("value order size mismatch");
    return out;
  }
  std::vector<char> seen(m.n, 0);
  for (ElementId e : m.order.ranking) {
    if (e < 0 || e >= m.n || seen[e]) {
      out.push_back("value order is not a permutation");
      return out;
    }
    seen[e] = 1;
  }
  for (int k = 0; k < m.n; ++k)
    if (m.order.pos[m.order.ranking[k]] != k) {
      out.push_back("value order positions inconsistent");
      return out;
    }
  if (static_cast<int>(m.is_dummy.size()) != m.n) {
    out.push_back("dummy flags size mismatch");
    return out;
  }
  // Dummies rank strictly below all real elements.
  bool dummy_seen = false;
  for (ElementId e : m.order.ranking) {
    if (m.is_dummy[e]) {
      dummy_seen = true;
    } else if (dummy_seen) {
      out.push_back("dummy element ranked above a real element");
      break;
    }
  }

  switch (m.kind) {
    case MatroidKind::uniform:
      if (m.uniform_rank < 1) out.push_back("uniform rank must be >= 1");
      break;
    case MatroidKind::laminar: {
      for (const auto& s : m.sets) {
        if (s.cap < 1) out.push_back("laminar cap must be >= 1");
        if (s.members.empty()) out.push_back("empty laminar set");
        for (std::size_t i = 0; i < s.members.size(); ++i) {
          ElementId e = s.members[i];
          if (e < 0 || e >= m.n) out.push_back("laminar member out of range");
          if (i > 0 && s.members[i] <= s.members[i - 1])
            out.push_back("laminar members must be sorted and unique");
        }
      }
      for (std::size_t i = 0; i < m.sets.size(); ++i)
        for (std::size_t j = i + 1; j < m.sets.size(); ++j)
          if (!nested_or_disjoint(m.sets[i], m.sets[j])) {
            out.push_back("laminar family has crossing sets");
            j = m.sets.size();
            i = m.sets.size();
          }
      break;
    }
    case MatroidKind::rank2: {
      std::vector<char> covered(m.n, 0);
      for (const auto& c : m.classes) {
        if (c.empty()) out.push_back("empty parallel class");
        for (ElementId e : c) {
          if (e < 0 || e >= m.n || covered[e]) {
            out.push_back("rank-2 classes must partition the ground set");
            break;
          }
          covered[e] = 1;
        }
      }
      for (int e = 0; e < m.n; ++e)
        if (!covered[e]) {
          out.push_back("rank-2 classes must partition the ground set");
          break;
        }
      break;
    }
    case MatroidKind::graphic: {
      if (m.vertices < 1) out.push_back("graphic instance needs vertices");
      if (static_cast<int>(m.edges.size()) != m.n) out.push_back("edge list size mismatch");
      for (const auto& [u, v] : m.edges) {
        if (u < 0 || u >= m.vertices || v < 0 || v >= m.vertices)
          out.push_back("edge endpoint out of range");
        if (u == v) out.push_back("loop edge rejected");
      }
      if (m.root >= m.vertices) out.push_back("root vertex out of range");
      break;
    }
  }
  if (!out.empty()) return out;
  if (m.rank() < 1) out.push_back("instance rank must be >= 1");
  if (m.n <= 10 && out.empty()) check_axioms(m, out);
  return out;
}

}  // namespace msp
