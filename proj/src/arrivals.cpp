#include "msp/arrivals.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace msp {

namespace {
constexpr int kCopyCap = 10000;
}

ArrivalSample sample_arrivals(const MatroidInstance& m, SplitMix64& rng) {
  ArrivalSample s;
  s.t.resize(m.n);
  for (int e = 0; e < m.n; ++e) s.t[e] = rng.uniform01();
  // Collisions have measure zero but finite floats can produce them.
  bool ok = false;
  while (!ok) {
    ok = true;
    std::vector<double> sorted = s.t;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i] == sorted[i - 1]) {
        ok = false;
        for (int e = 0; e < m.n; ++e)
          if (s.t[e] == sorted[i]) s.t[e] = rng.uniform01();
        break;
      }
    }
  }
  return s;
}

std::vector<ReplayItem> time_order(const ArrivalSample& sample) {
  std::vector<ReplayItem> items(sample.t.size());
  for (int e = 0; e < static_cast<int>(sample.t.size()); ++e)
    items[e] = {sample.t[e], e};
  std::sort(items.begin(), items.end(),
            [](const ReplayItem& a, const ReplayItem& b) { return a.t < b.t; });
  return items;
}

AugmentedInstance no_augment(const MatroidInstance& base) {
  AugmentedInstance aug;
  aug.matroid = base;
  aug.mode = AugmentMode::none;
  aug.base_n = base.n;
  return aug;
}

namespace {

// Appends one dummy copy of `target`; the copy joins every laminar set (or
// the rank-2 class) containing its target, which makes it matroid-parallel.
void add_copy(MatroidInstance& m, ElementId target) {
  ElementId id = m.n++;
  m.is_dummy.push_back(1);
  m.order.ranking.push_back(id);
  m.order.pos.push_back(static_cast<int>(m.order.ranking.size()) - 1);
  switch (m.kind) {
    case MatroidKind::laminar:
      for (auto& s : m.sets)
        if (std::binary_search(s.members.begin(), s.members.end(), target))
          s.members.push_back(id);  // appended ids are increasing, stays sorted
      break;
    case MatroidKind::rank2:
      for (auto& c : m.classes)
        if (std::find(c.begin(), c.end(), target) != c.end()) {
          c.push_back(id);
          break;
        }
      break;
    default:
      throw std::logic_error("add_copy: unsupported kind");
  }
}

// Converts a uniform instance into its laminar capacity form so that parallel
// copies (cap-1 classes) can be attached.
MatroidInstance laminarize(const MatroidInstance& base) {
  MatroidInstance m = base;
  m.kind = MatroidKind::laminar;
  LaminarSet whole;
  whole.members.resize(m.n);
  for (int i = 0; i < m.n; ++i) whole.members[i] = i;
  whole.cap = base.uniform_rank;
  m.sets.clear();
  m.sets.push_back(std::move(whole));
  return m;
}

}  // namespace

AugmentedInstance augment(const MatroidInstance& base, double p, SplitMix64& rng) {
  if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("augment: p must be in (0,1)");
  std::vector<std::vector<double>> copy_times;
  int targets = base.kind == MatroidKind::graphic
                    ? base.vertices
                    : static_cast<int>(base_optimum(base).size());
  copy_times.resize(targets);
  for (auto& times : copy_times) {
    while (true) {
      if (static_cast<int>(times.size()) >= kCopyCap)
        throw std::runtime_error("augment: copy cap exceeded");
      double t = rng.uniform01();
      times.push_back(t);
      if (t < p) break;
    }
  }
  return augment_from_copy_times(base, p, copy_times, false);
}

AugmentedInstance augment_from_copy_times(const MatroidInstance& base, double p,
                                          const std::vector<std::vector<double>>& copy_times,
                                          bool truncate) {
  if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("augment: p must be in (0,1)");
  if (base.has_dummies()) throw std::invalid_argument("augment: instance already augmented");

  AugmentedInstance aug;
  aug.mode = AugmentMode::record;
  aug.base_n = base.n;

  auto copies_of = [&](int target) {
    std::vector<double> times = copy_times.at(target);
    if (truncate) {
      std::size_t keep = 0;
      while (keep < times.size() && times[keep] >= p) ++keep;
      if (keep == times.size())
        throw std::invalid_argument("augment: no copy below p for a target");
      times.resize(keep + 1);
    }
    return times;
  };

  if (base.kind == MatroidKind::graphic) {
    if (static_cast<int>(copy_times.size()) != base.vertices)
      throw std::invalid_argument("augment: one copy list per vertex required");
    MatroidInstance m = base;
    int w = m.vertices;  // new root vertex
    m.vertices += 1;
    m.root = w;
    for (int v = 0; v < w; ++v) {
      for (double t : copies_of(v)) {
        ElementId id = m.n++;
        m.is_dummy.push_back(1);
        m.edges.emplace_back(w, v);
        m.order.ranking.push_back(id);
        m.order.pos.push_back(static_cast<int>(m.order.ranking.size()) - 1);
        aug.dummy_times.push_back(t);
        aug.dummy_target.push_back(v);
      }
    }
    aug.matroid = std::move(m);
    return aug;
  }

  MatroidInstance m = base.kind == MatroidKind::uniform ? laminarize(base) : base;
  ElementSet b0 = base_optimum(m);
  std::sort(b0.begin(), b0.end(),
            [&](ElementId a, ElementId b) { return m.order.prefers(a, b); });
  if (copy_times.size() != b0.size())
    throw std::invalid_argument("augment: one copy list per basis element required");

  // Parallel class per basis element: a cap-1 laminar set holding the target
  // together with its copies. Rank-2 classes already play that role.
  if (m.kind == MatroidKind::laminar) {
    for (ElementId b : b0) {
      LaminarSet s;
      s.members = {b};
      s.cap = 1;
      m.sets.push_back(std::move(s));
    }
  }

  for (std::size_t i = 0; i < b0.size(); ++i) {
    for (double t : copies_of(static_cast<int>(i))) {
      add_copy(m, b0[i]);
      aug.dummy_times.push_back(t);
      aug.dummy_target.push_back(b0[i]);
    }
  }
  aug.matroid = std::move(m);
  return aug;
}

MatroidInstance add_fixed_dummies(const MatroidInstance& base) {
  if (base.has_dummies()) throw std::invalid_argument("instance already has dummies");
  if (base.kind == MatroidKind::graphic) {
    MatroidInstance m = base;
    int w = m.vertices;
    m.vertices += 1;
    m.root = w;
    for (int v = 0; v < w; ++v) {
      ElementId id = m.n++;
      m.is_dummy.push_back(1);
      m.edges.emplace_back(w, v);
      m.order.ranking.push_back(id);
      m.order.pos.push_back(static_cast<int>(m.order.ranking.size()) - 1);
    }
    return m;
  }
  MatroidInstance m = base.kind == MatroidKind::uniform ? laminarize(base) : base;
  ElementSet b0 = base_optimum(m);
  std::sort(b0.begin(), b0.end(),
            [&](ElementId a, ElementId b) { return m.order.prefers(a, b); });
  if (m.kind == MatroidKind::laminar) {
    for (ElementId b : b0) {
      LaminarSet s;
      s.members = {b};
      s.cap = 1;
      m.sets.push_back(std::move(s));
    }
  }
  for (ElementId b : b0) add_copy(m, b);
  return m;
}

ArrivalSample arrivals_for(const AugmentedInstance& aug, SplitMix64& rng) {
  const MatroidInstance& m = aug.matroid;
  ArrivalSample s;
  s.t.resize(m.n);
  for (int e = 0; e < aug.base_n; ++e) s.t[e] = rng.uniform01();
  if (aug.mode == AugmentMode::record) {
    for (int d = 0; d < static_cast<int>(aug.dummy_times.size()); ++d)
      s.t[aug.base_n + d] = aug.dummy_times[d];
  } else {
    for (int e = aug.base_n; e < m.n; ++e) s.t[e] = rng.uniform01();
  }
  // Resolve collisions (measure zero, but finite floats can collide) by
  // redrawing fresh real times.
  while (true) {
    std::vector<double> sorted = s.t;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup == sorted.end()) break;
    bool fixed = false;
    for (int e = 0; e < aug.base_n && !fixed; ++e)
      if (s.t[e] == *dup) {
        s.t[e] = rng.uniform01();
        fixed = true;
      }
    if (!fixed) break;  // collision among pre-drawn dummy times only
  }
  return s;
}

OptTracker::OptTracker(const MatroidInstance& m) : m_(&m) {
  if (m.kind == MatroidKind::graphic) {
    adj_.assign(m.vertices, {});
    in_edge_.assign(m.vertices, -1);
  } else {
    view_ = laminar_view(m);
    count_.assign(view_.sets.size(), 0);
  }
}

bool OptTracker::arrive(ElementId e) {
  return m_->kind == MatroidKind::graphic ? arrive_graphic(e) : arrive_laminar(e);
}

bool OptTracker::arrive_laminar(ElementId e) {
  const auto& order = m_->order;
  // An arriving element is improving iff no capacity of a set containing it
  // is already filled by strictly better OPT members.
  bool improving = true;
  for (int s : view_.sets_of[e]) {
    int better = 0;
    for (ElementId f : opt_) {
      if (!order.prefers(f, e)) break;  // opt_ sorted by value
      if (std::binary_search(view_.sets[s].members.begin(), view_.sets[s].members.end(), f))
        ++better;
    }
    if (better >= view_.sets[s].cap) {
      improving = false;
      break;
    }
  }
  if (!improving) return false;

  auto it = std::lower_bound(opt_.begin(), opt_.end(), e,
                             [&](ElementId a, ElementId b) { return order.prefers(a, b); });
  opt_.insert(it, e);
  for (int s : view_.sets_of[e]) ++count_[s];
  // Smallest violated set containing e (sets_of is innermost-first).
  for (int s : view_.sets_of[e]) {
    if (count_[s] <= view_.sets[s].cap) continue;
    for (auto rit = opt_.rbegin(); rit != opt_.rend(); ++rit) {
      ElementId worst = *rit;
      if (worst != e && std::binary_search(view_.sets[s].members.begin(),
                                           view_.sets[s].members.end(), worst)) {
        for (int sw : view_.sets_of[worst]) --count_[sw];
        opt_.erase(std::next(rit).base());
        break;
      }
    }
    break;
  }
  return true;
}

bool OptTracker::arrive_graphic(ElementId e) {
  auto [u, v] = m_->edges[e];
  const auto& order = m_->order;
  last_arc_.reset();

  // BFS for the u-v path in the current forest.
  std::vector<int> prev_vertex(m_->vertices, -1);
  std::vector<ElementId> prev_edge(m_->vertices, -1);
  std::vector<int> stack{u};
  prev_vertex[u] = u;
  bool connected = false;
  while (!stack.empty() && !connected) {
    int x = stack.back();
    stack.pop_back();
    for (auto [y, f] : adj_[x]) {
      if (prev_vertex[y] != -1) continue;
      prev_vertex[y] = x;
      prev_edge[y] = f;
      if (y == v) {
        connected = true;
        break;
      }
      stack.push_back(y);
    }
  }

  ElementId evict = -1;
  if (connected) {
    ElementId worst = -1;
    for (int x = v; x != u; x = prev_vertex[x]) {
      ElementId f = prev_edge[x];
      if (worst == -1 || order.prefers(worst, f)) worst = f;
    }
    if (!order.prefers(e, worst)) return false;
    evict = worst;
  }

  if (evict >= 0) {
    auto [a, b] = m_->edges[evict];
    auto drop = [&](int x, int y) {
      auto& lst = adj_[x];
      for (std::size_t i = 0; i < lst.size(); ++i)
        if (lst[i].second == evict && lst[i].first == y) {
          lst[i] = lst.back();
          lst.pop_back();
          return;
        }
    };
    drop(a, b);
    drop(b, a);
    opt_.erase(std::find(opt_.begin(), opt_.end(), evict));
  }
  adj_[u].emplace_back(v, e);
  adj_[v].emplace_back(u, e);
  auto it = std::lower_bound(opt_.begin(), opt_.end(), e,
                             [&](ElementId a, ElementId b) { return order.prefers(a, b); });
  opt_.insert(it, e);
  if (m_->root >= 0) rebuild_arborescence(e);
  return true;
}

void OptTracker::rebuild_arborescence(ElementId arrived) {
  int root = m_->root;
  std::fill(in_edge_.begin(), in_edge_.end(), -1);
  std::vector<char> seen(m_->vertices, 0);
  std::vector<int> stack{root};
  seen[root] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (auto [y, f] : adj_[x]) {
      if (seen[y]) continue;
      seen[y] = 1;
      in_edge_[y] = f;
      stack.push_back(y);
    }
  }
  auto [u, v] = m_->edges[arrived];
  if (in_edge_[v] == arrived)
    last_arc_ = Arc{u, v, arrived};
  else if (in_edge_[u] == arrived)
    last_arc_ = Arc{v, u, arrived};
  else
    last_arc_.reset();  // component not reachable from the root yet
}

ImprovingTrace improving_trace(const AugmentedInstance& aug, const ArrivalSample& sample) {
  const MatroidInstance& m = aug.matroid;
  if (m.kind == MatroidKind::graphic && m.root < 0)
    throw std::logic_error("improving_trace: graphic trace requires an augmented instance");
  if (static_cast<int>(sample.t.size()) != m.n)
    throw std::invalid_argument("improving_trace: sample size mismatch");

  ImprovingTrace trace;
  trace.instance = &aug.matroid;
  OptTracker tracker(m);
  ElementSet before;
  for (const ReplayItem& item : time_order(sample)) {
    if (!tracker.arrive(item.e)) continue;
    TraceRecord rec;
    rec.t = item.t;
    rec.elem = item.e;
    rec.opt_before = before;
    rec.opt_after = tracker.opt();
    std::sort(rec.opt_after.begin(), rec.opt_after.end());
    if (m.kind == MatroidKind::graphic) {
      rec.arc = tracker.last_arc();
      rec.in_edge = tracker.in_edge();
    }
    before = rec.opt_after;
    trace.records.push_back(std::move(rec));
  }
  return trace;
}

ImprovingStats improving_stats(const ImprovingTrace& trace, double a, double b) {
  if (!(0.0 <= a && a < b && b <= 1.0))
    throw std::invalid_argument("improving_stats: need 0 <= a < b <= 1");
  ImprovingStats out;
  for (const TraceRecord& rec : trace.records) {
    if (rec.t < b) out.last_before_b = rec.t;
    if (rec.t >= a && rec.t < b) ++out.count;
  }
  return out;
}

}  // namespace msp
