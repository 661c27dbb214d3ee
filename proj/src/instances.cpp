#include "msp/instances.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace msp {

MatroidInstance tight_laminar(int q, int r, SplitMix64& rng) {
  if (q < 1 || r < 1) throw std::invalid_argument("tight_laminar: q, r >= 1");
  MatroidInstance m;
  m.kind = MatroidKind::laminar;
  m.n = q * r;
  m.is_dummy.assign(m.n, 0);
  // Element q*(i-1)..q*i-1 forms block F_i; weights in [r-i, r-i+1).
  std::vector<double> w(m.n);
  bool distinct = false;
  while (!distinct) {
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < q; ++j) w[i * q + j] = rng.uniform(r - i - 1, r - i);
    std::vector<double> sorted = w;
    std::sort(sorted.begin(), sorted.end());
    distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }
  m.order = ValueOrder::from_weights(w);
  for (int i = 1; i <= r; ++i) {
    LaminarSet s;
    s.cap = i;
    s.members.resize(q * i);
    for (int e = 0; e < q * i; ++e) s.members[e] = e;
    m.sets.push_back(std::move(s));
  }
  return m;
}

MatroidInstance uniform_instance(int n, int r) {
  if (n < 1 || r < 1 || r > n) throw std::invalid_argument("uniform_instance: need 1 <= r <= n");
  MatroidInstance m;
  m.kind = MatroidKind::uniform;
  m.n = n;
  m.uniform_rank = r;
  m.is_dummy.assign(n, 0);
  std::vector<ElementId> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = i;
  m.order = ValueOrder::from_ranking(ids);
  return m;
}

MatroidInstance random_rank2(const std::vector<int>& class_sizes, SplitMix64& rng) {
  if (class_sizes.size() < 1) throw std::invalid_argument("random_rank2: need classes");
  MatroidInstance m;
  m.kind = MatroidKind::rank2;
  m.n = 0;
  for (int s : class_sizes) {
    if (s < 1) throw std::invalid_argument("random_rank2: class sizes >= 1");
    std::vector<ElementId> c(s);
    for (int j = 0; j < s; ++j) c[j] = m.n + j;
    m.classes.push_back(std::move(c));
    m.n += s;
  }
  m.is_dummy.assign(m.n, 0);
  std::vector<ElementId> ids(m.n);
  for (int i = 0; i < m.n; ++i) ids[i] = i;
  rng.shuffle(ids);
  m.order = ValueOrder::from_ranking(ids);
  return m;
}

namespace {

void split_recursive(MatroidInstance& m, const std::vector<ElementId>& members, int cap,
                     int depth, int branching, SplitMix64& rng) {
  if (depth <= 0 || static_cast<int>(members.size()) <= 1) return;
  int parts = 2 + static_cast<int>(rng.uniform_int(std::max(1, branching - 1)));
  parts = std::min<int>(parts, static_cast<int>(members.size()));
  // Random composition of |members| into `parts` non-empty chunks.
  std::vector<int> cut;
  std::set<long> cuts;
  while (static_cast<int>(cuts.size()) < parts - 1)
    cuts.insert(1 + rng.uniform_int(static_cast<long>(members.size()) - 1));
  cut.assign(cuts.begin(), cuts.end());
  cut.push_back(static_cast<int>(members.size()));
  int begin = 0;
  for (int end : cut) {
    std::vector<ElementId> part(members.begin() + begin, members.begin() + end);
    begin = end;
    if (static_cast<int>(part.size()) < 1) continue;
    int child_cap = 1 + static_cast<int>(rng.uniform_int(
                            std::max<long>(1, std::min<long>(cap, part.size()))));
    child_cap = std::min<int>(child_cap, std::min<int>(cap, static_cast<int>(part.size())));
    if (rng.uniform01() < 0.85) {
      LaminarSet s;
      s.members = part;
      s.cap = child_cap;
      m.sets.push_back(std::move(s));
      split_recursive(m, part, child_cap, depth - 1, branching, rng);
    } else {
      split_recursive(m, part, cap, depth - 1, branching, rng);
    }
  }
}

}  // namespace

MatroidInstance random_laminar(int n, int depth, int branching, SplitMix64& rng) {
  if (n < 1 || depth < 1 || branching < 2)
    throw std::invalid_argument("random_laminar: need n >= 1, depth >= 1, branching >= 2");
  MatroidInstance m;
  m.kind = MatroidKind::laminar;
  m.n = n;
  m.is_dummy.assign(n, 0);
  std::vector<ElementId> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  LaminarSet root;
  root.members = all;
  root.cap = 2 + static_cast<int>(rng.uniform_int(std::max(1, std::min(n, 6) - 1)));
  root.cap = std::min(root.cap, n);
  int root_cap = root.cap;
  m.sets.push_back(std::move(root));
  split_recursive(m, all, root_cap, depth, branching, rng);
  std::vector<ElementId> ids = all;
  rng.shuffle(ids);
  m.order = ValueOrder::from_ranking(ids);
  return m;
}

MatroidInstance random_graph(int vertices, int edges, bool simple, double parallel_bias,
                             SplitMix64& rng) {
  if (vertices < 3) throw std::invalid_argument("random_graph: need >= 3 vertices");
  if (edges < vertices - 1) throw std::invalid_argument("random_graph: too few edges to connect");
  long max_simple = static_cast<long>(vertices) * (vertices - 1) / 2;
  if (simple && edges > max_simple)
    throw std::invalid_argument("random_graph: too many edges for a simple graph");
  if (simple && parallel_bias > 0)
    throw std::invalid_argument("random_graph: parallel bias conflicts with simple");

  MatroidInstance m;
  m.kind = MatroidKind::graphic;
  m.vertices = vertices;
  // Random spanning tree by random attachment; tree edges are the optimum
  // candidates and receive the top of the value order.
  std::vector<int> perm(vertices);
  for (int v = 0; v < vertices; ++v) perm[v] = v;
  rng.shuffle(perm);
  std::set<std::pair<int, int>> used;
  for (int i = 1; i < vertices; ++i) {
    int u = perm[static_cast<int>(rng.uniform_int(i))];
    int v = perm[i];
    m.edges.emplace_back(std::min(u, v), std::max(u, v));
    used.insert(m.edges.back());
  }
  int tree_edges = vertices - 1;
  while (static_cast<int>(m.edges.size()) < edges) {
    if (parallel_bias > 0 && rng.uniform01() < parallel_bias) {
      int pick = static_cast<int>(rng.uniform_int(tree_edges));
      m.edges.push_back(m.edges[pick]);
      continue;
    }
    int u = static_cast<int>(rng.uniform_int(vertices));
    int v = static_cast<int>(rng.uniform_int(vertices));
    if (u == v) continue;
    auto e = std::minmax(u, v);
    if (simple && used.count(e)) continue;
    used.insert(e);
    m.edges.emplace_back(e.first, e.second);
  }
  m.n = edges;
  m.is_dummy.assign(m.n, 0);
  std::vector<ElementId> ranking;
  std::vector<ElementId> tree_ids, rest_ids;
  for (int e = 0; e < m.n; ++e) (e < tree_edges ? tree_ids : rest_ids).push_back(e);
  rng.shuffle(tree_ids);
  rng.shuffle(rest_ids);
  ranking = tree_ids;
  ranking.insert(ranking.end(), rest_ids.begin(), rest_ids.end());
  m.order = ValueOrder::from_ranking(ranking);
  return m;
}

}  // namespace msp
