#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "msp/instances.hpp"
#include "msp/matroid.hpp"
#include "msp/rng.hpp"

using namespace msp;

namespace {

MatroidInstance small_laminar() {
  // E_1 = {0,1} cap 1, E_2 = {0,1,2,3} cap 2
  MatroidInstance m;
  m.kind = MatroidKind::laminar;
  m.n = 4;
  m.is_dummy.assign(4, 0);
  m.sets.push_back({{0, 1}, 1});
  m.sets.push_back({{0, 1, 2, 3}, 2});
  m.order = ValueOrder::from_ranking({0, 1, 2, 3});
  return m;
}

MatroidInstance triangle() {
  MatroidInstance m;
  m.kind = MatroidKind::graphic;
  m.n = 3;
  m.vertices = 3;
  m.edges = {{0, 1}, {1, 2}, {0, 2}};
  m.is_dummy.assign(3, 0);
  m.order = ValueOrder::from_ranking({0, 1, 2});
  return m;
}

// Brute-force lexicographically maximal independent subset.
ElementSet brute_opt(const MatroidInstance& m, const ElementSet& s) {
  ElementSet best;
  auto better = [&](const ElementSet& a, const ElementSet& b) {
    // compare by value order positions, lexicographically
    std::vector<int> pa, pb;
    for (ElementId e : a) pa.push_back(m.order.pos[e]);
    for (ElementId e : b) pb.push_back(m.order.pos[e]);
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    return pa < pb;  // smaller positions = more valuable
  };
  int k = static_cast<int>(s.size());
  for (long mask = 0; mask < (1L << k); ++mask) {
    ElementSet sub;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1) sub.push_back(s[i]);
    if (!is_independent(m, sub)) continue;
    if (sub.size() > best.size() || (sub.size() == best.size() && better(sub, best)))
      best = sub;
  }
  return best;
}

}  // namespace

TEST_CASE("independence basics") {
  MatroidInstance lam = small_laminar();
  CHECK(is_independent(lam, {}));          // (I1)
  CHECK_FALSE(is_independent(lam, {0, 1}));  // capacity violated
  CHECK(is_independent(lam, {0, 2}));

  MatroidInstance tri = triangle();
  CHECK(is_independent(tri, {}));
  CHECK(is_independent(tri, {0, 1}));
  CHECK_FALSE(is_independent(tri, {0, 1, 2}));  // cycle

  MatroidInstance uni = uniform_instance(5, 2);
  CHECK(rank_of(uni, {0, 1, 2, 3, 4}) == 2);
  CHECK(rank_of(uni, {}) == 0);

  // path of 3 edges on 4 nodes
  MatroidInstance path;
  path.kind = MatroidKind::graphic;
  path.n = 3;
  path.vertices = 4;
  path.edges = {{0, 1}, {1, 2}, {2, 3}};
  path.is_dummy.assign(3, 0);
  path.order = ValueOrder::from_ranking({0, 1, 2});
  CHECK(rank_of(path, {0, 1, 2}) == 3);

  CHECK_THROWS_AS(is_independent(lam, {0, 9}), std::invalid_argument);
}

TEST_CASE("opt_greedy picks the lexicographic maximum") {
  MatroidInstance uni = uniform_instance(3, 2);
  CHECK(opt_greedy(uni, {0, 1, 2}) == ElementSet{0, 1});

  MatroidInstance tri = triangle();
  CHECK(opt_greedy(tri, {0, 1, 2}) == ElementSet{0, 1});

  SplitMix64 rng(20240811);
  MatroidInstance tight = tight_laminar(3, 2, rng);
  for (int trial = 0; trial < 40; ++trial) {
    ElementSet s;
    for (ElementId e = 0; e < tight.n; ++e)
      if (rng.uniform01() < 0.5) s.push_back(e);
    ElementSet fast = opt_greedy(tight, s);
    ElementSet slow = brute_opt(tight, s);
    CHECK(fast == slow);
    CHECK(static_cast<int>(fast.size()) == rank_of(tight, s));
    CHECK(is_independent(tight, fast));
  }
}

TEST_CASE("is_improving") {
  MatroidInstance uni = uniform_instance(2, 1);  // 0 beats 1
  CHECK(is_improving(uni, {1}, 0));
  CHECK_FALSE(is_improving(uni, {0}, 1));
  CHECK_THROWS_AS(is_improving(uni, {0}, 0), std::invalid_argument);

  // Monotonicity: improving w.r.t. a superset implies improving w.r.t. subsets.
  SplitMix64 rng(7);
  MatroidInstance lam = random_laminar(12, 3, 3, rng);
  for (int trial = 0; trial < 200; ++trial) {
    ElementSet big;
    ElementId e = static_cast<ElementId>(rng.uniform_int(lam.n));
    for (ElementId f = 0; f < lam.n; ++f)
      if (f != e && rng.uniform01() < 0.6) big.push_back(f);
    ElementSet small;
    for (ElementId f : big)
      if (rng.uniform01() < 0.6) small.push_back(f);
    if (is_improving(lam, big, e)) CHECK(is_improving(lam, small, e));
  }
}

TEST_CASE("are_parallel") {
  MatroidInstance g;
  g.kind = MatroidKind::graphic;
  g.n = 3;
  g.vertices = 3;
  g.edges = {{0, 1}, {1, 0}, {1, 2}};
  g.is_dummy.assign(3, 0);
  g.order = ValueOrder::from_ranking({0, 1, 2});
  CHECK(are_parallel(g, 0, 1));
  CHECK_FALSE(are_parallel(g, 0, 2));
  CHECK(are_parallel(g, 1, 0));  // symmetry

  SplitMix64 rng(3);
  MatroidInstance r2 = random_rank2({2, 3}, rng);
  CHECK(are_parallel(r2, 0, 1));
  CHECK_FALSE(are_parallel(r2, 0, 2));
  CHECK_THROWS_AS(are_parallel(r2, 1, 1), std::invalid_argument);

  // laminar 2-element cap-1 set makes its members parallel
  MatroidInstance lam = small_laminar();
  CHECK(are_parallel(lam, 0, 1));
  CHECK_FALSE(are_parallel(lam, 0, 2));
}

TEST_CASE("rank-2 parallelism is an equivalence relation") {
  SplitMix64 rng(13);
  MatroidInstance r2 = random_rank2({3, 1, 4}, rng);
  for (ElementId a = 0; a < r2.n; ++a)
    for (ElementId b = 0; b < r2.n; ++b) {
      if (a == b) continue;
      CHECK(are_parallel(r2, a, b) == are_parallel(r2, b, a));
      for (ElementId c = 0; c < r2.n; ++c) {
        if (c == a || c == b) continue;
        if (are_parallel(r2, a, b) && are_parallel(r2, b, c))
          CHECK(are_parallel(r2, a, c));
      }
    }
}

TEST_CASE("validate_instance") {
  MatroidInstance lam = small_laminar();
  CHECK(validate_instance(lam).empty());

  MatroidInstance crossing = lam;
  crossing.sets.push_back({{1, 2}, 1});  // crosses {0,1}
  CHECK_FALSE(validate_instance(crossing).empty());

  MatroidInstance loop = triangle();
  loop.edges[0] = {1, 1};
  CHECK_FALSE(validate_instance(loop).empty());

  SplitMix64 rng(99);
  for (int i = 0; i < 6; ++i) {
    MatroidInstance m = random_laminar(8, 2, 3, rng);
    CHECK(validate_instance(m).empty());  // includes exhaustive (I1)-(I3)
  }
}

TEST_CASE("hereditary and exchange axioms, small instances") {
  SplitMix64 rng(555);
  std::vector<MatroidInstance> samples;
  samples.push_back(uniform_instance(6, 3));
  samples.push_back(small_laminar());
  samples.push_back(triangle());
  samples.push_back(random_rank2({2, 2, 1}, rng));
  for (const auto& m : samples) {
    for (long x = 0; x < (1L << m.n); ++x) {
      ElementSet xs;
      for (int e = 0; e < m.n; ++e)
        if (x >> e & 1) xs.push_back(e);
      if (!is_independent(m, xs)) continue;
      // hereditary
      for (std::size_t drop = 0; drop < xs.size(); ++drop) {
        ElementSet sub = xs;
        sub.erase(sub.begin() + drop);
        CHECK(is_independent(m, sub));
      }
      // exchange against every larger independent set
      for (long y = 0; y < (1L << m.n); ++y) {
        ElementSet ys;
        for (int e = 0; e < m.n; ++e)
          if (y >> e & 1) ys.push_back(e);
        if (ys.size() <= xs.size() || !is_independent(m, ys)) continue;
        bool found = false;
        for (ElementId e : ys) {
          if (std::binary_search(xs.begin(), xs.end(), e)) continue;
          ElementSet ext = xs;
          ext.insert(std::lower_bound(ext.begin(), ext.end(), e), e);
          if (is_independent(m, ext)) {
            found = true;
            break;
          }
        }
        CHECK(found);
      }
    }
  }
}
