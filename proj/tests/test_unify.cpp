#include <doctest.h>

#include <random>

#include "selfsim/unify.hpp"

using namespace selfsim;

namespace {

TreePattern V(int i) { return TreePattern::var(i); }
TreePattern L() { return TreePattern::leaf(); }
TreePattern P(const TreePattern& a, const TreePattern& b) {
  return TreePattern::pair(a, b);
}

TreePattern random_pattern(std::mt19937_64& rng, int depth, int n_vars) {
  if (depth == 0 || rng() % 3 == 0)
    return rng() % 2 ? L() : V(static_cast<int>(rng() % n_vars));
  return P(random_pattern(rng, depth - 1, n_vars),
           random_pattern(rng, depth - 1, n_vars));
}

TreePattern random_ground(std::mt19937_64& rng, int depth) {
  if (depth == 0 || rng() % 2 == 0) return L();
  return P(random_ground(rng, depth - 1), random_ground(rng, depth - 1));
}

}  // namespace

TEST_CASE("unify simple binding") {
  auto sub = unify({{V(0), P(L(), L())}});
  REQUIRE(sub.has_value());
  CHECK(sub->apply(V(0)) == P(L(), L()));
}

TEST_CASE("the associativity shapes do not unify") {
  // A*(B*C) = (A*B)*C forces A = A*B: occurs-check failure.
  auto sub = unify({{P(V(0), P(V(1), V(2))), P(P(V(0), V(1)), V(2))}});
  CHECK(!sub.has_value());
}

TEST_CASE("empty system yields the empty substitution") {
  auto sub = unify({});
  REQUIRE(sub.has_value());
  CHECK(sub->bindings().empty());
}

TEST_CASE("constructor clash fails") {
  CHECK(!unify({{L(), P(L(), L())}}).has_value());
  CHECK(!unify({{V(0), L()}, {V(0), P(L(), L())}}).has_value());
}

TEST_CASE("unifiers actually unify and are idempotent") {
  std::mt19937_64 rng(7);
  int solved = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<PatternEq> eqs;
    int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i)
      eqs.push_back({random_pattern(rng, 3, 4), random_pattern(rng, 3, 4)});
    auto sub = unify(eqs);
    if (!sub) continue;
    ++solved;
    for (const PatternEq& eq : eqs) {
      TreePattern l = sub->apply(eq.lhs);
      TreePattern r = sub->apply(eq.rhs);
      CHECK(l == r);
      CHECK(sub->apply(l) == l);  // idempotent
    }
  }
  CHECK(solved > 50);  // the generator must exercise the success path
}

TEST_CASE("most general: instances of a pattern unify with it") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    TreePattern p = random_pattern(rng, 3, 3);
    // Ground instance via an arbitrary substitution.
    Substitution inst;
    for (int v = 0; v < 3; ++v) inst.bind(v, random_ground(rng, 2));
    TreePattern q = inst.apply(p);
    auto sub = unify({{p, q}});
    REQUIRE(sub.has_value());
    CHECK(sub->apply(p) == sub->apply(q));
  }
}
