#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/eval.hpp"

using namespace selfsim;

namespace {

Tree x() { return Tree::leaf(); }
Tree P(const Tree& l, const Tree& r) { return Tree::pair(l, r); }

}  // namespace

TEST_CASE("evaluation of the constants") {
  CHECK(eval_monoid_term(MonoidTerm::alpha()) == alpha_map());
  CHECK(eval_monoid_term(MonoidTerm::compose(MonoidTerm::alpha(),
                                             MonoidTerm::alpha_inv())) ==
        identity_map());
  CHECK(eval_monoid_term(MonoidTerm::star(MonoidTerm::one(),
                                          MonoidTerm::one())) ==
        identity_map());
}

TEST_CASE("the expanded associator evaluates to the associator") {
  CHECK(eval_monoid_term(flatten(alpha_expansion())) == alpha_map());
  CHECK(eval_arrow_term(alpha_expansion()) == alpha_map());
}

TEST_CASE("dropping the associator from the expansion breaks it") {
  // Same shape as alpha_expansion with the middle rotation removed: the
  // remaining code/decode shell evaluates to the identity, not to alpha.
  const Tree xx = P(x(), x());
  ArrowTerm shell = ArrowTerm::compose(
      ArrowTerm::code(xx),
      ArrowTerm::compose(
          ArrowTerm::tensor(ArrowTerm::code(xx), ArrowTerm::id(x())),
          ArrowTerm::compose(
              ArrowTerm::id(P(xx, x())),
              ArrowTerm::compose(
                  ArrowTerm::tensor(ArrowTerm::id(x()), ArrowTerm::decode(xx)),
                  ArrowTerm::decode(xx)))));
  CHECK(eval_arrow_term(shell) != alpha_map());
  auto witness = refute({flatten(shell)}, {MonoidTerm::alpha()});
  REQUIRE(witness.has_value());
  CHECK(*witness == 1);
}

TEST_CASE("atoms resolve through the environment") {
  AtomEnv env;
  env.bind("f", sigma_map());
  CHECK(eval_monoid_term(MonoidTerm::atom("f"), env) == sigma_map());
  CHECK_THROWS_AS(eval_monoid_term(MonoidTerm::atom("g"), env),
                  MissingAtomBinding);
  ArrowTerm typed = ArrowTerm::atom("f", x(), x());
  CHECK(eval_arrow_term(typed, env) == sigma_map());
}

TEST_CASE("typed evaluation equals flattened evaluation") {
  std::mt19937_64 rng(31);
  AtomEnv env;
  for (int i = 0; i < 40; ++i)
    env.bind("f" + std::to_string(i), random_map(rng(), 4));
  for (int trial = 0; trial < 150; ++trial) {
    Tree s = testgen::random_tree(rng, 4);
    Tree t = testgen::random_tree(rng, 4);
    std::vector<std::string> atoms;
    ArrowTerm f = testgen::random_atom_term(rng, s, t, atoms);
    if (atoms.size() > 40) continue;
    CHECK(eval_arrow_term(f, env) == eval_monoid_term(flatten(f), env));
  }
}

TEST_CASE("evaluation composes functorially") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    Tree a = testgen::random_tree(rng, 4);
    Tree b = testgen::random_tree(rng, 4);
    Tree c = testgen::random_tree(rng, 4);
    ArrowTerm f = testgen::random_canonical_term(rng, a, b);
    ArrowTerm g = testgen::random_canonical_term(rng, b, c);
    CHECK(eval_monoid_term(flatten(ArrowTerm::compose(g, f))) ==
          compose(eval_monoid_term(flatten(g)),
                  eval_monoid_term(flatten(f))));
  }
}

TEST_CASE("splitting laws: code against decode is the identity") {
  for (int r = 1; r <= 5; ++r)
    for (const Tree& u : enumerate_trees(r)) {
      CHECK(eval_monoid_term(flatten(ArrowTerm::compose(
                code_term(u), decode_term(u)))) == identity_map());
      CHECK(eval_monoid_term(flatten(ArrowTerm::compose(
                decode_term(u), code_term(u)))) == identity_map());
    }
}

TEST_CASE("refute finds the least distinguishing input") {
  CHECK(refute({MonoidTerm::alpha()}, {MonoidTerm::one()}) == 1);
  CHECK(!refute({MonoidTerm::alpha()}, {MonoidTerm::alpha()}).has_value());

  AtomEnv env;
  env.bind("f", sigma_map());
  // 1 star sigma fixes the evens; sigma itself does not fix 0.
  auto w = refute({MonoidTerm::star(MonoidTerm::one(), MonoidTerm::atom("f"))},
                  {MonoidTerm::atom("f")}, env);
  REQUIRE(w.has_value());
  CHECK(*w == 0);
}

TEST_CASE("paths compose in traversal order") {
  // [alpha, inv(alpha)] traverses alpha first: the composite is trivial.
  CHECK(eval_monoid_path({MonoidTerm::alpha(), MonoidTerm::alpha_inv()}) ==
        identity_map());
  CHECK(eval_monoid_path({MonoidTerm::alpha(), MonoidTerm::alpha()}) ==
        compose(alpha_map(), alpha_map()));
}
