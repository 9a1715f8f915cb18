#include <doctest.h>

#include <random>
#include <vector>

#include "generators.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/eval.hpp"
#include "selfsim/term.hpp"

using namespace selfsim;

namespace {

Tree x() { return Tree::leaf(); }
Tree P(const Tree& l, const Tree& r) { return Tree::pair(l, r); }
Tree XX() { return P(x(), x()); }

}  // namespace

TEST_CASE("sources and targets of the generators") {
  ArrowTerm t = ArrowTerm::tau(x(), x(), x());
  CHECK(t.src() == P(x(), P(x(), x())));
  CHECK(t.tgt() == P(P(x(), x()), x()));

  ArrowTerm c = ArrowTerm::code(XX());
  CHECK(c.src() == XX());
  CHECK(c.tgt() == x());

  ArrowTerm d = ArrowTerm::decode(XX());
  CHECK(d.src() == x());
  CHECK(d.tgt() == XX());

  ArrowTerm inv = ArrowTerm::inv(ArrowTerm::tau(x(), x(), x()));
  CHECK(inv.src() == P(P(x(), x()), x()));
}

TEST_CASE("composition checks the middle object") {
  // code(x*x) after tau(x,x,x): (x*x)*x does not meet x*x.
  ArrowTerm bad =
      ArrowTerm::compose(ArrowTerm::code(XX()), ArrowTerm::tau(x(), x(), x()));
  CHECK_THROWS_AS(bad.src(), TypeError);
  try {
    bad.tgt();
    CHECK(false);
  } catch (const TypeError& e) {
    std::string msg = e.what();
    CHECK(msg.find("(x*x)") != std::string::npos);
    CHECK(msg.find("((x*x)*x)") != std::string::npos);
  }
}

TEST_CASE("code_term inductive shape") {
  CHECK(code_term(x()) == ArrowTerm::id(x()));
  CHECK(code_term(XX()) == ArrowTerm::code(XX()));
  CHECK(code_term(P(XX(), x())) ==
        ArrowTerm::compose(ArrowTerm::code(XX()),
                           ArrowTerm::tensor(ArrowTerm::code(XX()),
                                             ArrowTerm::id(x()))));
  for (int r = 1; r <= 6; ++r)
    for (const Tree& u : enumerate_trees(r)) {
      CHECK(code_term(u).src() == u);
      CHECK(code_term(u).tgt() == x());
      CHECK(decode_term(u).src() == x());
      CHECK(decode_term(u).tgt() == u);
    }
}

TEST_CASE("xsub is decode after code") {
  CHECK(xsub(x(), x()) ==
        ArrowTerm::compose(ArrowTerm::id(x()), ArrowTerm::id(x())));
  CHECK(xsub(XX(), x()) ==
        ArrowTerm::compose(ArrowTerm::id(x()), ArrowTerm::code(XX())));
  CHECK(xsub(x(), XX()) ==
        ArrowTerm::compose(ArrowTerm::decode(XX()), ArrowTerm::id(x())));
  CHECK(xsub(P(XX(), x()), XX()).src() == P(XX(), x()));
  CHECK(xsub(P(XX(), x()), XX()).tgt() == XX());
}

TEST_CASE("wsub exists exactly for equal ranks") {
  CHECK(*wsub(x(), x()) == ArrowTerm::id(x()));
  CHECK(!wsub(x(), XX()).has_value());
  auto w = wsub(P(x(), P(x(), x())), P(P(x(), x()), x()));
  REQUIRE(w.has_value());
  CHECK(w->src() == P(x(), P(x(), x())));
  CHECK(w->tgt() == P(P(x(), x()), x()));
  // The canonical rotation between the two rank-3 trees is the associator.
  CHECK(eval_arrow_term(*w) == alpha_map());
}

TEST_CASE("wsub is well-typed for every pair of equal rank") {
  for (int r = 1; r <= 6; ++r) {
    auto all = enumerate_trees(r);
    for (const Tree& s : all)
      for (const Tree& t : all) {
        auto w = wsub(s, t);
        REQUIRE(w.has_value());
        CHECK(w->src() == s);
        CHECK(w->tgt() == t);
      }
  }
}

namespace {

// Alternative construction used as the independence oracle: normalize both
// subtrees first, then rotate the results together at the root.
ArrowTerm to_comb_subtrees_first(const Tree& t) {
  if (t.is_leaf()) return ArrowTerm::id(t);
  ArrowTerm left = to_comb_subtrees_first(t.left());
  ArrowTerm right = to_comb_subtrees_first(t.right());
  ArrowTerm acc = ArrowTerm::tensor(left, right);
  Tree cur = P(left_comb(t.left().rank()), left_comb(t.right().rank()));
  while (!cur.right().is_leaf()) {
    // Peel the top leaf off the right comb: a*(b*x) becomes (a*b)*x.
    ArrowTerm step =
        ArrowTerm::tau(cur.left(), cur.right().left(), cur.right().right());
    acc = ArrowTerm::compose(step, acc);
    cur = P(P(cur.left(), cur.right().left()), cur.right().right());
  }
  // cur is now LC(l) * x possibly with a combed left part: rotate leftovers.
  while (!(cur == left_comb(t.rank()))) {
    // Remaining shape is (comb * x) with a comb that is not fully flat;
    // handled by rotating inside the left factor.
    ArrowTerm inner = to_comb_subtrees_first(cur.left());
    acc = ArrowTerm::compose(ArrowTerm::tensor(inner, ArrowTerm::id(x())),
                             acc);
    cur = P(left_comb(cur.left().rank()), x());
  }
  return acc;
}

ArrowTerm wsub_alternative(const Tree& s, const Tree& t) {
  ArrowTerm up = to_comb_subtrees_first(s);
  ArrowTerm down = structural_inverse(to_comb_subtrees_first(t));
  return ArrowTerm::compose(down, up);
}

}  // namespace

TEST_CASE("wsub semantics is independent of the rotation strategy") {
  for (int r = 1; r <= 6; ++r) {
    auto all = enumerate_trees(r);
    for (const Tree& s : all)
      for (const Tree& t : all) {
        ArrowTerm alt = wsub_alternative(s, t);
        CHECK(alt.src() == s);
        CHECK(alt.tgt() == t);
        CHECK(eval_arrow_term(*wsub(s, t)) == eval_arrow_term(alt));
      }
  }
}

TEST_CASE("flatten clause by clause") {
  CHECK(flatten(ArrowTerm::tau(x(), x(), x())) == MonoidTerm::alpha());
  CHECK(flatten(code_term(P(XX(), x()))) ==
        MonoidTerm::compose(MonoidTerm::one(),
                            MonoidTerm::star(MonoidTerm::one(),
                                             MonoidTerm::one())));
  CHECK(flatten(ArrowTerm::tensor(ArrowTerm::id(x()), ArrowTerm::code(XX()))) ==
        MonoidTerm::star(MonoidTerm::one(), MonoidTerm::one()));
  CHECK(flatten(ArrowTerm::atom("f", x(), XX())) == MonoidTerm::atom("f"));
}

TEST_CASE("flatten is a homomorphism") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    Tree a = testgen::random_tree(rng, 4);
    Tree b = testgen::random_tree(rng, 4);
    Tree c = testgen::random_tree(rng, 4);
    ArrowTerm f = testgen::random_canonical_term(rng, a, b);
    ArrowTerm g = testgen::random_canonical_term(rng, b, c);
    CHECK(flatten(ArrowTerm::compose(g, f)) ==
          MonoidTerm::compose(flatten(g), flatten(f)));
    CHECK(flatten(ArrowTerm::tensor(f, g)) ==
          MonoidTerm::star(flatten(f), flatten(g)));
  }
}

TEST_CASE("alpha_expansion has the stated shape and type") {
  ArrowTerm e = alpha_expansion();
  CHECK(e == ArrowTerm::compose(
                 ArrowTerm::code(XX()),
                 ArrowTerm::compose(
                     ArrowTerm::tensor(ArrowTerm::code(XX()),
                                       ArrowTerm::id(x())),
                     ArrowTerm::compose(
                         ArrowTerm::tau(x(), x(), x()),
                         ArrowTerm::compose(
                             ArrowTerm::tensor(ArrowTerm::id(x()),
                                               ArrowTerm::decode(XX())),
                             ArrowTerm::decode(XX()))))));
  CHECK(e.src() == x());
  CHECK(e.tgt() == x());

  // Its flattening contains exactly one associator.
  int alphas = 0;
  auto count = [&](const MonoidTerm& m, auto&& self) -> void {
    switch (m.kind()) {
      case MonoidTerm::Kind::Alpha:
        ++alphas;
        return;
      case MonoidTerm::Kind::Star:
        self(m.fst(), self);
        self(m.snd(), self);
        return;
      case MonoidTerm::Kind::Compose:
        self(m.after(), self);
        self(m.before(), self);
        return;
      case MonoidTerm::Kind::Inv:
        self(m.arg(), self);
        return;
      default:
        return;
    }
  };
  count(flatten(e), count);
  CHECK(alphas == 1);
}

TEST_CASE("typing soundness over generated canonical terms") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    Tree s = testgen::random_tree(rng, 5);
    Tree t = testgen::random_tree(rng, 5);
    ArrowTerm f = testgen::random_canonical_term(rng, s, t);
    CHECK(f.src() == s);
    CHECK(f.tgt() == t);
  }
}

TEST_CASE("inv refuses non-invertible atoms") {
  ArrowTerm f = ArrowTerm::atom("p", x(), x(), /*invertible=*/false);
  CHECK_THROWS_AS(ArrowTerm::inv(f), InvertNonInvertible);
  CHECK_THROWS_AS(
      MonoidTerm::inv(MonoidTerm::atom("p", /*invertible=*/false)),
      InvertNonInvertible);
  CHECK_THROWS_AS(structural_inverse(ArrowTerm::compose(
                      f, ArrowTerm::atom("q", x(), x()))),
                  InvertNonInvertible);
}

TEST_CASE("term printing") {
  CHECK(print_arrow_term(ArrowTerm::tau(x(), x(), XX())) ==
        "tau(x,x,(x*x))");
  CHECK(print_arrow_term(ArrowTerm::tensor(ArrowTerm::id(x()),
                                           ArrowTerm::code(XX()))) ==
        "id(x) # code((x*x))");
  MonoidTerm a = MonoidTerm::atom("a"), b = MonoidTerm::atom("b"),
             c = MonoidTerm::atom("c");
  CHECK(print_monoid_term(MonoidTerm::compose(MonoidTerm::compose(a, b), c)) ==
        "a . b . c");
  CHECK(print_monoid_term(MonoidTerm::compose(a, MonoidTerm::compose(b, c))) ==
        "a . (b . c)");
  CHECK(print_monoid_term(MonoidTerm::star(MonoidTerm::star(a, b), c)) ==
        "a # b # c");
  CHECK(print_monoid_term(MonoidTerm::star(a, MonoidTerm::star(b, c))) ==
        "a # (b # c)");
  CHECK(print_monoid_term(MonoidTerm::compose(
            MonoidTerm::alpha(),
            MonoidTerm::star(MonoidTerm::one(), MonoidTerm::alpha_inv()))) ==
        "alpha . one # inv(alpha)");
}
