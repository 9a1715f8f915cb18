#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "selfsim/diagram.hpp"
#include "selfsim/errors.hpp"

using namespace selfsim;

namespace {

Tree x() { return Tree::leaf(); }
Tree P(const Tree& l, const Tree& r) { return Tree::pair(l, r); }

Diagram parallel_monoid_pair(const MonoidTerm& l, const MonoidTerm& r) {
  Diagram d(false);
  d.add_node("a");
  d.add_node("b");
  d.add_edge("l", "a", "b", l);
  d.add_edge("r", "a", "b", r);
  return d;
}

// GUARANTEED and the honest model pass both count as commuting.
bool commutes_in_model(const Verdict& v) {
  return !std::holds_alternative<Refuted>(v) &&
         !std::holds_alternative<IllTyped>(v);
}

}  // namespace

TEST_CASE("lift of the constants") {
  VarSupply vars;
  LiftedType a = lift(MonoidTerm::alpha(), vars);
  CHECK(a.src == TreePattern::pair(TreePattern::var(0),
                                   TreePattern::pair(TreePattern::var(1),
                                                     TreePattern::var(2))));
  CHECK(a.tgt == TreePattern::pair(
                     TreePattern::pair(TreePattern::var(0),
                                       TreePattern::var(1)),
                     TreePattern::var(2)));
  CHECK(a.constraints.empty());

  LiftedType one = lift(MonoidTerm::one(), vars);
  CHECK(one.src == one.tgt);
  CHECK(one.src.is_var());

  LiftedType c = lift(MonoidTerm::compose(MonoidTerm::alpha(),
                                          MonoidTerm::star(MonoidTerm::one(),
                                                           MonoidTerm::one())),
                      vars);
  REQUIRE(c.constraints.size() == 1);
  CHECK(c.src.is_pair());
  CHECK(c.src.left().is_var());
  CHECK(c.src.right().is_var());
  CHECK(c.constraints[0].lhs == c.src);

  CHECK_THROWS_AS(lift(MonoidTerm::atom("f"), vars), AtomPresent);
}

TEST_CASE("parallel associators are guaranteed") {
  Verdict v = decide(parallel_monoid_pair(MonoidTerm::alpha(),
                                          MonoidTerm::alpha()));
  CHECK(std::holds_alternative<Guaranteed>(v));
}

TEST_CASE("associator against identity is refuted at n=1") {
  Verdict v =
      decide(parallel_monoid_pair(MonoidTerm::alpha(), MonoidTerm::one()));
  REQUIRE(std::holds_alternative<Refuted>(v));
  const Refuted& r = std::get<Refuted>(v);
  CHECK(r.witness == 1);
  CHECK(r.lhs_value == 2);
  CHECK(r.rhs_value == 1);
  CHECK(r.lhs_edges == std::vector<std::string>{"l"});
  CHECK(print_verdict(v) == "REFUTED n=1 lhs=2 rhs=1");
}

TEST_CASE("the pentagon is guaranteed") {
  Verdict v = decide(testgen::pentagon_diagram());
  REQUIRE(std::holds_alternative<Guaranteed>(v));
  // The witness typing reproduces the actual pentagon objects.
  const Guaranteed& g = std::get<Guaranteed>(v);
  CHECK(g.node_trees.at("a") == P(x(), P(x(), P(x(), x()))));
  CHECK(g.node_trees.at("c") == P(P(P(x(), x()), x()), x()));
}

TEST_CASE("the code/decode factorization of the associator is refuted") {
  Verdict v = decide(testgen::killer_diagram());
  REQUIRE(std::holds_alternative<Refuted>(v));
  const Refuted& r = std::get<Refuted>(v);
  CHECK(r.witness == 1);
  CHECK(r.lhs_value == 2);
  CHECK(r.rhs_value == 1);

  Verdict vp = decide_paths(testgen::killer_diagram(), {"t1"}, {"t2"});
  CHECK(print_verdict(vp) == "REFUTED n=1 lhs=2 rhs=1");
}

TEST_CASE("atom diagrams are never guaranteed") {
  AtomEnv env;
  env.bind("f", sigma_map());
  env.bind("g", random_map(5, 3));
  env.bind("h", random_map(6, 3));

  // Naturality of the associator: commuting, but only model-checked.
  MonoidTerm nat_lhs = MonoidTerm::compose(
      MonoidTerm::alpha(),
      MonoidTerm::star(MonoidTerm::atom("f"),
                       MonoidTerm::star(MonoidTerm::atom("g"),
                                        MonoidTerm::atom("h"))));
  MonoidTerm nat_rhs = MonoidTerm::compose(
      MonoidTerm::star(MonoidTerm::star(MonoidTerm::atom("f"),
                                        MonoidTerm::atom("g")),
                       MonoidTerm::atom("h")),
      MonoidTerm::alpha());
  Verdict v = decide(parallel_monoid_pair(nat_lhs, nat_rhs), env, 512);
  REQUIRE(std::holds_alternative<ModelCommutesUnproven>(v));
  CHECK(std::get<ModelCommutesUnproven>(v).bound == 512);
  CHECK(print_verdict(v) == "MODEL_COMMUTES_UNPROVEN bound=512");

  // sigma star one against one star sigma differs immediately.
  Verdict w = decide(parallel_monoid_pair(
                         MonoidTerm::star(MonoidTerm::atom("f"),
                                          MonoidTerm::one()),
                         MonoidTerm::star(MonoidTerm::one(),
                                          MonoidTerm::atom("f"))),
                     env);
  REQUIRE(std::holds_alternative<Refuted>(w));
  CHECK(std::get<Refuted>(w).witness == 0);

  CHECK_THROWS_AS(
      decide(parallel_monoid_pair(MonoidTerm::atom("zz"), MonoidTerm::one()),
             env),
      MissingAtomBinding);
}

TEST_CASE("type mismatches surface as ILL_TYPED") {
  Diagram d(true);
  d.add_node("a", P(x(), x()));
  d.add_node("b", x());
  d.add_edge("e", "a", "b", ArrowTerm::id(x()));  // source should be x*x
  Verdict v = decide(d);
  REQUIRE(std::holds_alternative<IllTyped>(v));
  CHECK(std::get<IllTyped>(v).detail.find("'e'") != std::string::npos);
}

TEST_CASE("strictness witness of the pentagon") {
  Diagram pent = testgen::pentagon_diagram();
  Verdict v = decide(pent);
  REQUIRE(std::holds_alternative<Guaranteed>(v));
  Diagram w = strictness_witness(pent, std::get<Guaranteed>(v));
  CHECK(std::holds_alternative<Guaranteed>(decide(w)));
  CHECK(sim_equivalent(pent, w, GraphIso::identity(pent)));
}

TEST_CASE("strictness witness of parallel associators") {
  Diagram d = parallel_monoid_pair(MonoidTerm::alpha(), MonoidTerm::alpha());
  Verdict v = decide(d);
  REQUIRE(std::holds_alternative<Guaranteed>(v));
  Diagram w = strictness_witness(d, std::get<Guaranteed>(v));
  REQUIRE(w.is_typed());
  // Both edges become the canonical rotation between the witness trees.
  CHECK(w.node_tree(0) == P(x(), P(x(), x())));
  CHECK(w.node_tree(1) == P(P(x(), x()), x()));
  CHECK(eval_arrow_term(w.arrow_label(0)) == alpha_map());
  CHECK(eval_arrow_term(w.arrow_label(1)) == alpha_map());
  CHECK(std::holds_alternative<Guaranteed>(decide(w)));
}

TEST_CASE("sim_equivalent on identical and broken diagrams") {
  Diagram d = testgen::pentagon_diagram();
  CHECK(sim_equivalent(d, d, GraphIso::identity(d)));

  // Replace one edge with a parallel but unequal arrow.
  Diagram broken(true);
  for (const DiagramNode& n : d.nodes()) broken.add_node(n.id, *n.tree);
  for (std::size_t i = 0; i < d.edges().size(); ++i) {
    const DiagramEdge& e = d.edges()[i];
    if (e.id == "e1") {
      const Tree xx = P(x(), x());
      broken.add_edge("e1", "a", "b",
                      ArrowTerm::compose(
                          ArrowTerm::tensor(ArrowTerm::decode(xx),
                                            ArrowTerm::id(xx)),
                          ArrowTerm::tensor(ArrowTerm::id(x()),
                                            ArrowTerm::code(xx))));
    } else {
      broken.add_edge(e.id, d.nodes()[e.src].id, d.nodes()[e.tgt].id,
                      d.arrow_label(static_cast<int>(i)));
    }
  }
  CHECK(!sim_equivalent(d, broken, GraphIso::identity(d)));
}

TEST_CASE("sim_equivalent validates the graph isomorphism") {
  Diagram d = testgen::pentagon_diagram();
  GraphIso bad = GraphIso::identity(d);
  bad.node_map["a"] = "b";
  CHECK_THROWS_AS(sim_equivalent(d, d, bad), NotGraphIso);
}

TEST_CASE("equivalent diagrams commute together") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    Diagram d1 = testgen::random_canonical_diagram(rng, 4);
    // Retype every node and conjugate the edges by the canonical arrows.
    Diagram d2(true);
    std::vector<Tree> new_trees;
    for (const DiagramNode& n : d1.nodes()) {
      new_trees.push_back(testgen::random_tree(rng, 4));
      d2.add_node(n.id, new_trees.back());
    }
    for (std::size_t i = 0; i < d1.edges().size(); ++i) {
      const DiagramEdge& e = d1.edges()[i];
      ArrowTerm conj = ArrowTerm::compose(
          xsub(*d1.nodes()[e.tgt].tree, new_trees[e.tgt]),
          ArrowTerm::compose(d1.arrow_label(static_cast<int>(i)),
                             xsub(new_trees[e.src],
                                  *d1.nodes()[e.src].tree)));
      d2.add_edge(e.id, d1.nodes()[e.src].id, d1.nodes()[e.tgt].id, conj);
    }
    REQUIRE(sim_equivalent(d1, d2, GraphIso::identity(d1)));
    CHECK(commutes_in_model(decide(d1)) == commutes_in_model(decide(d2)));
  }
}

TEST_CASE("guaranteed verdicts are confirmed by the model (smoke)") {
  std::mt19937_64 rng(71);
  int guaranteed = 0;
  for (int trial = 0; trial < 150; ++trial) {
    Diagram d = testgen::random_canonical_diagram(rng);
    Verdict v = decide(d);
    if (!std::holds_alternative<Guaranteed>(v)) continue;
    ++guaranteed;
    auto flat_eval = [&](const std::vector<int>& path) {
      ResidueMap acc = identity_map();
      for (int e : path)
        acc = compose(eval_arrow_term(d.arrow_label(e)), acc);
      return acc;
    };
    for (const auto& [lhs, rhs] : parallel_path_pairs(d))
      CHECK(flat_eval(lhs) == flat_eval(rhs));
  }
  CHECK(guaranteed > 20);
}

TEST_CASE("typed and flattened commutativity coincide") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 60; ++trial) {
    Tree s = testgen::random_tree(rng, 4);
    Tree t = testgen::random_tree(rng, 4);
    std::vector<std::string> atoms;
    ArrowTerm f = testgen::random_atom_term(rng, s, t, atoms);
    ArrowTerm g = testgen::random_atom_term(rng, s, t, atoms);
    AtomEnv env;
    for (const std::string& name : atoms) env.bind(name, random_map(rng(), 3));

    bool typed_equal = eval_arrow_term(f, env) == eval_arrow_term(g, env);
    bool flat_equal = eval_monoid_term(flatten(f), env) ==
                      eval_monoid_term(flatten(g), env);
    CHECK(typed_equal == flat_equal);
  }
}

TEST_CASE("decide_paths validates its paths") {
  Diagram d = testgen::pentagon_diagram();
  CHECK_THROWS_AS(decide_paths(d, {"e1", "e4"}, {"e3"}),
                  std::invalid_argument);  // e1;e4 breaks at b
  CHECK_THROWS_AS(decide_paths(d, {"nope"}, {"e1"}), std::invalid_argument);
  CHECK_THROWS_AS(decide_paths(d, {"e1"}, {"e3"}), std::invalid_argument);
  Verdict v = decide_paths(d, {"e1", "e2"}, {"e3", "e4", "e5"});
  CHECK(std::holds_alternative<Guaranteed>(v));
}

TEST_CASE("path enumeration is deterministic and complete") {
  Diagram d = testgen::pentagon_diagram();
  auto paths = simple_paths(d, d.node_index("a"), d.node_index("c"));
  REQUIRE(paths.size() == 2);
  CHECK(paths[0] == std::vector<int>{0, 1});
  CHECK(paths[1] == std::vector<int>{2, 3, 4});
  CHECK(parallel_path_pairs(d).size() == 1);

  // Parallel loops on one node count as a parallel pair. An associator
  // loop admits no consistent typing, so only identity loops unify.
  Diagram loops(false);
  loops.add_node("a");
  loops.add_edge("l1", "a", "a", MonoidTerm::one());
  loops.add_edge("l2", "a", "a", MonoidTerm::one());
  CHECK(parallel_path_pairs(loops).size() == 1);
  CHECK(std::holds_alternative<Guaranteed>(decide(loops)));

  Diagram aloop(false);
  aloop.add_node("a");
  aloop.add_edge("l", "a", "a", MonoidTerm::alpha());
  CHECK(std::holds_alternative<ModelCommutesUnproven>(decide(aloop)));
}
