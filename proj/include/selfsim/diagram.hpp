#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "selfsim/eval.hpp"
#include "selfsim/term.hpp"
#include "selfsim/unify.hpp"

namespace selfsim {

struct DiagramNode {
  std::string id;
  std::optional<Tree> tree;  // present exactly when the diagram is typed
};

struct DiagramEdge {
  std::string id;
  int src;
  int tgt;
  std::variant<ArrowTerm, MonoidTerm> label;
};

// Directed multigraph with tree-labelled nodes and term-labelled edges.
// Typed diagrams carry ArrowTerm labels whose types must match the endpoint
// trees; untyped diagrams carry MonoidTerm labels and no node trees.
class Diagram {
 public:
  explicit Diagram(bool typed) : typed_(typed) {}

  bool is_typed() const { return typed_; }

  // All mutators throw std::invalid_argument on duplicate ids, unknown
  // endpoints, or a label/typedness mismatch.
  int add_node(const std::string& id);
  int add_node(const std::string& id, Tree tree);
  int add_edge(const std::string& id, const std::string& src,
               const std::string& tgt, ArrowTerm label);
  int add_edge(const std::string& id, const std::string& src,
               const std::string& tgt, MonoidTerm label);

  const std::vector<DiagramNode>& nodes() const { return nodes_; }
  const std::vector<DiagramEdge>& edges() const { return edges_; }
  int node_index(const std::string& id) const;  // -1 when absent
  int edge_index(const std::string& id) const;
  const Tree& node_tree(int node) const;
  const ArrowTerm& arrow_label(int edge) const;
  const MonoidTerm& monoid_label(int edge) const;

 private:
  int add_node_impl(const std::string& id, std::optional<Tree> tree);
  int add_edge_impl(const std::string& id, const std::string& src,
                    const std::string& tgt,
                    std::variant<ArrowTerm, MonoidTerm> label);

  bool typed_;
  std::vector<DiagramNode> nodes_;
  std::vector<DiagramEdge> edges_;
  std::map<std::string, int> node_by_id_;
  std::map<std::string, int> edge_by_id_;
};

// Outcomes of the decision pipeline.

// A consistent associativity typing exists: commutativity follows from
// coherence, no evaluation needed. `node_trees` is the witness typing with
// unconstrained variables instantiated to the generator.
struct Guaranteed {
  Substitution witness;
  std::map<std::string, Tree> node_trees;
};

// Two parallel paths whose evaluations differ at input `witness`
// (differing definedness counts, shown as nullopt).
struct Refuted {
  std::vector<std::string> lhs_edges;
  std::vector<std::string> rhs_edges;
  std::uint64_t witness = 0;
  std::optional<std::uint64_t> lhs_value;
  std::optional<std::uint64_t> rhs_value;
};

// Every parallel composite pair agreed in the model up to the bound; that
// is evidence, not a guarantee, since the model is not free.
struct ModelCommutesUnproven {
  std::uint64_t bound = 0;
};

struct IllTyped {
  std::string detail;
};

using Verdict =
    std::variant<Guaranteed, Refuted, ModelCommutesUnproven, IllTyped>;

std::string print_verdict(const Verdict& v);

// Most general source/target typing schema of an atom-free monoid term,
// with the composition constraints it generates. Throws AtomPresent.
struct LiftedType {
  TreePattern src;
  TreePattern tgt;
  std::vector<PatternEq> constraints;
};

LiftedType lift(const MonoidTerm& m, VarSupply& vars);

// Full pipeline over the whole diagram: typecheck (typed diagrams), flatten,
// attempt the coherence guarantee by unification, otherwise compare every
// pair of parallel simple paths in the model. Atom-bearing diagrams are
// never Guaranteed. Throws MissingAtomBinding if evaluation needs an unbound
// atom.
Verdict decide(const Diagram& d, const AtomEnv& env = {},
               std::uint64_t bound = kDefaultRefuteBound);

// Same pipeline restricted to one pair of parallel paths, given as edge-id
// sequences in traversal order. Throws std::invalid_argument when the paths
// are not well-formed and parallel.
Verdict decide_paths(const Diagram& d, const std::vector<std::string>& lhs,
                     const std::vector<std::string>& rhs,
                     const AtomEnv& env = {},
                     std::uint64_t bound = kDefaultRefuteBound);

// All simple paths from `from` to `to` as edge-index sequences, in edge
// declaration order. A closed walk (from == to) visits no intermediate node
// twice and is never empty.
std::vector<std::vector<int>> simple_paths(const Diagram& d, int from,
                                           int to);

// Every unordered pair of distinct parallel simple paths, in deterministic
// order.
std::vector<std::pair<std::vector<int>, std::vector<int>>>
parallel_path_pairs(const Diagram& d);

// The canonical-associativity retyping of a Guaranteed diagram: same graph,
// nodes labelled by the witness trees, every edge the canonical arrow
// between its endpoint trees. Self-similarity equivalent to the input.
Diagram strictness_witness(const Diagram& d, const Guaranteed& g);

// Node and edge correspondences witnessing a graph isomorphism.
struct GraphIso {
  std::map<std::string, std::string> node_map;
  std::map<std::string, std::string> edge_map;

  static GraphIso identity(const Diagram& d);
};

// True when every edge square (the two copies of the edge joined by the
// canonical self-similarity arrows between corresponding node trees)
// commutes; squares with atoms are accepted unless the model refutes them.
// Throws NotGraphIso if the maps are not an isomorphism of the underlying
// graphs, std::invalid_argument if either diagram is untyped.
bool sim_equivalent(const Diagram& d1, const Diagram& d2, const GraphIso& iso,
                    const AtomEnv& env = {},
                    std::uint64_t bound = kDefaultRefuteBound);

}  // namespace selfsim
