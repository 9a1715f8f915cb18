#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "selfsim/diagram.hpp"
#include "selfsim/eval.hpp"

namespace selfsim {

// One `check` line: either the bounded all-parallel-paths sweep or an
// explicit pair of edge-id paths.
struct CheckDirective {
  bool all = false;
  std::vector<std::string> lhs;
  std::vector<std::string> rhs;
  std::size_t line = 0;
};

struct DiagramFile {
  Diagram diagram{false};
  std::vector<CheckDirective> checks;
};

// Line-oriented format:
//   object <id> = <tree>                      typed node
//   node <id>                                 untyped node
//   arrow <id> : <src> -> <tgt> = <term>
//   check <id>(;<id>)* = <id>(;<id>)*
//   check all
//   # comment
// Typed and untyped nodes cannot mix. In typed files, a bare identifier in a
// term is an atom whose source/target trees are inferred from its uses
// across the file; unconstrained positions default to the generator.
// Throws ParseError with a "line N:" prefix.
DiagramFile parse_diagram_file(const std::string& text);

std::string print_diagram_file(const DiagramFile& file);

// Standalone monoid term, for evaluation: one, alpha, names, #, ., inv.
MonoidTerm parse_monoid_term(const std::string& text);

// Environment files: one `name = { r/m -> r'/m' , ... }` binding per line,
// moduli are powers of two. Every binding must be a total bijection.
AtomEnv parse_atom_env(const std::string& text);

// Deterministic DOT rendering, nodes and edges in declaration order.
std::string render_dot(const Diagram& d);

}  // namespace selfsim
