#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace selfsim {

// Free non-empty binary tree over a single leaf symbol. Immutable value with
// structural equality; interior nodes are shared, so copies are cheap.
class Tree {
 public:
  Tree() = default;  // leaf

  static Tree leaf() { return Tree{}; }
  static Tree pair(Tree left, Tree right);

  bool is_leaf() const { return node_ == nullptr; }
  const Tree& left() const;
  const Tree& right() const;

  // Number of leaves. Always >= 1.
  int rank() const;

  friend bool operator==(const Tree& a, const Tree& b);
  friend bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }
  // Structural order: leaf first, then lexicographic on (left, right).
  friend bool operator<(const Tree& a, const Tree& b) {
    return compare(a, b) < 0;
  }

 private:
  struct Node;
  static int compare(const Tree& a, const Tree& b);
  std::shared_ptr<const Node> node_;
};

// All trees of the given rank, each exactly once, ordered recursively by
// left-subtree rank ascending.
std::vector<Tree> enumerate_trees(int rank);

// Fully left-nested tree of the given rank: (((x*x)*x)*...).
Tree left_comb(int rank);

// Grammar: T ::= "x" | "(" T "*" T ")", whitespace insignificant.
// Throws ParseError (with offset) on malformed or trailing input.
Tree parse_tree(const std::string& text);
std::string print_tree(const Tree& t);

// Tree with unification metavariables at the leaves: the carrier for
// inferring consistent associativity typings.
class TreePattern {
 public:
  TreePattern() = default;  // leaf

  static TreePattern leaf() { return TreePattern{}; }
  static TreePattern pair(TreePattern left, TreePattern right);
  static TreePattern var(int id);
  static TreePattern from_tree(const Tree& t);

  bool is_leaf() const { return node_ == nullptr; }
  bool is_var() const;
  bool is_pair() const;
  int var_id() const;
  const TreePattern& left() const;
  const TreePattern& right() const;

  // Defined exactly when the pattern contains no metavariable.
  std::optional<Tree> to_tree() const;
  // Total coercion: remaining metavariables become leaves.
  Tree to_tree_vars_as_leaf() const;

  bool contains_var(int id) const;

  friend bool operator==(const TreePattern& a, const TreePattern& b);
  friend bool operator!=(const TreePattern& a, const TreePattern& b) {
    return !(a == b);
  }

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

// Metavariables print as ?id; otherwise the tree grammar.
std::string print_pattern(const TreePattern& p);

}  // namespace selfsim
