#include "selfsim/tree.hpp"

#include <cassert>
#include <cctype>

#include "selfsim/errors.hpp"

namespace selfsim {

struct Tree::Node {
  Tree left;
  Tree right;
  int rank;
};

int Tree::rank() const { return node_ ? node_->rank : 1; }

Tree Tree::pair(Tree left, Tree right) {
  Tree t;
  int rank = left.rank() + right.rank();
  t.node_ = std::make_shared<const Node>(
      Node{std::move(left), std::move(right), rank});
  return t;
}

const Tree& Tree::left() const {
  assert(node_);
  return node_->left;
}

const Tree& Tree::right() const {
  assert(node_);
  return node_->right;
}

int Tree::compare(const Tree& a, const Tree& b) {
  if (a.node_ == b.node_) return 0;
  if (a.is_leaf()) return b.is_leaf() ? 0 : -1;
  if (b.is_leaf()) return 1;
  if (int c = compare(a.left(), b.left()); c != 0) return c;
  return compare(a.right(), b.right());
}

bool operator==(const Tree& a, const Tree& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_leaf() || b.is_leaf()) return false;
  if (a.rank() != b.rank()) return false;
  return a.left() == b.left() && a.right() == b.right();
}

std::vector<Tree> enumerate_trees(int rank) {
  assert(rank >= 1);
  if (rank == 1) return {Tree::leaf()};
  std::vector<Tree> out;
  for (int lr = 1; lr < rank; ++lr) {
    for (const Tree& l : enumerate_trees(lr)) {
      for (const Tree& r : enumerate_trees(rank - lr)) {
        out.push_back(Tree::pair(l, r));
      }
    }
  }
  return out;
}

Tree left_comb(int rank) {
  assert(rank >= 1);
  Tree t = Tree::leaf();
  for (int i = 1; i < rank; ++i) t = Tree::pair(t, Tree::leaf());
  return t;
}

namespace {

struct TreeReader {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  void expect(char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }

  Tree parse() {
    skip_ws();
    if (pos >= s.size()) fail("expected tree");
    if (s[pos] == 'x') {
      ++pos;
      return Tree::leaf();
    }
    if (s[pos] == '(') {
      ++pos;
      Tree l = parse();
      expect('*');
      Tree r = parse();
      expect(')');
      return Tree::pair(std::move(l), std::move(r));
    }
    fail("expected 'x' or '('");
  }
};

}  // namespace

Tree parse_tree(const std::string& text) {
  TreeReader rd{text};
  Tree t = rd.parse();
  rd.skip_ws();
  if (rd.pos != text.size()) rd.fail("trailing input after tree");
  return t;
}

std::string print_tree(const Tree& t) {
  if (t.is_leaf()) return "x";
  return "(" + print_tree(t.left()) + "*" + print_tree(t.right()) + ")";
}

struct TreePattern::Node {
  TreePattern left;
  TreePattern right;
  int var_id;  // >= 0 for a metavariable, -1 for a pair
};

bool TreePattern::is_var() const { return node_ && node_->var_id >= 0; }
bool TreePattern::is_pair() const { return node_ && node_->var_id < 0; }

TreePattern TreePattern::pair(TreePattern left, TreePattern right) {
  TreePattern p;
  p.node_ = std::make_shared<const Node>(
      Node{std::move(left), std::move(right), -1});
  return p;
}

TreePattern TreePattern::var(int id) {
  assert(id >= 0);
  TreePattern p;
  p.node_ = std::make_shared<const Node>(Node{{}, {}, id});
  return p;
}

TreePattern TreePattern::from_tree(const Tree& t) {
  if (t.is_leaf()) return leaf();
  return pair(from_tree(t.left()), from_tree(t.right()));
}

int TreePattern::var_id() const {
  assert(is_var());
  return node_->var_id;
}

const TreePattern& TreePattern::left() const {
  assert(is_pair());
  return node_->left;
}

const TreePattern& TreePattern::right() const {
  assert(is_pair());
  return node_->right;
}

std::optional<Tree> TreePattern::to_tree() const {
  if (is_leaf()) return Tree::leaf();
  if (is_var()) return std::nullopt;
  auto l = left().to_tree();
  if (!l) return std::nullopt;
  auto r = right().to_tree();
  if (!r) return std::nullopt;
  return Tree::pair(std::move(*l), std::move(*r));
}

Tree TreePattern::to_tree_vars_as_leaf() const {
  if (is_leaf() || is_var()) return Tree::leaf();
  return Tree::pair(left().to_tree_vars_as_leaf(),
                    right().to_tree_vars_as_leaf());
}

bool TreePattern::contains_var(int id) const {
  if (is_leaf()) return false;
  if (is_var()) return var_id() == id;
  return left().contains_var(id) || right().contains_var(id);
}

bool operator==(const TreePattern& a, const TreePattern& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_leaf() || b.is_leaf()) return a.is_leaf() && b.is_leaf();
  if (a.is_var() || b.is_var())
    return a.is_var() && b.is_var() && a.var_id() == b.var_id();
  return a.left() == b.left() && a.right() == b.right();
}

std::string print_pattern(const TreePattern& p) {
  if (p.is_leaf()) return "x";
  if (p.is_var()) return "?" + std::to_string(p.var_id());
  return "(" + print_pattern(p.left()) + "*" + print_pattern(p.right()) + ")";
}

}  // namespace selfsim
