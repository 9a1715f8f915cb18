#include "selfsim/term.hpp"

#include <cassert>
#include <vector>

#include "selfsim/errors.hpp"

namespace selfsim {

struct ArrowTerm::Node {
  Kind kind;
  Tree a, b, c;      // Id/Code/Decode/Atom use a (and b for Atom's target)
  std::string name;  // Atom
  bool invertible = true;
  ArrowTerm child1, child2;  // Tensor(f,g); Compose(g,f) as (after, before)
};

namespace {

using AK = ArrowTerm::Kind;
using MK = MonoidTerm::Kind;

}  // namespace

ArrowTerm::Kind ArrowTerm::kind() const { return node_->kind; }

ArrowTerm ArrowTerm::make(Node&& n) {
  ArrowTerm f;
  f.node_ = std::make_shared<const Node>(std::move(n));
  return f;
}

ArrowTerm ArrowTerm::id(Tree t) {
  return make({Kind::Id, std::move(t), {}, {}, {}, true, {}, {}});
}

ArrowTerm ArrowTerm::tau(Tree a, Tree b, Tree c) {
  return make(
      {Kind::Tau, std::move(a), std::move(b), std::move(c), {}, true, {}, {}});
}

ArrowTerm ArrowTerm::tau_inv(Tree a, Tree b, Tree c) {
  return make({Kind::TauInv, std::move(a), std::move(b), std::move(c),
               {}, true, {}, {}});
}

ArrowTerm ArrowTerm::code(Tree u) {
  return make({Kind::Code, std::move(u), {}, {}, {}, true, {}, {}});
}

ArrowTerm ArrowTerm::decode(Tree u) {
  return make({Kind::Decode, std::move(u), {}, {}, {}, true, {}, {}});
}

ArrowTerm ArrowTerm::atom(std::string name, Tree src, Tree tgt,
                          bool invertible) {
  return make({Kind::Atom, std::move(src), std::move(tgt), {},
               std::move(name), invertible, {}, {}});
}

ArrowTerm ArrowTerm::tensor(ArrowTerm f, ArrowTerm g) {
  return make(
      {Kind::Tensor, {}, {}, {}, {}, true, std::move(f), std::move(g)});
}

ArrowTerm ArrowTerm::compose(ArrowTerm g, ArrowTerm f) {
  return make(
      {Kind::Compose, {}, {}, {}, {}, true, std::move(g), std::move(f)});
}

ArrowTerm ArrowTerm::inv(ArrowTerm f) {
  if (f.has_noninvertible_atom())
    throw InvertNonInvertible("cannot invert '" + print_arrow_term(f) +
                              "': it contains a non-invertible atom");
  return make({Kind::Inv, {}, {}, {}, {}, true, std::move(f), {}});
}

const Tree& ArrowTerm::tree_a() const { return node_->a; }
const Tree& ArrowTerm::tree_b() const { return node_->b; }
const Tree& ArrowTerm::tree_c() const { return node_->c; }

const std::string& ArrowTerm::atom_name() const {
  assert(kind() == Kind::Atom);
  return node_->name;
}
const Tree& ArrowTerm::atom_src() const {
  assert(kind() == Kind::Atom);
  return node_->a;
}
const Tree& ArrowTerm::atom_tgt() const {
  assert(kind() == Kind::Atom);
  return node_->b;
}
bool ArrowTerm::atom_invertible() const {
  assert(kind() == Kind::Atom);
  return node_->invertible;
}

const ArrowTerm& ArrowTerm::fst() const {
  assert(kind() == Kind::Tensor);
  return node_->child1;
}
const ArrowTerm& ArrowTerm::snd() const {
  assert(kind() == Kind::Tensor);
  return node_->child2;
}
const ArrowTerm& ArrowTerm::after() const {
  assert(kind() == Kind::Compose);
  return node_->child1;
}
const ArrowTerm& ArrowTerm::before() const {
  assert(kind() == Kind::Compose);
  return node_->child2;
}
const ArrowTerm& ArrowTerm::arg() const {
  assert(kind() == Kind::Inv);
  return node_->child1;
}

namespace {

std::pair<Tree, Tree> arrow_type(const ArrowTerm& f) {
  switch (f.kind()) {
    case AK::Id:
      return {f.tree_a(), f.tree_a()};
    case AK::Tau:
      return {Tree::pair(f.tree_a(), Tree::pair(f.tree_b(), f.tree_c())),
              Tree::pair(Tree::pair(f.tree_a(), f.tree_b()), f.tree_c())};
    case AK::TauInv:
      return {Tree::pair(Tree::pair(f.tree_a(), f.tree_b()), f.tree_c()),
              Tree::pair(f.tree_a(), Tree::pair(f.tree_b(), f.tree_c()))};
    case AK::Code:
      return {f.tree_a(), Tree::leaf()};
    case AK::Decode:
      return {Tree::leaf(), f.tree_a()};
    case AK::Atom:
      return {f.atom_src(), f.atom_tgt()};
    case AK::Tensor: {
      auto [s1, t1] = arrow_type(f.fst());
      auto [s2, t2] = arrow_type(f.snd());
      return {Tree::pair(s1, s2), Tree::pair(t1, t2)};
    }
    case AK::Compose: {
      auto [sf, tf] = arrow_type(f.before());
      auto [sg, tg] = arrow_type(f.after());
      if (tf != sg)
        throw TypeError("cannot compose '" + print_arrow_term(f.after()) +
                        "' after '" + print_arrow_term(f.before()) +
                        "': middle objects " + print_tree(sg) + " and " +
                        print_tree(tf) + " differ");
      return {sf, tg};
    }
    case AK::Inv: {
      auto [s, t] = arrow_type(f.arg());
      return {t, s};
    }
  }
  assert(false);
  return {};
}

}  // namespace

Tree ArrowTerm::src() const { return arrow_type(*this).first; }
Tree ArrowTerm::tgt() const { return arrow_type(*this).second; }

bool ArrowTerm::has_noninvertible_atom() const {
  switch (kind()) {
    case Kind::Atom:
      return !atom_invertible();
    case Kind::Tensor:
      return fst().has_noninvertible_atom() || snd().has_noninvertible_atom();
    case Kind::Compose:
      return after().has_noninvertible_atom() ||
             before().has_noninvertible_atom();
    case Kind::Inv:
      return arg().has_noninvertible_atom();
    default:
      return false;
  }
}

bool operator==(const ArrowTerm& a, const ArrowTerm& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case AK::Id:
    case AK::Code:
    case AK::Decode:
      return a.tree_a() == b.tree_a();
    case AK::Tau:
    case AK::TauInv:
      return a.tree_a() == b.tree_a() && a.tree_b() == b.tree_b() &&
             a.tree_c() == b.tree_c();
    case AK::Atom:
      return a.atom_name() == b.atom_name() && a.atom_src() == b.atom_src() &&
             a.atom_tgt() == b.atom_tgt() &&
             a.atom_invertible() == b.atom_invertible();
    case AK::Tensor:
      return a.fst() == b.fst() && a.snd() == b.snd();
    case AK::Compose:
      return a.after() == b.after() && a.before() == b.before();
    case AK::Inv:
      return a.arg() == b.arg();
  }
  return false;
}

struct MonoidTerm::Node {
  Kind kind;
  std::string name;
  bool invertible = true;
  MonoidTerm child1, child2;
};

MonoidTerm::Kind MonoidTerm::kind() const { return node_->kind; }

MonoidTerm MonoidTerm::make(Node&& n) {
  MonoidTerm m;
  m.node_ = std::make_shared<const Node>(std::move(n));
  return m;
}

MonoidTerm MonoidTerm::one() { return make({Kind::One, {}, true, {}, {}}); }
MonoidTerm MonoidTerm::alpha() {
  return make({Kind::Alpha, {}, true, {}, {}});
}
MonoidTerm MonoidTerm::alpha_inv() {
  return make({Kind::AlphaInv, {}, true, {}, {}});
}
MonoidTerm MonoidTerm::atom(std::string name, bool invertible) {
  return make({Kind::Atom, std::move(name), invertible, {}, {}});
}
MonoidTerm MonoidTerm::star(MonoidTerm f, MonoidTerm g) {
  return make({Kind::Star, {}, true, std::move(f), std::move(g)});
}
MonoidTerm MonoidTerm::compose(MonoidTerm g, MonoidTerm f) {
  return make({Kind::Compose, {}, true, std::move(g), std::move(f)});
}
MonoidTerm MonoidTerm::inv(MonoidTerm f) {
  if (f.has_noninvertible_atom())
    throw InvertNonInvertible("cannot invert '" + print_monoid_term(f) +
                              "': it contains a non-invertible atom");
  return make({Kind::Inv, {}, true, std::move(f), {}});
}

const std::string& MonoidTerm::atom_name() const {
  assert(kind() == Kind::Atom);
  return node_->name;
}
bool MonoidTerm::atom_invertible() const {
  assert(kind() == Kind::Atom);
  return node_->invertible;
}
const MonoidTerm& MonoidTerm::fst() const {
  assert(kind() == Kind::Star);
  return node_->child1;
}
const MonoidTerm& MonoidTerm::snd() const {
  assert(kind() == Kind::Star);
  return node_->child2;
}
const MonoidTerm& MonoidTerm::after() const {
  assert(kind() == Kind::Compose);
  return node_->child1;
}
const MonoidTerm& MonoidTerm::before() const {
  assert(kind() == Kind::Compose);
  return node_->child2;
}
const MonoidTerm& MonoidTerm::arg() const {
  assert(kind() == Kind::Inv);
  return node_->child1;
}

bool MonoidTerm::has_atom() const {
  switch (kind()) {
    case Kind::Atom:
      return true;
    case Kind::Star:
      return fst().has_atom() || snd().has_atom();
    case Kind::Compose:
      return after().has_atom() || before().has_atom();
    case Kind::Inv:
      return arg().has_atom();
    default:
      return false;
  }
}

bool MonoidTerm::has_noninvertible_atom() const {
  switch (kind()) {
    case Kind::Atom:
      return !atom_invertible();
    case Kind::Star:
      return fst().has_noninvertible_atom() || snd().has_noninvertible_atom();
    case Kind::Compose:
      return after().has_noninvertible_atom() ||
             before().has_noninvertible_atom();
    case Kind::Inv:
      return arg().has_noninvertible_atom();
    default:
      return false;
  }
}

bool operator==(const MonoidTerm& a, const MonoidTerm& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case MK::One:
    case MK::Alpha:
    case MK::AlphaInv:
      return true;
    case MK::Atom:
      return a.atom_name() == b.atom_name() &&
             a.atom_invertible() == b.atom_invertible();
    case MK::Star:
      return a.fst() == b.fst() && a.snd() == b.snd();
    case MK::Compose:
      return a.after() == b.after() && a.before() == b.before();
    case MK::Inv:
      return a.arg() == b.arg();
  }
  return false;
}

ArrowTerm code_term(const Tree& u) {
  if (u.is_leaf()) return ArrowTerm::id(Tree::leaf());
  if (u.left().is_leaf() && u.right().is_leaf()) return ArrowTerm::code(u);
  return ArrowTerm::compose(
      ArrowTerm::code(Tree::pair(Tree::leaf(), Tree::leaf())),
      ArrowTerm::tensor(code_term(u.left()), code_term(u.right())));
}

ArrowTerm decode_term(const Tree& u) {
  if (u.is_leaf()) return ArrowTerm::id(Tree::leaf());
  if (u.left().is_leaf() && u.right().is_leaf()) return ArrowTerm::decode(u);
  return ArrowTerm::compose(
      ArrowTerm::tensor(decode_term(u.left()), decode_term(u.right())),
      ArrowTerm::decode(Tree::pair(Tree::leaf(), Tree::leaf())));
}

ArrowTerm xsub(const Tree& u, const Tree& v) {
  return ArrowTerm::compose(decode_term(v), code_term(u));
}

ArrowTerm structural_inverse(const ArrowTerm& f) {
  switch (f.kind()) {
    case AK::Id:
      return f;
    case AK::Tau:
      return ArrowTerm::tau_inv(f.tree_a(), f.tree_b(), f.tree_c());
    case AK::TauInv:
      return ArrowTerm::tau(f.tree_a(), f.tree_b(), f.tree_c());
    case AK::Code:
      return ArrowTerm::decode(f.tree_a());
    case AK::Decode:
      return ArrowTerm::code(f.tree_a());
    case AK::Atom:
      return ArrowTerm::inv(f);  // throws when not invertible
    case AK::Tensor:
      return ArrowTerm::tensor(structural_inverse(f.fst()),
                               structural_inverse(f.snd()));
    case AK::Compose:
      return ArrowTerm::compose(structural_inverse(f.before()),
                                structural_inverse(f.after()));
    case AK::Inv:
      return f.arg();
  }
  assert(false);
  return f;
}

namespace {

// Typed rewrite steps taking t to the left comb of its rank. While the right
// subtree is a pair, tau applies at the root; once it is the leaf, the left
// subtree is rotated with the leaf carried along on the right.
void rotation_steps(const Tree& t, std::vector<ArrowTerm>& out) {
  if (t.is_leaf()) return;
  Tree cur = t;
  while (!cur.right().is_leaf()) {
    const Tree l = cur.left();
    const Tree rl = cur.right().left();
    const Tree rr = cur.right().right();
    out.push_back(ArrowTerm::tau(l, rl, rr));
    cur = Tree::pair(Tree::pair(l, rl), rr);
  }
  std::vector<ArrowTerm> inner;
  rotation_steps(cur.left(), inner);
  for (ArrowTerm& step : inner)
    out.push_back(ArrowTerm::tensor(std::move(step), ArrowTerm::id(Tree::leaf())));
}

ArrowTerm compose_chain(const std::vector<ArrowTerm>& steps) {
  assert(!steps.empty());
  ArrowTerm acc = steps.front();
  for (std::size_t i = 1; i < steps.size(); ++i)
    acc = ArrowTerm::compose(steps[i], std::move(acc));
  return acc;
}

}  // namespace

std::optional<ArrowTerm> wsub(const Tree& s, const Tree& t) {
  if (s.rank() != t.rank()) return std::nullopt;
  if (s == t) return ArrowTerm::id(s);
  std::vector<ArrowTerm> steps;
  rotation_steps(s, steps);
  std::vector<ArrowTerm> down;
  rotation_steps(t, down);
  for (auto it = down.rbegin(); it != down.rend(); ++it)
    steps.push_back(structural_inverse(*it));
  return compose_chain(steps);
}

MonoidTerm flatten(const ArrowTerm& f) {
  switch (f.kind()) {
    case AK::Id:
    case AK::Code:
    case AK::Decode:
      return MonoidTerm::one();
    case AK::Tau:
      return MonoidTerm::alpha();
    case AK::TauInv:
      return MonoidTerm::alpha_inv();
    case AK::Atom:
      return MonoidTerm::atom(f.atom_name(), f.atom_invertible());
    case AK::Tensor:
      return MonoidTerm::star(flatten(f.fst()), flatten(f.snd()));
    case AK::Compose:
      return MonoidTerm::compose(flatten(f.after()), flatten(f.before()));
    case AK::Inv:
      return MonoidTerm::inv(flatten(f.arg()));
  }
  assert(false);
  return MonoidTerm::one();
}

ArrowTerm alpha_expansion() {
  const Tree x = Tree::leaf();
  const Tree xx = Tree::pair(x, x);
  return ArrowTerm::compose(
      ArrowTerm::code(xx),
      ArrowTerm::compose(
          ArrowTerm::tensor(ArrowTerm::code(xx), ArrowTerm::id(x)),
          ArrowTerm::compose(
              ArrowTerm::tau(x, x, x),
              ArrowTerm::compose(
                  ArrowTerm::tensor(ArrowTerm::id(x), ArrowTerm::decode(xx)),
                  ArrowTerm::decode(xx)))));
}

namespace {

// Precedence levels for printing: 0 composition, 1 tensor, 2 atomic.
std::string print_arrow(const ArrowTerm& f, int level) {
  switch (f.kind()) {
    case AK::Id:
      return "id(" + print_tree(f.tree_a()) + ")";
    case AK::Tau:
      return "tau(" + print_tree(f.tree_a()) + "," + print_tree(f.tree_b()) +
             "," + print_tree(f.tree_c()) + ")";
    case AK::TauInv:
      return "inv(tau(" + print_tree(f.tree_a()) + "," +
             print_tree(f.tree_b()) + "," + print_tree(f.tree_c()) + "))";
    case AK::Code:
      return "code(" + print_tree(f.tree_a()) + ")";
    case AK::Decode:
      return "decode(" + print_tree(f.tree_a()) + ")";
    case AK::Atom:
      return f.atom_name();
    case AK::Inv:
      return "inv(" + print_arrow(f.arg(), 0) + ")";
    case AK::Tensor: {
      std::string s = print_arrow(f.fst(), 1) + " # " + print_arrow(f.snd(), 2);
      return level > 1 ? "(" + s + ")" : s;
    }
    case AK::Compose: {
      std::string s =
          print_arrow(f.after(), 0) + " . " + print_arrow(f.before(), 1);
      return level > 0 ? "(" + s + ")" : s;
    }
  }
  assert(false);
  return {};
}

std::string print_monoid(const MonoidTerm& m, int level) {
  switch (m.kind()) {
    case MK::One:
      return "one";
    case MK::Alpha:
      return "alpha";
    case MK::AlphaInv:
      return "inv(alpha)";
    case MK::Atom:
      return m.atom_name();
    case MK::Inv:
      return "inv(" + print_monoid(m.arg(), 0) + ")";
    case MK::Star: {
      std::string s =
          print_monoid(m.fst(), 1) + " # " + print_monoid(m.snd(), 2);
      return level > 1 ? "(" + s + ")" : s;
    }
    case MK::Compose: {
      std::string s =
          print_monoid(m.after(), 0) + " . " + print_monoid(m.before(), 1);
      return level > 0 ? "(" + s + ")" : s;
    }
  }
  assert(false);
  return {};
}

}  // namespace

std::string print_arrow_term(const ArrowTerm& f) { return print_arrow(f, 0); }
std::string print_monoid_term(const MonoidTerm& m) { return print_monoid(m, 0); }

}  // namespace selfsim
