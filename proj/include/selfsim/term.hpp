#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "selfsim/tree.hpp"

namespace selfsim {

// Typed arrow syntax for the semi-monoidal category freely generated by one
// self-similar object. Terms are plain syntax: no quotienting or
// normalization happens on construction; the decision procedure carries the
// coherence theory.
class ArrowTerm {
 public:
  enum class Kind { Id, Tau, TauInv, Code, Decode, Atom, Tensor, Compose, Inv };

  static ArrowTerm id(Tree t);
  // Associator component at (a, b, c): a*(b*c) -> (a*b)*c.
  static ArrowTerm tau(Tree a, Tree b, Tree c);
  static ArrowTerm tau_inv(Tree a, Tree b, Tree c);
  // Code isomorphism folding u down to the generator: u -> x.
  static ArrowTerm code(Tree u);
  static ArrowTerm decode(Tree u);
  static ArrowTerm atom(std::string name, Tree src, Tree tgt,
                        bool invertible = true);
  static ArrowTerm tensor(ArrowTerm f, ArrowTerm g);
  // "g after f": src is f's, tgt is g's. The middle object is checked when
  // the type is computed, not at construction.
  static ArrowTerm compose(ArrowTerm g, ArrowTerm f);
  // Formal inverse marker. Throws InvertNonInvertible if f contains a
  // non-invertible atom.
  static ArrowTerm inv(ArrowTerm f);

  Kind kind() const;

  const Tree& tree_a() const;  // Id/Code/Decode object, or Tau's first tree
  const Tree& tree_b() const;
  const Tree& tree_c() const;
  const std::string& atom_name() const;
  const Tree& atom_src() const;
  const Tree& atom_tgt() const;
  bool atom_invertible() const;
  const ArrowTerm& fst() const;     // Tensor left factor
  const ArrowTerm& snd() const;     // Tensor right factor
  const ArrowTerm& after() const;   // Compose: outer arrow g
  const ArrowTerm& before() const;  // Compose: inner arrow f
  const ArrowTerm& arg() const;     // Inv argument

  // Source/target trees. Walks the whole term and throws TypeError if any
  // composition inside does not meet in the middle.
  Tree src() const;
  Tree tgt() const;

  bool has_noninvertible_atom() const;

  friend bool operator==(const ArrowTerm& a, const ArrowTerm& b);
  friend bool operator!=(const ArrowTerm& a, const ArrowTerm& b) {
    return !(a == b);
  }

 private:
  struct Node;
  static ArrowTerm make(Node&& n);
  std::shared_ptr<const Node> node_;
};

// Arrow syntax for the strictified endomorphism monoid: the image of the
// typed language under flattening.
class MonoidTerm {
 public:
  enum class Kind { One, Alpha, AlphaInv, Atom, Star, Compose, Inv };

  static MonoidTerm one();
  static MonoidTerm alpha();
  static MonoidTerm alpha_inv();
  static MonoidTerm atom(std::string name, bool invertible = true);
  static MonoidTerm star(MonoidTerm f, MonoidTerm g);
  static MonoidTerm compose(MonoidTerm g, MonoidTerm f);  // g after f
  static MonoidTerm inv(MonoidTerm f);

  Kind kind() const;

  const std::string& atom_name() const;
  bool atom_invertible() const;
  const MonoidTerm& fst() const;
  const MonoidTerm& snd() const;
  const MonoidTerm& after() const;
  const MonoidTerm& before() const;
  const MonoidTerm& arg() const;

  bool has_atom() const;
  bool has_noninvertible_atom() const;

  friend bool operator==(const MonoidTerm& a, const MonoidTerm& b);
  friend bool operator!=(const MonoidTerm& a, const MonoidTerm& b) {
    return !(a == b);
  }

 private:
  struct Node;
  static MonoidTerm make(Node&& n);
  std::shared_ptr<const Node> node_;
};

// Generalised code arrow for u, built inductively from the binary code:
// a term of type u -> x using only Id, Code(x*x), Tensor, Compose.
ArrowTerm code_term(const Tree& u);
// Its formal inverse, of type x -> u.
ArrowTerm decode_term(const Tree& u);

// The unique self-similarity arrow u -> v, realized as decode_term(v) after
// code_term(u).
ArrowTerm xsub(const Tree& u, const Tree& v);

// Canonical associativity arrow s -> t when rank(s) = rank(t), built from
// Id, Tau, TauInv, Tensor, Compose by rotating both trees to the left comb;
// nullopt when the ranks differ. Any construction strategy yields the same
// arrow semantically; this one rotates at the rightmost position off the
// left-comb spine.
std::optional<ArrowTerm> wsub(const Tree& s, const Tree& t);

// Structural inverse of an isomorphism term: swaps Tau/TauInv, Code/Decode,
// reverses compositions. Invertible atoms get wrapped in Inv; a
// non-invertible atom throws InvertNonInvertible.
ArrowTerm structural_inverse(const ArrowTerm& f);

// Substitution onto the endomorphism monoid: objects are forgotten, Tau
// becomes the monoid associator, code/decode become the unit of composition,
// tensor becomes the induced star.
MonoidTerm flatten(const ArrowTerm& f);

// The associator written through the self-similarity at the generator:
// code . (code # id) . tau . (id # decode) . decode, of type x -> x. Its
// evaluation equals the monoid associator exactly.
ArrowTerm alpha_expansion();

// Surface syntax (also used in diagram files):
//   id(t), tau(a,b,c), code(t), decode(t), names, f # g, g . f, inv(f);
// '#' binds tighter than '.', both associate to the left.
std::string print_arrow_term(const ArrowTerm& f);
std::string print_monoid_term(const MonoidTerm& m);

}  // namespace selfsim
