#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace selfsim {

// One affine clause of a residue map: every n with n ≡ r (mod 2^k) maps to
// 2^kp * ((n - r) / 2^k) + rp. The clause is an order isomorphism from the
// input class onto the output class.
struct Piece {
  int k = 0;
  std::uint64_t r = 0;
  int kp = 0;
  std::uint64_t rp = 0;

  friend auto operator<=>(const Piece&, const Piece&) = default;
};

// Piecewise dyadic-affine partial bijection of the naturals. Input classes
// are pairwise disjoint and so are output classes, which makes every value
// injective on its domain. Stored in canonical form (maximally merged,
// sorted), so equality of representations is semantic equality. The class is
// closed under composition, inversion, and interleaving, all exact.
class ResidueMap {
 public:
  ResidueMap() = default;  // nowhere-defined map

  // Canonicalizes. Throws std::invalid_argument when residues are out of
  // range or input/output classes overlap.
  static ResidueMap from_pieces(std::vector<Piece> pieces);
  // nullopt instead of throwing; used to witness that a clause set fails
  // the partial-injectivity invariant.
  static std::optional<ResidueMap> try_from_pieces(std::vector<Piece> pieces);

  const std::vector<Piece>& pieces() const { return pieces_; }

  std::optional<std::uint64_t> apply(std::uint64_t n) const;
  bool defined_at(std::uint64_t n) const { return apply(n).has_value(); }

  // Input classes partition the naturals, and so do output classes.
  bool is_total_bijection() const;

  // Canonical forms compared verbatim: exact semantic equality.
  friend bool operator==(const ResidueMap& a, const ResidueMap& b) {
    return a.pieces_ == b.pieces_;
  }
  friend bool operator!=(const ResidueMap& a, const ResidueMap& b) {
    return !(a == b);
  }

 private:
  std::vector<Piece> pieces_;
};

ResidueMap identity_map();

// g after f, domains intersected by class refinement.
ResidueMap compose(const ResidueMap& g, const ResidueMap& f);
ResidueMap invert(const ResidueMap& f);

// The induced tensor on maps: f on the evens, g on the odds.
ResidueMap interleave(const ResidueMap& f, const ResidueMap& g);

// Associator for the interleaving tensor: 2m -> 4m, 4j+1 -> 4j+2,
// 4j+3 -> 2j+1. A total bijection.
ResidueMap alpha_map();

// Symmetry: n+1 on evens, n-1 on odds.
ResidueMap sigma_map();

// Pairing embedding c(n, i) = 2n + i for i in {0, 1}.
std::uint64_t cantor_code(std::uint64_t n, int i);

// The tensor induced by an alternative code isomorphism c (a total
// bijection): c . (f interleave g) . c^-1.
ResidueMap star_with_code(const ResidueMap& c, const ResidueMap& f,
                          const ResidueMap& g);

// Deterministic-from-seed total bijection with at most `size` pieces.
ResidueMap random_map(std::uint64_t seed, int size);

std::string print_residue_map(const ResidueMap& m);

}  // namespace selfsim
