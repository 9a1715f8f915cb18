#pragma once

#include <cstdint>
#include <vector>

namespace selfsim {

// Dense integer matrix standing in for a finite truncation of an infinite
// matrix. Exact arithmetic throughout.
class TruncMatrix {
 public:
  TruncMatrix() = default;
  TruncMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

  static TruncMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t& at(std::size_t x, std::size_t y) {
    return entries_[x * cols_ + y];
  }
  std::int64_t at(std::size_t x, std::size_t y) const {
    return entries_[x * cols_ + y];
  }

  friend bool operator==(const TruncMatrix& a, const TruncMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.entries_ == b.entries_;
  }
  friend bool operator!=(const TruncMatrix& a, const TruncMatrix& b) {
    return !(a == b);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> entries_;
};

// Cauchy-product composition. Throws std::invalid_argument on a dimension
// mismatch.
TruncMatrix matmul(const TruncMatrix& a, const TruncMatrix& b);

// Block-diagonal sum: strictly associative, unital with the empty matrix.
TruncMatrix block_sum(const TruncMatrix& m, const TruncMatrix& n);

// size x size truncation of the interleaving sum: a on even row/column
// pairs, b on odd ones, zero elsewhere. Both arguments must be at least
// ceil(size/2) square; throws std::invalid_argument otherwise.
TruncMatrix interleave_sum(const TruncMatrix& a, const TruncMatrix& b,
                           std::size_t size);

// Deterministic 0/1 matrix of the given square size.
TruncMatrix random01_matrix(std::uint64_t seed, std::size_t size);

// The two nestings of the interleaving sum on the size-truncation.
TruncMatrix nest_left(const TruncMatrix& a, const TruncMatrix& b,
                      const TruncMatrix& c, std::size_t size);
TruncMatrix nest_right(const TruncMatrix& a, const TruncMatrix& b,
                       const TruncMatrix& c, std::size_t size);

// True when the two nestings differ on the size-truncation for the seeded
// random 0/1 triple. Expected true for generic triples: the interleaving
// tensor is not strictly associative.
bool non_strictness_witness(std::uint64_t seed, std::size_t size);

}  // namespace selfsim
