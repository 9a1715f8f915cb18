#include "selfsim/matrix.hpp"

#include <random>
#include <stdexcept>

namespace selfsim {

TruncMatrix TruncMatrix::identity(std::size_t n) {
  TruncMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

TruncMatrix matmul(const TruncMatrix& a, const TruncMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix dimensions do not compose");
  TruncMatrix out(a.rows(), b.cols());
  for (std::size_t x = 0; x < a.rows(); ++x)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      std::int64_t v = a.at(x, k);
      if (v == 0) continue;
      for (std::size_t y = 0; y < b.cols(); ++y)
        out.at(x, y) += v * b.at(k, y);
    }
  return out;
}

TruncMatrix block_sum(const TruncMatrix& m, const TruncMatrix& n) {
  TruncMatrix out(m.rows() + n.rows(), m.cols() + n.cols());
  for (std::size_t x = 0; x < m.rows(); ++x)
    for (std::size_t y = 0; y < m.cols(); ++y) out.at(x, y) = m.at(x, y);
  for (std::size_t x = 0; x < n.rows(); ++x)
    for (std::size_t y = 0; y < n.cols(); ++y)
      out.at(m.rows() + x, m.cols() + y) = n.at(x, y);
  return out;
}

TruncMatrix interleave_sum(const TruncMatrix& a, const TruncMatrix& b,
                           std::size_t size) {
  std::size_t need = (size + 1) / 2;
  if (a.rows() < need || a.cols() < need || b.rows() < size / 2 ||
      b.cols() < size / 2)
    throw std::invalid_argument("insufficient truncation for interleave_sum");
  TruncMatrix out(size, size);
  for (std::size_t x = 0; x < size; ++x)
    for (std::size_t y = 0; y < size; ++y) {
      if (x % 2 == 0 && y % 2 == 0)
        out.at(x, y) = a.at(x / 2, y / 2);
      else if (x % 2 == 1 && y % 2 == 1)
        out.at(x, y) = b.at((x - 1) / 2, (y - 1) / 2);
    }
  return out;
}

TruncMatrix random01_matrix(std::uint64_t seed, std::size_t size) {
  std::mt19937_64 rng(seed);
  TruncMatrix m(size, size);
  for (std::size_t x = 0; x < size; ++x)
    for (std::size_t y = 0; y < size; ++y)
      m.at(x, y) = static_cast<std::int64_t>(rng() & 1);
  return m;
}

TruncMatrix nest_left(const TruncMatrix& a, const TruncMatrix& b,
                      const TruncMatrix& c, std::size_t size) {
  return interleave_sum(interleave_sum(a, b, (size + 1) / 2), c, size);
}

TruncMatrix nest_right(const TruncMatrix& a, const TruncMatrix& b,
                       const TruncMatrix& c, std::size_t size) {
  return interleave_sum(a, interleave_sum(b, c, (size + 1) / 2), size);
}

bool non_strictness_witness(std::uint64_t seed, std::size_t size) {
  TruncMatrix a = random01_matrix(seed, size);
  TruncMatrix b = random01_matrix(seed + 1, size);
  TruncMatrix c = random01_matrix(seed + 2, size);
  return nest_left(a, b, c, size) != nest_right(a, b, c, size);
}

}  // namespace selfsim
