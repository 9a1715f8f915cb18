#include "selfsim/residue_map.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <random>
#include <stdexcept>

namespace selfsim {

namespace {

constexpr int kMaxModulusBits = 24;
constexpr int kRandomSplitCap = 16;

std::uint64_t modulus(int k) { return std::uint64_t{1} << k; }

void check_piece(const Piece& p) {
  if (p.k < 0 || p.kp < 0 || p.k > kMaxModulusBits || p.kp > kMaxModulusBits)
    throw std::overflow_error("residue class modulus out of supported range");
  if (p.r >= modulus(p.k) || p.rp >= modulus(p.kp))
    throw std::invalid_argument("residue out of range for its modulus");
}

bool classes_overlap(int k1, std::uint64_t r1, int k2, std::uint64_t r2) {
  int k = std::min(k1, k2);
  return (r1 & (modulus(k) - 1)) == (r2 & (modulus(k) - 1));
}

// Splits a piece into the 2^(target_k - k) subpieces at input level target_k.
void refine_to(const Piece& p, int target_k, std::vector<Piece>& out) {
  assert(target_k >= p.k);
  int extra = target_k - p.k;
  if (p.kp + extra > kMaxModulusBits)
    throw std::overflow_error("refinement exceeds supported modulus range");
  for (std::uint64_t j = 0; j < modulus(extra); ++j)
    out.push_back({target_k, p.r + (j << p.k), p.kp + extra,
                   p.rp + (j << p.kp)});
}

// Maximally merges sibling pairs; input pieces need not share a level.
void merge_pieces(std::vector<Piece>& ps) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(ps.begin(), ps.end());
    std::map<std::pair<int, std::uint64_t>, std::size_t> by_class;
    for (std::size_t i = 0; i < ps.size(); ++i)
      by_class.emplace(std::make_pair(ps[i].k, ps[i].r), i);
    std::vector<bool> consumed(ps.size(), false);
    std::vector<Piece> next;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (consumed[i]) continue;
      const Piece& p = ps[i];
      if (p.k > 0 && p.kp > 0 && ((p.r >> (p.k - 1)) & 1) == 0 &&
          ((p.rp >> (p.kp - 1)) & 1) == 0) {
        auto it = by_class.find({p.k, p.r | (std::uint64_t{1} << (p.k - 1))});
        if (it != by_class.end() && !consumed[it->second]) {
          const Piece& q = ps[it->second];
          if (q.kp == p.kp &&
              q.rp == (p.rp | (std::uint64_t{1} << (p.kp - 1)))) {
            next.push_back({p.k - 1, p.r, p.kp - 1, p.rp});
            consumed[i] = consumed[it->second] = true;
            changed = true;
            continue;
          }
        }
      }
      next.push_back(p);
    }
    ps = std::move(next);
  }
  std::sort(ps.begin(), ps.end());
}

void canonicalize(std::vector<Piece>& ps) {
  if (ps.empty()) return;
  int max_k = 0;
  for (const Piece& p : ps) max_k = std::max(max_k, p.k);
  std::vector<Piece> refined;
  for (const Piece& p : ps) refine_to(p, max_k, refined);
  merge_pieces(refined);
  ps = std::move(refined);
}

void validate_disjoint(const std::vector<Piece>& ps) {
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      if (classes_overlap(ps[i].k, ps[i].r, ps[j].k, ps[j].r))
        throw std::invalid_argument("input residue classes overlap");
      if (classes_overlap(ps[i].kp, ps[i].rp, ps[j].kp, ps[j].rp))
        throw std::invalid_argument("output residue classes overlap");
    }
  }
}

}  // namespace

ResidueMap ResidueMap::from_pieces(std::vector<Piece> pieces) {
  for (const Piece& p : pieces) check_piece(p);
  validate_disjoint(pieces);
  canonicalize(pieces);
  ResidueMap m;
  m.pieces_ = std::move(pieces);
  return m;
}

std::optional<ResidueMap> ResidueMap::try_from_pieces(
    std::vector<Piece> pieces) {
  try {
    return from_pieces(std::move(pieces));
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::optional<std::uint64_t> ResidueMap::apply(std::uint64_t n) const {
  for (const Piece& p : pieces_) {
    if ((n & (modulus(p.k) - 1)) == p.r) {
      unsigned __int128 v =
          ((static_cast<unsigned __int128>(n - p.r) >> p.k) << p.kp) + p.rp;
      if (v > UINT64_MAX) throw std::overflow_error("map value overflows");
      return static_cast<std::uint64_t>(v);
    }
  }
  return std::nullopt;
}

bool ResidueMap::is_total_bijection() const {
  if (pieces_.empty()) return false;
  // Disjointness is an invariant; totality needs the measures to sum to 1.
  int max_k = 0, max_kp = 0;
  for (const Piece& p : pieces_) {
    max_k = std::max(max_k, p.k);
    max_kp = std::max(max_kp, p.kp);
  }
  std::uint64_t in_sum = 0, out_sum = 0;
  for (const Piece& p : pieces_) {
    in_sum += modulus(max_k - p.k);
    out_sum += modulus(max_kp - p.kp);
  }
  return in_sum == modulus(max_k) && out_sum == modulus(max_kp);
}

ResidueMap identity_map() { return ResidueMap::from_pieces({{0, 0, 0, 0}}); }

ResidueMap compose(const ResidueMap& g, const ResidueMap& f) {
  std::vector<Piece> out;
  for (const Piece& pf : f.pieces()) {
    for (const Piece& pg : g.pieces()) {
      if (!classes_overlap(pf.kp, pf.rp, pg.k, pg.r)) continue;
      if (pf.kp >= pg.k) {
        // f's output class sits inside g's input class.
        std::uint64_t d = (pf.rp - pg.r) >> pg.k;
        int kp = pg.kp + (pf.kp - pg.k);
        if (kp > kMaxModulusBits)
          throw std::overflow_error("composition exceeds modulus range");
        out.push_back({pf.k, pf.r, kp, (d << pg.kp) + pg.rp});
      } else {
        // Only part of f's output class lands in g's domain: restrict f.
        int extra = pg.k - pf.kp;
        if (pf.k + extra > kMaxModulusBits)
          throw std::overflow_error("composition exceeds modulus range");
        std::uint64_t j = (pg.r - pf.rp) >> pf.kp;
        out.push_back({pf.k + extra, pf.r + (j << pf.k), pg.kp, pg.rp});
      }
    }
  }
  return ResidueMap::from_pieces(std::move(out));
}

ResidueMap invert(const ResidueMap& f) {
  std::vector<Piece> out;
  out.reserve(f.pieces().size());
  for (const Piece& p : f.pieces()) out.push_back({p.kp, p.rp, p.k, p.r});
  return ResidueMap::from_pieces(std::move(out));
}

ResidueMap interleave(const ResidueMap& f, const ResidueMap& g) {
  std::vector<Piece> out;
  out.reserve(f.pieces().size() + g.pieces().size());
  for (const Piece& p : f.pieces())
    out.push_back({p.k + 1, 2 * p.r, p.kp + 1, 2 * p.rp});
  for (const Piece& p : g.pieces())
    out.push_back({p.k + 1, 2 * p.r + 1, p.kp + 1, 2 * p.rp + 1});
  return ResidueMap::from_pieces(std::move(out));
}

ResidueMap alpha_map() {
  return ResidueMap::from_pieces({{1, 0, 2, 0}, {2, 1, 2, 2}, {2, 3, 1, 1}});
}

ResidueMap sigma_map() {
  return ResidueMap::from_pieces({{1, 0, 1, 1}, {1, 1, 1, 0}});
}

std::uint64_t cantor_code(std::uint64_t n, int i) {
  assert(i == 0 || i == 1);
  return 2 * n + static_cast<std::uint64_t>(i);
}

ResidueMap star_with_code(const ResidueMap& c, const ResidueMap& f,
                          const ResidueMap& g) {
  return compose(c, compose(interleave(f, g), invert(c)));
}

ResidueMap random_map(std::uint64_t seed, int size) {
  assert(size >= 1);
  std::mt19937_64 rng(seed);

  auto build_partition = [&](int classes) {
    std::vector<std::pair<int, std::uint64_t>> part{{0, 0}};
    while (static_cast<int>(part.size()) < classes) {
      std::size_t i = rng() % part.size();
      if (part[i].first >= kRandomSplitCap) {
        auto it = std::find_if(part.begin(), part.end(), [](const auto& c) {
          return c.first < kRandomSplitCap;
        });
        assert(it != part.end());
        i = static_cast<std::size_t>(it - part.begin());
      }
      auto [k, r] = part[i];
      part[i] = {k + 1, r};
      part.push_back({k + 1, r + modulus(k)});
    }
    return part;
  };

  auto inputs = build_partition(size);
  auto outputs = build_partition(size);
  for (std::size_t i = outputs.size(); i > 1; --i)
    std::swap(outputs[i - 1], outputs[rng() % i]);

  std::vector<Piece> pieces;
  pieces.reserve(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i)
    pieces.push_back(
        {inputs[i].first, inputs[i].second, outputs[i].first,
         outputs[i].second});
  return ResidueMap::from_pieces(std::move(pieces));
}

std::string print_residue_map(const ResidueMap& m) {
  std::string out = "{ ";
  bool first = true;
  for (const Piece& p : m.pieces()) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(p.r) + "/" + std::to_string(modulus(p.k)) + " -> " +
           std::to_string(p.rp) + "/" + std::to_string(modulus(p.kp));
  }
  out += first ? "}" : " }";
  return out;
}

}  // namespace selfsim
