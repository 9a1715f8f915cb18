#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/residue_map.hpp"
#include "selfsim/term.hpp"

namespace selfsim {

// Bindings for atom names. Lookup of an unbound name throws
// MissingAtomBinding.
class AtomEnv {
 public:
  AtomEnv() = default;

  void bind(std::string name, ResidueMap m) {
    bindings_[std::move(name)] = std::move(m);
  }
  bool contains(const std::string& name) const {
    return bindings_.count(name) != 0;
  }
  const ResidueMap& lookup(const std::string& name) const;
  const std::map<std::string, ResidueMap>& bindings() const {
    return bindings_;
  }

 private:
  std::map<std::string, ResidueMap> bindings_;
};

// Interpretation in the concrete monoid: One is the identity, Alpha the
// associator, Star the interleaving, atoms resolve through the environment.
ResidueMap eval_monoid_term(const MonoidTerm& m, const AtomEnv& env = {});

// Interpretation of typed syntax in the same monoid; objects are forgotten,
// code/decode evaluate to the identity, every associator component to the
// same map. Coincides with eval_monoid_term after flatten by construction.
ResidueMap eval_arrow_term(const ArrowTerm& f, const AtomEnv& env = {});

// Composite of a path of terms, listed in traversal order (first applied
// first).
ResidueMap eval_monoid_path(const std::vector<MonoidTerm>& path,
                            const AtomEnv& env = {});

inline constexpr std::uint64_t kDefaultRefuteBound = 4096;

// Least n < bound at which the two path composites differ in value or
// definedness; nullopt when none. Exact map equality short-circuits the
// scan.
std::optional<std::uint64_t> refute(const std::vector<MonoidTerm>& lhs,
                                    const std::vector<MonoidTerm>& rhs,
                                    const AtomEnv& env = {},
                                    std::uint64_t bound = kDefaultRefuteBound);

}  // namespace selfsim
