#pragma once

#include <map>
#include <optional>
#include <vector>

#include "selfsim/tree.hpp"

namespace selfsim {

struct PatternEq {
  TreePattern lhs;
  TreePattern rhs;
};

// Finite idempotent map from metavariable ids to patterns. No binding
// mentions a bound variable, so one application pass is a fixpoint.
class Substitution {
 public:
  Substitution() = default;

  TreePattern apply(const TreePattern& p) const;
  bool binds(int var) const { return bindings_.count(var) != 0; }
  const std::map<int, TreePattern>& bindings() const { return bindings_; }

  // Binds var := p (p already normalized w.r.t. this substitution) and
  // rewrites existing bindings so idempotence is preserved.
  void bind(int var, const TreePattern& p);

 private:
  std::map<int, TreePattern> bindings_;
};

// Most general unifier of the equation set over the pair constructor and the
// leaf constant, or nullopt on constructor clash / occurs-check failure.
std::optional<Substitution> unify(const std::vector<PatternEq>& equations);

// Dispenses metavariable ids, never repeating one.
class VarSupply {
 public:
  int fresh() { return next_++; }
  TreePattern fresh_var() { return TreePattern::var(fresh()); }

 private:
  int next_ = 0;
};

}  // namespace selfsim
