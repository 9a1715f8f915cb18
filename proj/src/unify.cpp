#include "selfsim/unify.hpp"

#include <deque>

namespace selfsim {

TreePattern Substitution::apply(const TreePattern& p) const {
  if (p.is_leaf()) return p;
  if (p.is_var()) {
    auto it = bindings_.find(p.var_id());
    return it == bindings_.end() ? p : it->second;
  }
  return TreePattern::pair(apply(p.left()), apply(p.right()));
}

void Substitution::bind(int var, const TreePattern& p) {
  Substitution single;
  single.bindings_.emplace(var, p);
  for (auto& [v, q] : bindings_) q = single.apply(q);
  bindings_.emplace(var, p);
}

std::optional<Substitution> unify(const std::vector<PatternEq>& equations) {
  Substitution sub;
  std::deque<PatternEq> work(equations.begin(), equations.end());
  while (!work.empty()) {
    TreePattern a = sub.apply(work.front().lhs);
    TreePattern b = sub.apply(work.front().rhs);
    work.pop_front();
    if (a == b) continue;
    if (a.is_var()) {
      if (b.contains_var(a.var_id())) return std::nullopt;  // occurs check
      sub.bind(a.var_id(), b);
      continue;
    }
    if (b.is_var()) {
      if (a.contains_var(b.var_id())) return std::nullopt;
      sub.bind(b.var_id(), a);
      continue;
    }
    if (a.is_pair() && b.is_pair()) {
      work.push_back({a.left(), b.left()});
      work.push_back({a.right(), b.right()});
      continue;
    }
    return std::nullopt;  // leaf vs pair
  }
  return sub;
}

}  // namespace selfsim
