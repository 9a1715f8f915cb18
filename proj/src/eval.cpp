#include "selfsim/eval.hpp"

#include <cassert>

#include "selfsim/errors.hpp"

namespace selfsim {

const ResidueMap& AtomEnv::lookup(const std::string& name) const {
  auto it = bindings_.find(name);
  if (it == bindings_.end()) throw MissingAtomBinding(name);
  return it->second;
}

ResidueMap eval_monoid_term(const MonoidTerm& m, const AtomEnv& env) {
  using Kind = MonoidTerm::Kind;
  switch (m.kind()) {
    case Kind::One:
      return identity_map();
    case Kind::Alpha:
      return alpha_map();
    case Kind::AlphaInv:
      return invert(alpha_map());
    case Kind::Atom:
      return env.lookup(m.atom_name());
    case Kind::Star:
      return interleave(eval_monoid_term(m.fst(), env),
                        eval_monoid_term(m.snd(), env));
    case Kind::Compose:
      return compose(eval_monoid_term(m.after(), env),
                     eval_monoid_term(m.before(), env));
    case Kind::Inv:
      return invert(eval_monoid_term(m.arg(), env));
  }
  assert(false);
  return {};
}

ResidueMap eval_arrow_term(const ArrowTerm& f, const AtomEnv& env) {
  using Kind = ArrowTerm::Kind;
  switch (f.kind()) {
    case Kind::Id:
    case Kind::Code:
    case Kind::Decode:
      return identity_map();
    case Kind::Tau:
      return alpha_map();
    case Kind::TauInv:
      return invert(alpha_map());
    case Kind::Atom:
      return env.lookup(f.atom_name());
    case Kind::Tensor:
      return interleave(eval_arrow_term(f.fst(), env),
                        eval_arrow_term(f.snd(), env));
    case Kind::Compose:
      return compose(eval_arrow_term(f.after(), env),
                     eval_arrow_term(f.before(), env));
    case Kind::Inv:
      return invert(eval_arrow_term(f.arg(), env));
  }
  assert(false);
  return {};
}

ResidueMap eval_monoid_path(const std::vector<MonoidTerm>& path,
                            const AtomEnv& env) {
  ResidueMap acc = identity_map();
  for (const MonoidTerm& step : path)
    acc = compose(eval_monoid_term(step, env), acc);
  return acc;
}

std::optional<std::uint64_t> refute(const std::vector<MonoidTerm>& lhs,
                                    const std::vector<MonoidTerm>& rhs,
                                    const AtomEnv& env, std::uint64_t bound) {
  ResidueMap l = eval_monoid_path(lhs, env);
  ResidueMap r = eval_monoid_path(rhs, env);
  if (l == r) return std::nullopt;
  for (std::uint64_t n = 0; n < bound; ++n)
    if (l.apply(n) != r.apply(n)) return n;
  return std::nullopt;
}

}  // namespace selfsim
