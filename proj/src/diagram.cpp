#include "selfsim/diagram.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

#include "selfsim/errors.hpp"

namespace selfsim {

int Diagram::add_node_impl(const std::string& id, std::optional<Tree> tree) {
  if (node_by_id_.count(id))
    throw std::invalid_argument("duplicate node id '" + id + "'");
  if (tree.has_value() != typed_)
    throw std::invalid_argument(
        typed_ ? "typed diagram node '" + id + "' needs a tree label"
               : "untyped diagram node '" + id + "' cannot carry a tree");
  int idx = static_cast<int>(nodes_.size());
  nodes_.push_back({id, std::move(tree)});
  node_by_id_.emplace(id, idx);
  return idx;
}

int Diagram::add_node(const std::string& id) {
  return add_node_impl(id, std::nullopt);
}

int Diagram::add_node(const std::string& id, Tree tree) {
  return add_node_impl(id, std::move(tree));
}

int Diagram::add_edge_impl(const std::string& id, const std::string& src,
                           const std::string& tgt,
                           std::variant<ArrowTerm, MonoidTerm> label) {
  if (edge_by_id_.count(id))
    throw std::invalid_argument("duplicate edge id '" + id + "'");
  int s = node_index(src);
  int t = node_index(tgt);
  if (s < 0) throw std::invalid_argument("unknown node '" + src + "'");
  if (t < 0) throw std::invalid_argument("unknown node '" + tgt + "'");
  if (std::holds_alternative<ArrowTerm>(label) != typed_)
    throw std::invalid_argument(
        "edge '" + id + "' label does not match the diagram's typedness");
  int idx = static_cast<int>(edges_.size());
  edges_.push_back({id, s, t, std::move(label)});
  edge_by_id_.emplace(id, idx);
  return idx;
}

int Diagram::add_edge(const std::string& id, const std::string& src,
                      const std::string& tgt, ArrowTerm label) {
  return add_edge_impl(id, src, tgt, std::move(label));
}

int Diagram::add_edge(const std::string& id, const std::string& src,
                      const std::string& tgt, MonoidTerm label) {
  return add_edge_impl(id, src, tgt, std::move(label));
}

int Diagram::node_index(const std::string& id) const {
  auto it = node_by_id_.find(id);
  return it == node_by_id_.end() ? -1 : it->second;
}

int Diagram::edge_index(const std::string& id) const {
  auto it = edge_by_id_.find(id);
  return it == edge_by_id_.end() ? -1 : it->second;
}

const Tree& Diagram::node_tree(int node) const {
  assert(nodes_[node].tree.has_value());
  return *nodes_[node].tree;
}

const ArrowTerm& Diagram::arrow_label(int edge) const {
  return std::get<ArrowTerm>(edges_[edge].label);
}

const MonoidTerm& Diagram::monoid_label(int edge) const {
  return std::get<MonoidTerm>(edges_[edge].label);
}

LiftedType lift(const MonoidTerm& m, VarSupply& vars) {
  using Kind = MonoidTerm::Kind;
  switch (m.kind()) {
    case Kind::One: {
      TreePattern v = vars.fresh_var();
      return {v, v, {}};
    }
    case Kind::Alpha: {
      TreePattern a = vars.fresh_var(), b = vars.fresh_var(),
                  c = vars.fresh_var();
      return {TreePattern::pair(a, TreePattern::pair(b, c)),
              TreePattern::pair(TreePattern::pair(a, b), c),
              {}};
    }
    case Kind::AlphaInv: {
      TreePattern a = vars.fresh_var(), b = vars.fresh_var(),
                  c = vars.fresh_var();
      return {TreePattern::pair(TreePattern::pair(a, b), c),
              TreePattern::pair(a, TreePattern::pair(b, c)),
              {}};
    }
    case Kind::Atom:
      throw AtomPresent(m.atom_name());
    case Kind::Star: {
      LiftedType f = lift(m.fst(), vars);
      LiftedType g = lift(m.snd(), vars);
      std::vector<PatternEq> eqs = std::move(f.constraints);
      eqs.insert(eqs.end(), g.constraints.begin(), g.constraints.end());
      return {TreePattern::pair(f.src, g.src), TreePattern::pair(f.tgt, g.tgt),
              std::move(eqs)};
    }
    case Kind::Compose: {
      LiftedType f = lift(m.before(), vars);
      LiftedType g = lift(m.after(), vars);
      std::vector<PatternEq> eqs = std::move(f.constraints);
      eqs.insert(eqs.end(), g.constraints.begin(), g.constraints.end());
      eqs.push_back({f.tgt, g.src});
      return {std::move(f.src), std::move(g.tgt), std::move(eqs)};
    }
    case Kind::Inv: {
      LiftedType f = lift(m.arg(), vars);
      return {std::move(f.tgt), std::move(f.src), std::move(f.constraints)};
    }
  }
  assert(false);
  return {};
}

namespace {

// Flattened edge labels, after typechecking typed diagrams.
std::variant<std::vector<MonoidTerm>, IllTyped> edge_monoid_terms(
    const Diagram& d) {
  std::vector<MonoidTerm> out;
  out.reserve(d.edges().size());
  for (std::size_t i = 0; i < d.edges().size(); ++i) {
    const DiagramEdge& e = d.edges()[i];
    if (d.is_typed()) {
      const ArrowTerm& f = d.arrow_label(static_cast<int>(i));
      Tree s, t;
      try {
        s = f.src();
        t = f.tgt();
      } catch (const TypeError& ex) {
        return IllTyped{"edge '" + e.id + "': " + ex.what()};
      }
      if (s != d.node_tree(e.src))
        return IllTyped{"edge '" + e.id + "': source " + print_tree(s) +
                        " does not match node '" + d.nodes()[e.src].id +
                        "' labelled " + print_tree(d.node_tree(e.src))};
      if (t != d.node_tree(e.tgt))
        return IllTyped{"edge '" + e.id + "': target " + print_tree(t) +
                        " does not match node '" + d.nodes()[e.tgt].id +
                        "' labelled " + print_tree(d.node_tree(e.tgt))};
      out.push_back(flatten(f));
    } else {
      out.push_back(d.monoid_label(static_cast<int>(i)));
    }
  }
  return out;
}

// Unification-based coherence guarantee; nullopt when atoms are present or
// no consistent typing exists. Node i gets metavariable i, so the witness
// substitution is reproducible.
std::optional<Guaranteed> try_guarantee(const Diagram& d,
                                        const std::vector<MonoidTerm>& terms) {
  for (const MonoidTerm& m : terms)
    if (m.has_atom()) return std::nullopt;
  VarSupply vars;
  std::vector<TreePattern> node_var;
  node_var.reserve(d.nodes().size());
  for (std::size_t i = 0; i < d.nodes().size(); ++i)
    node_var.push_back(vars.fresh_var());
  std::vector<PatternEq> eqs;
  for (std::size_t i = 0; i < d.edges().size(); ++i) {
    LiftedType lifted = lift(terms[i], vars);
    for (PatternEq& eq : lifted.constraints) eqs.push_back(std::move(eq));
    eqs.push_back({node_var[d.edges()[i].src], lifted.src});
    eqs.push_back({node_var[d.edges()[i].tgt], lifted.tgt});
  }
  std::optional<Substitution> mgu = unify(eqs);
  if (!mgu) return std::nullopt;
  Guaranteed g{std::move(*mgu), {}};
  for (std::size_t i = 0; i < d.nodes().size(); ++i)
    g.node_trees[d.nodes()[i].id] =
        g.witness.apply(node_var[i]).to_tree_vars_as_leaf();
  return g;
}

void collect_paths(const Diagram& d, int cur, int to, int from,
                   std::vector<bool>& visited, std::vector<int>& path,
                   std::vector<std::vector<int>>& out) {
  for (std::size_t i = 0; i < d.edges().size(); ++i) {
    const DiagramEdge& e = d.edges()[i];
    if (e.src != cur) continue;
    if (e.tgt == to) {
      // A simple path ends the first time it reaches its endpoint.
      path.push_back(static_cast<int>(i));
      out.push_back(path);
      path.pop_back();
      continue;
    }
    if (e.tgt == from || visited[e.tgt]) continue;
    visited[e.tgt] = true;
    path.push_back(static_cast<int>(i));
    collect_paths(d, e.tgt, to, from, visited, path, out);
    path.pop_back();
    visited[e.tgt] = false;
  }
}

std::vector<MonoidTerm> path_terms(const std::vector<MonoidTerm>& terms,
                                   const std::vector<int>& path) {
  std::vector<MonoidTerm> out;
  out.reserve(path.size());
  for (int e : path) out.push_back(terms[e]);
  return out;
}

std::vector<std::string> path_ids(const Diagram& d,
                                  const std::vector<int>& path) {
  std::vector<std::string> out;
  out.reserve(path.size());
  for (int e : path) out.push_back(d.edges()[e].id);
  return out;
}

Refuted make_refuted(const Diagram& d, const std::vector<int>& lhs,
                     const std::vector<int>& rhs, const ResidueMap& lv,
                     const ResidueMap& rv, std::uint64_t n) {
  return Refuted{path_ids(d, lhs), path_ids(d, rhs), n, lv.apply(n),
                 rv.apply(n)};
}

std::optional<Refuted> refute_pair(const Diagram& d,
                                   const std::vector<MonoidTerm>& terms,
                                   const std::vector<int>& lhs,
                                   const std::vector<int>& rhs,
                                   const AtomEnv& env, std::uint64_t bound) {
  ResidueMap lv = eval_monoid_path(path_terms(terms, lhs), env);
  ResidueMap rv = eval_monoid_path(path_terms(terms, rhs), env);
  if (lv == rv) return std::nullopt;
  for (std::uint64_t n = 0; n < bound; ++n)
    if (lv.apply(n) != rv.apply(n)) return make_refuted(d, lhs, rhs, lv, rv, n);
  return std::nullopt;
}

}  // namespace

std::vector<std::vector<int>> simple_paths(const Diagram& d, int from,
                                           int to) {
  std::vector<std::vector<int>> out;
  std::vector<bool> visited(d.nodes().size(), false);
  std::vector<int> path;
  collect_paths(d, from, to, from, visited, path, out);
  return out;
}

std::vector<std::pair<std::vector<int>, std::vector<int>>>
parallel_path_pairs(const Diagram& d) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  int n = static_cast<int>(d.nodes().size());
  for (int u = 0; u < n; ++u) {
    for (int w = 0; w < n; ++w) {
      std::vector<std::vector<int>> paths = simple_paths(d, u, w);
      for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = i + 1; j < paths.size(); ++j)
          out.emplace_back(paths[i], paths[j]);
    }
  }
  return out;
}

Verdict decide(const Diagram& d, const AtomEnv& env, std::uint64_t bound) {
  auto flat = edge_monoid_terms(d);
  if (std::holds_alternative<IllTyped>(flat))
    return std::get<IllTyped>(std::move(flat));
  const std::vector<MonoidTerm>& terms = std::get<0>(flat);
  if (std::optional<Guaranteed> g = try_guarantee(d, terms))
    return std::move(*g);
  for (const auto& [lhs, rhs] : parallel_path_pairs(d))
    if (std::optional<Refuted> r = refute_pair(d, terms, lhs, rhs, env, bound))
      return std::move(*r);
  return ModelCommutesUnproven{bound};
}

namespace {

std::vector<int> resolve_path(const Diagram& d,
                              const std::vector<std::string>& ids) {
  if (ids.empty()) throw std::invalid_argument("empty path");
  std::vector<int> out;
  out.reserve(ids.size());
  for (const std::string& id : ids) {
    int e = d.edge_index(id);
    if (e < 0) throw std::invalid_argument("unknown edge '" + id + "'");
    if (!out.empty() && d.edges()[out.back()].tgt != d.edges()[e].src)
      throw std::invalid_argument("path breaks between '" +
                                  d.edges()[out.back()].id + "' and '" + id +
                                  "'");
    out.push_back(e);
  }
  return out;
}

}  // namespace

Verdict decide_paths(const Diagram& d, const std::vector<std::string>& lhs,
                     const std::vector<std::string>& rhs, const AtomEnv& env,
                     std::uint64_t bound) {
  std::vector<int> le = resolve_path(d, lhs);
  std::vector<int> re = resolve_path(d, rhs);
  if (d.edges()[le.front()].src != d.edges()[re.front()].src ||
      d.edges()[le.back()].tgt != d.edges()[re.back()].tgt)
    throw std::invalid_argument("paths are not parallel");

  // Subdiagram induced by the two paths.
  Diagram sub(d.is_typed());
  std::set<int> edge_set(le.begin(), le.end());
  edge_set.insert(re.begin(), re.end());
  std::set<int> node_set;
  for (int e : edge_set) {
    node_set.insert(d.edges()[e].src);
    node_set.insert(d.edges()[e].tgt);
  }
  for (int nidx : node_set) {
    const DiagramNode& n = d.nodes()[nidx];
    if (d.is_typed())
      sub.add_node(n.id, *n.tree);
    else
      sub.add_node(n.id);
  }
  for (std::size_t i = 0; i < d.edges().size(); ++i) {
    if (!edge_set.count(static_cast<int>(i))) continue;
    const DiagramEdge& e = d.edges()[i];
    if (d.is_typed())
      sub.add_edge(e.id, d.nodes()[e.src].id, d.nodes()[e.tgt].id,
                   d.arrow_label(static_cast<int>(i)));
    else
      sub.add_edge(e.id, d.nodes()[e.src].id, d.nodes()[e.tgt].id,
                   d.monoid_label(static_cast<int>(i)));
  }

  auto flat = edge_monoid_terms(sub);
  if (std::holds_alternative<IllTyped>(flat))
    return std::get<IllTyped>(std::move(flat));
  const std::vector<MonoidTerm>& terms = std::get<0>(flat);
  if (std::optional<Guaranteed> g = try_guarantee(sub, terms))
    return std::move(*g);

  std::vector<int> sl, sr;
  for (int e : le) sl.push_back(sub.edge_index(d.edges()[e].id));
  for (int e : re) sr.push_back(sub.edge_index(d.edges()[e].id));
  if (std::optional<Refuted> r = refute_pair(sub, terms, sl, sr, env, bound))
    return std::move(*r);
  return ModelCommutesUnproven{bound};
}

Diagram strictness_witness(const Diagram& d, const Guaranteed& g) {
  Diagram out(true);
  for (const DiagramNode& n : d.nodes()) {
    auto it = g.node_trees.find(n.id);
    if (it == g.node_trees.end())
      throw std::logic_error("witness lacks a tree for node '" + n.id + "'");
    out.add_node(n.id, it->second);
  }
  for (const DiagramEdge& e : d.edges()) {
    const Tree& s = g.node_trees.at(d.nodes()[e.src].id);
    const Tree& t = g.node_trees.at(d.nodes()[e.tgt].id);
    std::optional<ArrowTerm> w = wsub(s, t);
    if (!w)
      throw std::logic_error("witness trees for edge '" + e.id +
                             "' have different ranks");
    out.add_edge(e.id, d.nodes()[e.src].id, d.nodes()[e.tgt].id,
                 std::move(*w));
  }
  return out;
}

GraphIso GraphIso::identity(const Diagram& d) {
  GraphIso iso;
  for (const DiagramNode& n : d.nodes()) iso.node_map.emplace(n.id, n.id);
  for (const DiagramEdge& e : d.edges()) iso.edge_map.emplace(e.id, e.id);
  return iso;
}

bool sim_equivalent(const Diagram& d1, const Diagram& d2, const GraphIso& iso,
                    const AtomEnv& env, std::uint64_t bound) {
  if (!d1.is_typed() || !d2.is_typed())
    throw std::invalid_argument("sim_equivalent requires typed diagrams");

  // Check the maps form an isomorphism of underlying graphs.
  if (iso.node_map.size() != d1.nodes().size() ||
      d1.nodes().size() != d2.nodes().size() ||
      iso.edge_map.size() != d1.edges().size() ||
      d1.edges().size() != d2.edges().size())
    throw NotGraphIso("node/edge counts do not match");
  std::set<int> node_targets, edge_targets;
  for (const auto& [a, b] : iso.node_map) {
    if (d1.node_index(a) < 0 || d2.node_index(b) < 0)
      throw NotGraphIso("node map mentions an unknown node");
    node_targets.insert(d2.node_index(b));
  }
  if (node_targets.size() != d2.nodes().size())
    throw NotGraphIso("node map is not a bijection");
  for (const auto& [a, b] : iso.edge_map) {
    int e1 = d1.edge_index(a);
    int e2 = d2.edge_index(b);
    if (e1 < 0 || e2 < 0) throw NotGraphIso("edge map mentions an unknown edge");
    edge_targets.insert(e2);
    const std::string& s1 = d1.nodes()[d1.edges()[e1].src].id;
    const std::string& t1 = d1.nodes()[d1.edges()[e1].tgt].id;
    if (iso.node_map.at(s1) != d2.nodes()[d2.edges()[e2].src].id ||
        iso.node_map.at(t1) != d2.nodes()[d2.edges()[e2].tgt].id)
      throw NotGraphIso("edge '" + a + "' endpoints do not correspond");
  }
  if (edge_targets.size() != d2.edges().size())
    throw NotGraphIso("edge map is not a bijection");

  // One square per edge: verticals are the canonical self-similarity
  // arrows from the d2 trees up to the d1 trees.
  for (const auto& [e1_id, e2_id] : iso.edge_map) {
    int e1 = d1.edge_index(e1_id);
    int e2 = d2.edge_index(e2_id);
    int s1 = d1.edges()[e1].src, t1 = d1.edges()[e1].tgt;
    int s2 = d2.edges()[e2].src, t2 = d2.edges()[e2].tgt;

    Diagram square(true);
    bool loop = (s1 == t1);
    square.add_node("lo_s", d2.node_tree(s2));
    if (!loop) square.add_node("lo_t", d2.node_tree(t2));
    square.add_node("hi_s", d1.node_tree(s1));
    if (!loop) square.add_node("hi_t", d1.node_tree(t1));
    const std::string lo_t = loop ? "lo_s" : "lo_t";
    const std::string hi_t = loop ? "hi_s" : "hi_t";
    square.add_edge("bottom", "lo_s", lo_t, d2.arrow_label(e2));
    square.add_edge("top", "hi_s", hi_t, d1.arrow_label(e1));
    square.add_edge("up_s", "lo_s", "hi_s",
                    xsub(d2.node_tree(s2), d1.node_tree(s1)));
    square.add_edge("up_t", lo_t, hi_t,
                    xsub(d2.node_tree(t2), d1.node_tree(t1)));

    Verdict v = decide_paths(square, {"bottom", "up_t"}, {"up_s", "top"}, env,
                             bound);
    if (std::holds_alternative<Refuted>(v) ||
        std::holds_alternative<IllTyped>(v))
      return false;
  }
  return true;
}

std::string print_verdict(const Verdict& v) {
  if (std::holds_alternative<Guaranteed>(v)) return "GUARANTEED";
  if (const Refuted* r = std::get_if<Refuted>(&v)) {
    auto show = [](const std::optional<std::uint64_t>& x) {
      return x ? std::to_string(*x) : std::string("-");
    };
    return "REFUTED n=" + std::to_string(r->witness) + " lhs=" +
           show(r->lhs_value) + " rhs=" + show(r->rhs_value);
  }
  if (const ModelCommutesUnproven* u = std::get_if<ModelCommutesUnproven>(&v))
    return "MODEL_COMMUTES_UNPROVEN bound=" + std::to_string(u->bound);
  return "ILL_TYPED " + std::get<IllTyped>(v).detail;
}

}  // namespace selfsim
