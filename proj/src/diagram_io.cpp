#include "selfsim/diagram_io.hpp"

#include <cassert>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "selfsim/errors.hpp"
#include "selfsim/unify.hpp"

namespace selfsim {

namespace {

// Words that can never name an atom, node, or edge.
const std::set<std::string> kReservedWords = {
    "id",   "tau", "code",   "decode", "inv",   "one",
    "alpha", "x",  "object", "node",   "arrow", "check", "all"};

// ---------------------------------------------------------------------
// Surface terms: shared syntax for typed and untyped edge labels.

struct SurfaceTerm {
  enum class Kind { Call, Name, Tensor, Compose, Inv };
  Kind kind;
  std::string name;               // Call head or atom name
  std::vector<Tree> trees;        // Call arguments
  std::vector<SurfaceTerm> kids;  // Tensor/Compose: two; Inv: one
  std::size_t pos = 0;
};

struct Lexer {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected identifier");
    return s.substr(start, pos - start);
  }

  Tree tree() {
    skip_ws();
    if (pos < s.size() && s[pos] == 'x' &&
        (pos + 1 >= s.size() ||
         (!std::isalnum(static_cast<unsigned char>(s[pos + 1])) &&
          s[pos + 1] != '_'))) {
      ++pos;
      return Tree::leaf();
    }
    if (eat('(')) {
      Tree l = tree();
      expect('*');
      Tree r = tree();
      expect(')');
      return Tree::pair(std::move(l), std::move(r));
    }
    fail("expected tree");
  }

  SurfaceTerm atom_term() {
    skip_ws();
    std::size_t start = pos;
    if (eat('(')) {
      SurfaceTerm t = compose_term();
      expect(')');
      return t;
    }
    std::string name = ident();
    if (name == "inv") {
      expect('(');
      SurfaceTerm inner = compose_term();
      expect(')');
      return {SurfaceTerm::Kind::Inv, {}, {}, {std::move(inner)}, start};
    }
    if (name == "id" || name == "code" || name == "decode") {
      expect('(');
      Tree t = tree();
      expect(')');
      return {SurfaceTerm::Kind::Call, name, {std::move(t)}, {}, start};
    }
    if (name == "tau") {
      expect('(');
      Tree a = tree();
      expect(',');
      Tree b = tree();
      expect(',');
      Tree c = tree();
      expect(')');
      return {SurfaceTerm::Kind::Call,
              name,
              {std::move(a), std::move(b), std::move(c)},
              {},
              start};
    }
    if (name != "one" && name != "alpha" && kReservedWords.count(name) > 0)
      fail("'" + name + "' is reserved and cannot name an atom");
    return {SurfaceTerm::Kind::Name, name, {}, {}, start};
  }

  SurfaceTerm tensor_term() {
    SurfaceTerm t = atom_term();
    while (peek() == '#') {
      eat('#');
      SurfaceTerm rhs = atom_term();
      std::size_t at = t.pos;
      t = {SurfaceTerm::Kind::Tensor,
           {},
           {},
           {std::move(t), std::move(rhs)},
           at};
    }
    return t;
  }

  SurfaceTerm compose_term() {
    SurfaceTerm t = tensor_term();
    while (peek() == '.') {
      eat('.');
      SurfaceTerm rhs = tensor_term();
      std::size_t at = t.pos;
      t = {SurfaceTerm::Kind::Compose,
           {},
           {},
           {std::move(t), std::move(rhs)},
           at};
    }
    return t;
  }
};

MonoidTerm to_monoid(const SurfaceTerm& t) {
  switch (t.kind) {
    case SurfaceTerm::Kind::Call:
      throw ParseError("typed generator '" + t.name +
                           "' is not allowed in an untyped diagram",
                       t.pos);
    case SurfaceTerm::Kind::Name:
      if (t.name == "one") return MonoidTerm::one();
      if (t.name == "alpha") return MonoidTerm::alpha();
      return MonoidTerm::atom(t.name);
    case SurfaceTerm::Kind::Tensor:
      return MonoidTerm::star(to_monoid(t.kids[0]), to_monoid(t.kids[1]));
    case SurfaceTerm::Kind::Compose:
      // "g . f" applies f first.
      return MonoidTerm::compose(to_monoid(t.kids[0]), to_monoid(t.kids[1]));
    case SurfaceTerm::Kind::Inv: {
      const SurfaceTerm& a = t.kids[0];
      if (a.kind == SurfaceTerm::Kind::Name && a.name == "alpha")
        return MonoidTerm::alpha_inv();
      return MonoidTerm::inv(to_monoid(a));
    }
  }
  assert(false);
  return MonoidTerm::one();
}

// Pattern-level typing of a typed surface term: each atom name shares one
// (src, tgt) variable pair across the whole file.
struct AtomTypeVars {
  VarSupply vars;
  std::map<std::string, std::pair<TreePattern, TreePattern>> by_name;
  std::vector<PatternEq> eqs;

  const std::pair<TreePattern, TreePattern>& type_of(const std::string& n) {
    auto it = by_name.find(n);
    if (it == by_name.end())
      it = by_name.emplace(n, std::make_pair(vars.fresh_var(),
                                             vars.fresh_var())).first;
    return it->second;
  }
};

std::pair<TreePattern, TreePattern> surface_type(const SurfaceTerm& t,
                                                 AtomTypeVars& cx) {
  switch (t.kind) {
    case SurfaceTerm::Kind::Call: {
      if (t.name == "id") {
        TreePattern p = TreePattern::from_tree(t.trees[0]);
        return {p, p};
      }
      if (t.name == "tau") {
        TreePattern a = TreePattern::from_tree(t.trees[0]);
        TreePattern b = TreePattern::from_tree(t.trees[1]);
        TreePattern c = TreePattern::from_tree(t.trees[2]);
        return {TreePattern::pair(a, TreePattern::pair(b, c)),
                TreePattern::pair(TreePattern::pair(a, b), c)};
      }
      if (t.name == "code")
        return {TreePattern::from_tree(t.trees[0]), TreePattern::leaf()};
      assert(t.name == "decode");
      return {TreePattern::leaf(), TreePattern::from_tree(t.trees[0])};
    }
    case SurfaceTerm::Kind::Name: {
      if (t.name == "one" || t.name == "alpha")
        throw ParseError("untyped constant '" + t.name +
                             "' is not allowed in a typed diagram",
                         t.pos);
      const auto& [s, g] = cx.type_of(t.name);
      return {s, g};
    }
    case SurfaceTerm::Kind::Tensor: {
      auto [s1, t1] = surface_type(t.kids[0], cx);
      auto [s2, t2] = surface_type(t.kids[1], cx);
      return {TreePattern::pair(s1, s2), TreePattern::pair(t1, t2)};
    }
    case SurfaceTerm::Kind::Compose: {
      auto [sg, tg] = surface_type(t.kids[0], cx);
      auto [sf, tf] = surface_type(t.kids[1], cx);
      cx.eqs.push_back({tf, sg});
      return {sf, tg};
    }
    case SurfaceTerm::Kind::Inv: {
      auto [s, g] = surface_type(t.kids[0], cx);
      return {g, s};
    }
  }
  assert(false);
  return {};
}

ArrowTerm to_arrow(const SurfaceTerm& t, const Substitution& sub,
                   AtomTypeVars& cx) {
  switch (t.kind) {
    case SurfaceTerm::Kind::Call: {
      if (t.name == "id") return ArrowTerm::id(t.trees[0]);
      if (t.name == "tau")
        return ArrowTerm::tau(t.trees[0], t.trees[1], t.trees[2]);
      if (t.name == "code") return ArrowTerm::code(t.trees[0]);
      return ArrowTerm::decode(t.trees[0]);
    }
    case SurfaceTerm::Kind::Name: {
      const auto& [s, g] = cx.type_of(t.name);
      return ArrowTerm::atom(t.name, sub.apply(s).to_tree_vars_as_leaf(),
                             sub.apply(g).to_tree_vars_as_leaf());
    }
    case SurfaceTerm::Kind::Tensor:
      return ArrowTerm::tensor(to_arrow(t.kids[0], sub, cx),
                               to_arrow(t.kids[1], sub, cx));
    case SurfaceTerm::Kind::Compose:
      return ArrowTerm::compose(to_arrow(t.kids[0], sub, cx),
                                to_arrow(t.kids[1], sub, cx));
    case SurfaceTerm::Kind::Inv: {
      const SurfaceTerm& a = t.kids[0];
      if (a.kind == SurfaceTerm::Kind::Call && a.name == "tau")
        return ArrowTerm::tau_inv(a.trees[0], a.trees[1], a.trees[2]);
      return ArrowTerm::inv(to_arrow(a, sub, cx));
    }
  }
  assert(false);
  return ArrowTerm::id(Tree::leaf());
}

// ---------------------------------------------------------------------
// Diagram files.

struct RawNode {
  std::string id;
  std::optional<Tree> tree;
  std::size_t line;
};

struct RawEdge {
  std::string id;
  std::string src, tgt;
  SurfaceTerm term;
  std::size_t line;
};

[[noreturn]] void fail_line(std::size_t line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg, line);
}

std::string checked_id(Lexer& lx) {
  std::string id = lx.ident();
  if (kReservedWords.count(id) > 0)
    lx.fail("'" + id + "' is reserved and cannot be used as a name");
  return id;
}

std::vector<std::string> parse_path_expr(Lexer& lx) {
  std::vector<std::string> out;
  out.push_back(lx.ident());
  while (lx.eat(';')) out.push_back(lx.ident());
  return out;
}

}  // namespace

DiagramFile parse_diagram_file(const std::string& text) {
  std::vector<RawNode> raw_nodes;
  std::vector<RawEdge> raw_edges;
  std::vector<CheckDirective> checks;

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    Lexer lx{line};
    if (lx.eof() || lx.peek() == '#') continue;
    try {
      std::string head = lx.ident();
      if (head == "object") {
        std::string id = checked_id(lx);
        lx.expect('=');
        Tree t = lx.tree();
        if (!lx.eof()) lx.fail("trailing input");
        raw_nodes.push_back({id, std::move(t), lineno});
      } else if (head == "node") {
        std::string id = checked_id(lx);
        if (!lx.eof()) lx.fail("trailing input");
        raw_nodes.push_back({id, std::nullopt, lineno});
      } else if (head == "arrow") {
        std::string id = checked_id(lx);
        lx.expect(':');
        std::string src = checked_id(lx);
        lx.expect('-');
        lx.expect('>');
        std::string tgt = checked_id(lx);
        lx.expect('=');
        SurfaceTerm term = lx.compose_term();
        if (!lx.eof()) lx.fail("trailing input");
        raw_edges.push_back({id, src, tgt, std::move(term), lineno});
      } else if (head == "check") {
        if (lx.peek() == 'a') {
          std::size_t save = lx.pos;
          std::string word = lx.ident();
          if (word == "all") {
            if (!lx.eof()) lx.fail("trailing input");
            checks.push_back({true, {}, {}, lineno});
            continue;
          }
          lx.pos = save;
        }
        CheckDirective c;
        c.lhs = parse_path_expr(lx);
        lx.expect('=');
        c.rhs = parse_path_expr(lx);
        if (!lx.eof()) lx.fail("trailing input");
        c.line = lineno;
        checks.push_back(std::move(c));
      } else {
        lx.fail("unknown directive '" + head + "'");
      }
    } catch (const ParseError& e) {
      fail_line(lineno, e.what());
    }
  }

  if (raw_nodes.empty()) fail_line(lineno, "diagram declares no nodes");
  bool typed = raw_nodes.front().tree.has_value();
  for (const RawNode& n : raw_nodes)
    if (n.tree.has_value() != typed)
      fail_line(n.line, "cannot mix typed 'object' and untyped 'node'");

  DiagramFile file{Diagram(typed), std::move(checks)};
  for (RawNode& n : raw_nodes) {
    try {
      if (typed)
        file.diagram.add_node(n.id, std::move(*n.tree));
      else
        file.diagram.add_node(n.id);
    } catch (const std::invalid_argument& e) {
      fail_line(n.line, e.what());
    }
  }

  if (typed) {
    // Infer atom types across the whole file before building any term.
    AtomTypeVars cx;
    std::vector<std::pair<TreePattern, TreePattern>> edge_types;
    for (const RawEdge& e : raw_edges) {
      try {
        edge_types.push_back(surface_type(e.term, cx));
      } catch (const ParseError& pe) {
        fail_line(e.line, pe.what());
      }
      int s = file.diagram.node_index(e.src);
      int t = file.diagram.node_index(e.tgt);
      if (s < 0) fail_line(e.line, "unknown node '" + e.src + "'");
      if (t < 0) fail_line(e.line, "unknown node '" + e.tgt + "'");
      cx.eqs.push_back({edge_types.back().first,
                        TreePattern::from_tree(file.diagram.node_tree(s))});
      cx.eqs.push_back({edge_types.back().second,
                        TreePattern::from_tree(file.diagram.node_tree(t))});
    }
    std::optional<Substitution> sub = unify(cx.eqs);
    if (!sub)
      fail_line(raw_edges.empty() ? 1 : raw_edges.front().line,
                "arrow labels cannot be typed consistently against the "
                "declared objects");
    for (std::size_t i = 0; i < raw_edges.size(); ++i) {
      const RawEdge& e = raw_edges[i];
      try {
        file.diagram.add_edge(e.id, e.src, e.tgt, to_arrow(e.term, *sub, cx));
      } catch (const std::exception& ex) {
        fail_line(e.line, ex.what());
      }
    }
  } else {
    for (const RawEdge& e : raw_edges) {
      try {
        file.diagram.add_edge(e.id, e.src, e.tgt, to_monoid(e.term));
      } catch (const std::exception& ex) {
        fail_line(e.line, ex.what());
      }
    }
  }

  for (const CheckDirective& c : file.checks) {
    if (c.all) continue;
    for (const auto* path : {&c.lhs, &c.rhs})
      for (const std::string& id : *path)
        if (file.diagram.edge_index(id) < 0)
          fail_line(c.line, "check references unknown edge '" + id + "'");
  }
  return file;
}

std::string print_diagram_file(const DiagramFile& file) {
  std::string out;
  const Diagram& d = file.diagram;
  for (const DiagramNode& n : d.nodes()) {
    if (d.is_typed())
      out += "object " + n.id + " = " + print_tree(*n.tree) + "\n";
    else
      out += "node " + n.id + "\n";
  }
  for (std::size_t i = 0; i < d.edges().size(); ++i) {
    const DiagramEdge& e = d.edges()[i];
    std::string label =
        d.is_typed() ? print_arrow_term(d.arrow_label(static_cast<int>(i)))
                     : print_monoid_term(d.monoid_label(static_cast<int>(i)));
    out += "arrow " + e.id + " : " + d.nodes()[e.src].id + " -> " +
           d.nodes()[e.tgt].id + " = " + label + "\n";
  }
  auto join = [](const std::vector<std::string>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i)
      s += (i ? ";" : "") + ids[i];
    return s;
  };
  for (const CheckDirective& c : file.checks) {
    if (c.all)
      out += "check all\n";
    else
      out += "check " + join(c.lhs) + " = " + join(c.rhs) + "\n";
  }
  return out;
}

MonoidTerm parse_monoid_term(const std::string& text) {
  Lexer lx{text};
  SurfaceTerm t = lx.compose_term();
  if (!lx.eof()) lx.fail("trailing input after term");
  return to_monoid(t);
}

AtomEnv parse_atom_env(const std::string& text) {
  AtomEnv env;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    Lexer lx{line};
    if (lx.eof() || lx.peek() == '#') continue;
    try {
      std::string name = lx.ident();
      lx.expect('=');
      lx.expect('{');
      std::vector<Piece> pieces;
      if (lx.peek() != '}') {
        do {
          Piece p;
          auto number = [&]() -> std::uint64_t {
            lx.skip_ws();
            std::size_t start = lx.pos;
            while (lx.pos < line.size() &&
                   std::isdigit(static_cast<unsigned char>(line[lx.pos])))
              ++lx.pos;
            if (lx.pos == start) lx.fail("expected number");
            return std::stoull(line.substr(start, lx.pos - start));
          };
          auto power_of_two = [&]() {
            std::uint64_t m = number();
            if (m == 0 || (m & (m - 1)) != 0)
              lx.fail("modulus must be a power of two");
            int k = 0;
            while ((std::uint64_t{1} << k) < m) ++k;
            return k;
          };
          p.r = number();
          lx.expect('/');
          p.k = power_of_two();
          lx.expect('-');
          lx.expect('>');
          p.rp = number();
          lx.expect('/');
          p.kp = power_of_two();
          pieces.push_back(p);
        } while (lx.eat(','));
      }
      lx.expect('}');
      if (!lx.eof()) lx.fail("trailing input");
      ResidueMap m;
      try {
        m = ResidueMap::from_pieces(std::move(pieces));
      } catch (const std::exception& ex) {
        lx.fail(std::string("invalid map for '") + name + "': " + ex.what());
      }
      if (!m.is_total_bijection())
        lx.fail("map bound to '" + name + "' is not a total bijection");
      env.bind(std::move(name), std::move(m));
    } catch (const ParseError& e) {
      fail_line(lineno, e.what());
    }
  }
  return env;
}

std::string render_dot(const Diagram& d) {
  std::string out = "digraph diagram {\n";
  for (const DiagramNode& n : d.nodes()) {
    out += "  \"" + n.id + "\" [label=\"" + n.id;
    if (n.tree) out += ": " + print_tree(*n.tree);
    out += "\"];\n";
  }
  for (std::size_t i = 0; i < d.edges().size(); ++i) {
    const DiagramEdge& e = d.edges()[i];
    std::string label =
        d.is_typed() ? print_arrow_term(d.arrow_label(static_cast<int>(i)))
                     : print_monoid_term(d.monoid_label(static_cast<int>(i)));
    out += "  \"" + d.nodes()[e.src].id + "\" -> \"" + d.nodes()[e.tgt].id +
           "\" [label=\"" + label + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace selfsim
