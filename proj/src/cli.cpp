#include "selfsim/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "selfsim/diagram.hpp"
#include "selfsim/diagram_io.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/matrix.hpp"

namespace selfsim::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

AtomEnv load_env(const std::string& path) {
  if (path.empty()) return {};
  return parse_atom_env(read_file(path));
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos)
    throw std::runtime_error("range must look like 0..16");
  std::uint64_t lo = std::stoull(text.substr(0, dots));
  std::uint64_t hi = std::stoull(text.substr(dots + 2));
  if (hi < lo) throw std::runtime_error("empty range");
  return {lo, hi};
}

int worst_exit(int a, int b) {
  // REFUTED (2) dominates UNPROVEN/errors (1) dominates GUARANTEED (0).
  if (a == 2 || b == 2) return 2;
  return std::max(a, b);
}

int verdict_exit(const Verdict& v) {
  if (std::holds_alternative<Guaranteed>(v)) return 0;
  if (std::holds_alternative<Refuted>(v)) return 2;
  return 1;
}

int run_check(const std::string& path, const std::string& env_path,
              std::uint64_t bound, std::ostream& out, std::ostream& err) {
  DiagramFile file = parse_diagram_file(read_file(path));
  AtomEnv env = load_env(env_path);
  // A file without check lines gets the bounded all-pairs sweep.
  std::vector<CheckDirective> checks = file.checks;
  if (checks.empty()) checks.push_back({true, {}, {}, 0});
  int code = 0;
  for (const CheckDirective& c : checks) {
    try {
      Verdict v = c.all
                      ? decide(file.diagram, env, bound)
                      : decide_paths(file.diagram, c.lhs, c.rhs, env, bound);
      out << print_verdict(v) << "\n";
      code = worst_exit(code, verdict_exit(v));
    } catch (const std::exception& ex) {
      err << "check at line " << c.line << ": " << ex.what() << "\n";
      code = worst_exit(code, 1);
    }
  }
  return code;
}

int run_eval(const std::string& term_text, const std::string& env_path,
             const std::string& range_text, std::ostream& out) {
  MonoidTerm term = parse_monoid_term(term_text);
  AtomEnv env = load_env(env_path);
  ResidueMap m = eval_monoid_term(term, env);
  auto [lo, hi] = parse_range(range_text);
  for (std::uint64_t n = lo; n < hi; ++n) {
    out << n << "\t";
    if (auto v = m.apply(n))
      out << *v;
    else
      out << "-";
    out << "\n";
  }
  return 0;
}

int run_dot(const std::string& path, std::ostream& out) {
  DiagramFile file = parse_diagram_file(read_file(path));
  out << render_dot(file.diagram);
  return 0;
}

int run_matrix_demo(std::uint64_t seed, std::size_t size, std::ostream& out) {
  TruncMatrix a = random01_matrix(seed, size);
  TruncMatrix b = random01_matrix(seed + 1, size);
  TruncMatrix c = random01_matrix(seed + 2, size);
  bool blocks_assoc =
      block_sum(block_sum(a, b), c) == block_sum(a, block_sum(b, c));
  bool inter_differ = non_strictness_witness(seed, size);
  out << "seed=" << seed << " size=" << size << "\n";
  out << "block_sum strictly associative: " << (blocks_assoc ? "yes" : "no")
      << "\n";
  out << "interleave_sum nestings differ: " << (inter_differ ? "yes" : "no")
      << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"decision tool for self-similarity and associativity diagrams",
               "selfsim"};
  app.require_subcommand(1);

  std::string path, env_path, term_text, range_text = "0..16";
  std::uint64_t bound = kDefaultRefuteBound;
  std::uint64_t seed = 1;
  std::size_t size = 8;

  CLI::App* check = app.add_subcommand(
      "check", "run the decision pipeline over a diagram file");
  check->add_option("file", path, "diagram file")->required();
  check->add_option("--refute-bound", bound, "largest input scanned")
      ->capture_default_str();
  check->add_option("--env", env_path, "atom environment file");

  CLI::App* eval =
      app.add_subcommand("eval", "evaluate a monoid term pointwise");
  eval->add_option("term", term_text, "term, e.g. \"alpha . inv(alpha)\"")
      ->required();
  eval->add_option("--range", range_text, "half-open input range")
      ->capture_default_str();
  eval->add_option("--env", env_path, "atom environment file");

  CLI::App* dot =
      app.add_subcommand("dot", "render a diagram file as DOT on stdout");
  dot->add_option("file", path, "diagram file")->required();

  CLI::App* demo = app.add_subcommand(
      "matrix-demo", "block sums associate strictly, interleavings do not");
  demo->add_option("--seed", seed, "random seed")->capture_default_str();
  demo->add_option("--size", size, "truncation size")->capture_default_str();

  std::vector<const char*> argv;
  argv.push_back("selfsim");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()),
              const_cast<char**>(argv.data()));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (check->parsed()) return run_check(path, env_path, bound, out, err);
    if (eval->parsed()) return run_eval(term_text, env_path, range_text, out);
    if (dot->parsed()) return run_dot(path, out);
    return run_matrix_demo(seed, size, out);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
}

}  // namespace selfsim::cli
