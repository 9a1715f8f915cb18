#pragma once

#include <stdexcept>
#include <string>

namespace selfsim {

// Malformed textual input. `pos` is a byte offset into the parsed string;
// the diagram-file reader rewrites it into a line number.
struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(std::string msg, std::size_t pos_)
      : std::runtime_error(std::move(msg)), pos(pos_) {}
};

// Source/target trees of a composite do not meet, or an edge label does not
// match its endpoints.
struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Formal inverse requested of a term containing a non-invertible atom.
struct InvertNonInvertible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An atom was evaluated without a binding in the environment.
struct MissingAtomBinding : std::runtime_error {
  explicit MissingAtomBinding(const std::string& name)
      : std::runtime_error("no binding for atom '" + name + "'") {}
};

// lift() applied to a term containing an atom.
struct AtomPresent : std::runtime_error {
  explicit AtomPresent(const std::string& name)
      : std::runtime_error("term contains atom '" + name +
                           "', which has no canonical lift") {}
};

// The node/edge maps handed to sim_equivalent are not a graph isomorphism.
struct NotGraphIso : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace selfsim
