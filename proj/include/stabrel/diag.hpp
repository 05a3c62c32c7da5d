#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabrel/stab.hpp"

namespace stabrel {

enum class Layer { affine, doubled };
std::string to_string(Layer l);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct Endpoint {
  enum class Kind { node_in, node_out, boundary_in, boundary_out };
  Kind kind;
  std::size_t node = 0;  // node id, unused for boundary slots
  std::size_t port = 0;

  bool is_source() const { return kind == Kind::node_out || kind == Kind::boundary_in; }
  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

std::string to_string(const Endpoint& e);

struct Diagram;

struct Node {
  std::size_t id;
  std::string kind;
  Phase phase;
  std::size_t arity_in = 1;
  std::size_t arity_out = 1;
  std::string file;                     // box only, as written
  std::shared_ptr<const Diagram> box;   // box only

  WireTypes in_types(Layer layer) const;
  WireTypes out_types(Layer layer) const;
};

// Wires always run from a source (node output or input slot) to a sink
// (node input or output slot).
struct Wire {
  Endpoint from;
  Endpoint to;
  friend auto operator<=>(const Wire&, const Wire&) = default;
};

struct Diagram {
  Prime p{2};
  Layer layer = Layer::affine;
  std::vector<Node> nodes;
  std::vector<Wire> wires;
  WireTypes in_types;
  WireTypes out_types;

  const Node& node(std::size_t id) const;
};

// Boxes are resolved relative to base_dir. A given prime replaces the header's.
Diagram parse(const std::string& text, const std::filesystem::path& base_dir = {},
              std::optional<Prime> prime = std::nullopt);
Diagram parse_file(const std::filesystem::path& path, std::optional<Prime> prime = std::nullopt);

// Throws std::invalid_argument on a structurally invalid diagram.
void validate(const Diagram& d);

// The affine layer evaluates to an all-classical relation.
GradedRelation evaluate(const Diagram& d);
AffineRelation evaluate_affine(const Diagram& d);

// d1 then d2: outputs of d1 are glued to inputs of d2.
Diagram compose_diagrams(const Diagram& d1, const Diagram& d2);
Diagram tensor_diagrams(const Diagram& d1, const Diagram& d2);
Diagram empty_diagram(Prime p, Layer layer);

// Node ids renumbered in breadth-first order from the boundary; wires sorted.
Diagram normalize(const Diagram& d);
bool structurally_equal(const Diagram& a, const Diagram& b);
std::string to_text(const Diagram& d);

// Semantic comparison. A doubled diagram whose wires are all quantum may be compared with an
// affine diagram over its flattened (z, x) coordinates. Throws std::invalid_argument when the
// boundaries do not match.
bool diagrams_equal(const Diagram& a, const Diagram& b);
bool diagrams_subset(const Diagram& a, const Diagram& b);

// Equation and basis rendering. Variables are a1.. / b1.. on the affine layer,
// and za1, xa1, ca1 .. zb1, xb1, cb1 on the doubled layer.
std::vector<std::string> variable_names(const GradedRelation& r, Layer layer);
std::string render_equations(const GradedRelation& r, Layer layer);
std::string render_basis(const GradedRelation& r, Layer layer);
std::string render_signed(Prime p, Elem e);

}  // namespace stabrel
