#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "stabrel/affrel.hpp"
#include "stabrel/symp.hpp"

namespace stabrel {

enum class WireType { quantum, classical };
using WireTypes = std::vector<WireType>;

std::string to_string(WireType t);
std::size_t coord_count(const WireTypes& types);
WireTypes quantum_wires(std::size_t n);
WireTypes classical_wires(std::size_t n);
WireTypes concat(const WireTypes& a, const WireTypes& b);

struct Phase {
  Elem affine = 0;
  Elem linear = 0;
};

// Affine relation over doubled coordinates. Each boundary is flattened as
// the z-coordinates of its quantum wires, then their x-coordinates, then one
// coordinate per classical wire; inputs come before outputs.
class GradedRelation {
 public:
  GradedRelation(WireTypes dom, WireTypes cod, AffineRelation rel);

  Prime field() const { return rel_.field(); }
  const WireTypes& dom_types() const { return dom_; }
  const WireTypes& cod_types() const { return cod_; }
  const AffineRelation& rel() const { return rel_; }
  bool is_empty() const { return rel_.is_empty(); }
  bool all_quantum() const;

  friend bool operator==(const GradedRelation& a, const GradedRelation& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.rel_ == b.rel_;
  }

 private:
  WireTypes dom_;
  WireTypes cod_;
  AffineRelation rel_;
};

// Variables of one wire inside a Network. Classical wires use only `x`.
struct Port {
  WireType type;
  std::size_t z;
  std::size_t x;
};

std::vector<Port> add_ports(Network& net, const WireTypes& types);
std::vector<std::size_t> layout_vars(const std::vector<Port>& ports);
void attach(Network& net, const GradedRelation& r, const std::vector<Port>& in, const std::vector<Port>& out);
GradedRelation project(const Network& net, const std::vector<Port>& in, const std::vector<Port>& out);

GradedRelation identity(Prime p, const WireTypes& types);
GradedRelation compose(const GradedRelation& r, const GradedRelation& s);
GradedRelation compose_all(const std::vector<GradedRelation>& steps);
GradedRelation tensor(const GradedRelation& r, const GradedRelation& s);
GradedRelation tensor_all(Prime p, const std::vector<GradedRelation>& parts);
GradedRelation converse(const GradedRelation& r);
GradedRelation conjugate(const GradedRelation& r);
// Compact-closed transpose with respect to the doubled Z cups {(z, x, -z, x)}.
GradedRelation transpose(const GradedRelation& r);
GradedRelation dagger(const GradedRelation& r);
bool equal(const GradedRelation& r, const GradedRelation& s);
bool subset(const GradedRelation& r, const GradedRelation& s);
bool coarse_grains(const GradedRelation& f, const GradedRelation& g);
GradedRelation image(const GradedRelation& r);
// Output wire k carries input wire perm[k].
GradedRelation wire_permutation(Prime p, const WireTypes& in_types, const std::vector<std::size_t>& perm);
// Wraps an affine relation whose wires are all classical.
GradedRelation classical(const AffineRelation& r);

GradedRelation z_spider(Prime p, std::size_t n_in, std::size_t n_out, Phase phase = {});
GradedRelation x_spider(Prime p, std::size_t n_in, std::size_t n_out, Phase phase = {});
GradedRelation scaling_gate(Prime p, Elem a);
GradedRelation fourier(Prime p);
GradedRelation fourier_dagger(Prime p);
GradedRelation weyl(Prime p, const Vec& zvec, const Vec& xvec);
GradedRelation discard(Prime p);
GradedRelation codiscard(Prime p);
GradedRelation projector_z(Prime p);
GradedRelation projector_x(Prime p);
GradedRelation measure_z(Prime p);
GradedRelation measure_x(Prime p);
GradedRelation prep_z(Prime p);
GradedRelation prep_x(Prime p);
GradedRelation cl_z_spider(Prime p, std::size_t n_in, std::size_t n_out);
GradedRelation cl_x_spider(Prime p, std::size_t n_in, std::size_t n_out, Elem phase = 0);
GradedRelation cl_scalar(Prime p, Elem a);
GradedRelation cl_point(Prime p, const Vec& v);
GradedRelation bastard_z(Prime p, std::size_t n_in, std::size_t n_out);
GradedRelation bastard_x(Prime p, std::size_t n_in, std::size_t n_out);
GradedRelation quantum_swap(Prime p);
// Lifts a relation on n quantum wires to `width` wires, acting on the listed wires.
GradedRelation on_wires(const GradedRelation& r, std::size_t width, const std::vector<std::size_t>& wires);

// Bending all-quantum r: n -> m gives the state {(-z_in, z_out ; x_in, x_out)} on n+m wires.
GradedSubspace bent_state(const GradedRelation& r);
GradedRelation unbend(const GradedSubspace& s, std::size_t n_in);
SympClass classify(const GradedRelation& r);

struct Purified {
  GradedRelation pure;
  std::size_t discarded;
};
Purified purify(const GradedRelation& r);

}  // namespace stabrel
