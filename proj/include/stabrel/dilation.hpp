#pragma once

#include <cstddef>
#include <vector>

#include "stabrel/stab.hpp"

namespace stabrel {

// Elementary symplectomorphisms on n wires.
//   fourier(a):           (z_a, x_a) -> (x_a, -z_a)
//   controlled_add(a,b,w): x_b += w x_a, z_a -= w z_b   (control a, target b)
//   shear(a,w):           x_a += w z_a
//   pair_shear(a,b,w):    x_a += w z_b, x_b += w z_a
struct SympOp {
  enum class Kind { fourier, controlled_add, shear, pair_shear };
  Kind kind;
  std::size_t a;
  std::size_t b;
  Elem weight;
};

Vec apply(Prime p, const SympOp& op, const Vec& v);
Vec apply_inverse(Prime p, const SympOp& op, const Vec& v);
// The op as a relation on n quantum wires, assembled from spiders, scaling gates and Fourier.
GradedRelation realize(Prime p, const SympOp& op, std::size_t n);
// Graph {(v, f(v))} of a linear map on F_p^{2n} given by its images of the unit vectors.
GradedRelation graph_of(Prime p, std::size_t n, const std::vector<Vec>& images);

struct Dilation {
  GradedRelation encoder;   // m -> n
  GradedRelation unitary;   // n -> n; inputs are the m logical wires, then the ancillas
  std::vector<SympOp> ops;  // applied in order, they send S^omega onto the ancilla Z directions
  std::vector<std::size_t> logical_wires;
  std::vector<std::size_t> ancilla_wires;
  std::vector<Vec> syndrome_basis;  // preimage of the Z direction of each ancilla
};

// S must be coisotropic (or Lagrangian) with dim S = n + m.
// encoder = unitary o (id_m (x) |x=0>^{n-m}); image(encoder) = S and dagger(encoder) o encoder = id.
// Pivots are placed on the rightmost wires, so logical wires lead and ancillas trail.
Dilation stinespring_dilate(const GradedSubspace& s);

}  // namespace stabrel
