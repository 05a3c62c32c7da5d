#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "stabrel/fplinalg.hpp"

namespace stabrel {

// Vectors of F_p^{2n} are laid out (z_1..z_n, x_1..x_n);
// omega(v, w) = v_z . w_x - v_x . w_z.
Elem omega(Prime p, const Vec& v, const Vec& w);

Subspace symp_complement(const Subspace& l);

enum class SympClass { isotropic, coisotropic, lagrangian, none };
std::string to_string(SympClass c);

// Affine subspace L + a of F_p^{2n}, possibly empty. The shift is reduced modulo L.
class GradedSubspace {
 public:
  GradedSubspace(Subspace linear, Vec shift);
  static GradedSubspace linear(Subspace l);
  static GradedSubspace empty(Prime p, std::size_t n);

  Prime field() const { return linear_.field(); }
  std::size_t qudits() const { return linear_.ambient_dim() / 2; }
  bool is_empty() const { return empty_; }
  const Subspace& linear_part() const { return linear_; }
  const Vec& shift() const { return shift_; }
  bool contains(const Vec& v) const;

  friend bool operator==(const GradedSubspace& a, const GradedSubspace& b) {
    return a.empty_ == b.empty_ && a.linear_ == b.linear_ && a.shift_ == b.shift_;
  }

 private:
  Subspace linear_;
  Vec shift_;
  bool empty_ = false;
};

// Complement of the linear part; the shift is kept.
GradedSubspace symp_complement(const GradedSubspace& v);
SympClass classify(const Subspace& l);
SympClass classify(const GradedSubspace& v);

}  // namespace stabrel
