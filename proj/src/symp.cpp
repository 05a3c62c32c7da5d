#include "stabrel/symp.hpp"

#include <stdexcept>

namespace stabrel {

Elem omega(Prime p, const Vec& v, const Vec& w) {
  if (v.size() != w.size() || v.size() % 2 != 0) throw std::invalid_argument("omega: dimension mismatch");
  const std::size_t n = v.size() / 2;
  Elem acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    acc = p.add(acc, p.mul(v[i], w[n + i]));
    acc = p.sub(acc, p.mul(v[n + i], w[i]));
  }
  return acc;
}

Subspace symp_complement(const Subspace& l) {
  const std::size_t d = l.ambient_dim();
  if (d % 2 != 0) throw std::invalid_argument("symp_complement: odd ambient dimension");
  const std::size_t n = d / 2;
  const Prime p = l.field();
  // w is in L^omega iff (b_x, -b_z) . w = 0 for every basis row b.
  FpMatrix m(p, l.dim(), d);
  for (std::size_t r = 0; r < l.dim(); ++r)
    for (std::size_t i = 0; i < n; ++i) {
      m.set(r, n + i, l.basis().at(r, i));
      m.set(r, i, p.neg(l.basis().at(r, n + i)));
    }
  return kernel(m);
}

std::string to_string(SympClass c) {
  switch (c) {
    case SympClass::isotropic: return "isotropic";
    case SympClass::coisotropic: return "coisotropic";
    case SympClass::lagrangian: return "lagrangian";
    case SympClass::none: return "none";
  }
  return "none";
}

GradedSubspace::GradedSubspace(Subspace linear, Vec shift) : linear_(std::move(linear)), shift_() {
  if (linear_.ambient_dim() % 2 != 0) throw std::invalid_argument("graded subspace needs even dimension");
  shift_ = linear_.reduce(shift);
}

GradedSubspace GradedSubspace::linear(Subspace l) {
  Vec zero(l.ambient_dim(), 0);
  return GradedSubspace(std::move(l), std::move(zero));
}

GradedSubspace GradedSubspace::empty(Prime p, std::size_t n) {
  GradedSubspace g(Subspace(p, 2 * n), Vec(2 * n, 0));
  g.empty_ = true;
  return g;
}

bool GradedSubspace::contains(const Vec& v) const {
  if (empty_) return false;
  Vec d = v;
  const Prime p = field();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = p.sub(d[i] % p.value(), shift_[i]);
  return linear_.contains(d);
}

GradedSubspace symp_complement(const GradedSubspace& v) {
  if (v.is_empty()) return v;
  return GradedSubspace(symp_complement(v.linear_part()), v.shift());
}

SympClass classify(const Subspace& l) {
  Subspace c = symp_complement(l);
  bool iso = c.contains(l);
  bool coiso = l.contains(c);
  if (iso && coiso) return SympClass::lagrangian;
  if (iso) return SympClass::isotropic;
  if (coiso) return SympClass::coisotropic;
  return SympClass::none;
}

SympClass classify(const GradedSubspace& v) {
  if (v.is_empty()) return SympClass::none;
  return classify(v.linear_part());
}

}  // namespace stabrel
