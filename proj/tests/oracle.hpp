#pragma once

// Brute-force set semantics used as ground truth by the tests.

#include <functional>
#include <random>
#include <set>
#include <vector>

#include "stabrel/affrel.hpp"
#include "stabrel/symp.hpp"

namespace oracle {

using stabrel::Elem;
using stabrel::Prime;
using stabrel::Vec;
using PointSet = std::set<Vec>;

inline std::vector<Vec> all_vectors(Prime p, std::size_t d) {
  std::vector<Vec> out;
  Vec v(d, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < d && ++v[i] == p.value()) v[i++] = 0;
    if (i == d) break;
  }
  return out;
}

inline Vec concat(const Vec& a, const Vec& b) {
  Vec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Vec slice(const Vec& v, std::size_t from, std::size_t n) {
  return Vec(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from + n));
}

// An affine system C v = b together with its solution set, computed by substitution.
struct System {
  Prime p;
  std::size_t dom;
  std::size_t cod;
  std::vector<Vec> rows;
  Vec rhs;

  bool satisfied(const Vec& v) const {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (stabrel::dot(p, rows[i], v) != rhs[i]) return false;
    return true;
  }
  PointSet points() const {
    PointSet s;
    for (const auto& v : all_vectors(p, dom + cod))
      if (satisfied(v)) s.insert(v);
    return s;
  }
  stabrel::AffineRelation relation() const {
    std::vector<Vec> c;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Vec r = rows[i];
      r.push_back(p.neg(rhs[i]));
      c.push_back(std::move(r));
    }
    return stabrel::AffineRelation::from_constraints(p, dom, cod, stabrel::FpMatrix(p, dom + cod + 1, c));
  }
};

inline System random_system(std::mt19937& rng, Prime p, std::size_t dom, std::size_t cod, bool linear = false) {
  const std::size_t d = dom + cod;
  std::uniform_int_distribution<Elem> e(0, p.value() - 1);
  std::uniform_int_distribution<std::size_t> k(0, d + 1);
  System s{p, dom, cod, {}, {}};
  std::size_t n = k(rng);
  for (std::size_t i = 0; i < n; ++i) {
    Vec r(d);
    for (auto& x : r) x = e(rng);
    s.rows.push_back(r);
    s.rhs.push_back(linear ? 0 : e(rng));
  }
  return s;
}

inline PointSet points_of(const stabrel::AffineRelation& r) {
  PointSet s;
  for (const auto& v : all_vectors(r.field(), r.coords()))
    if (r.contains(v)) s.insert(v);
  return s;
}

inline PointSet compose(const PointSet& r, const PointSet& s, std::size_t n, std::size_t m, std::size_t l) {
  PointSet out;
  for (const auto& a : r)
    for (const auto& b : s)
      if (slice(a, n, m) == slice(b, 0, m)) out.insert(concat(slice(a, 0, n), slice(b, m, l)));
  return out;
}

inline PointSet tensor(const PointSet& r, const PointSet& s, std::size_t nr, std::size_t mr, std::size_t ns,
                       std::size_t ms) {
  PointSet out;
  for (const auto& a : r)
    for (const auto& b : s)
      out.insert(concat(concat(slice(a, 0, nr), slice(b, 0, ns)), concat(slice(a, nr, mr), slice(b, ns, ms))));
  return out;
}

inline PointSet converse(const PointSet& r, std::size_t n, std::size_t m) {
  PointSet out;
  for (const auto& a : r) out.insert(concat(slice(a, n, m), slice(a, 0, n)));
  return out;
}

inline PointSet complement(Prime p, const PointSet& v, std::size_t d) {
  PointSet out;
  for (const auto& w : all_vectors(p, d)) {
    bool ok = true;
    for (const auto& x : v)
      if (stabrel::dot(p, w, x) != 0) {
        ok = false;
        break;
      }
    if (ok) out.insert(w);
  }
  return out;
}

inline bool subset(const PointSet& a, const PointSet& b) {
  for (const auto& x : a)
    if (!b.count(x)) return false;
  return true;
}

inline PointSet span_points(Prime p, const std::vector<Vec>& gens, std::size_t d) {
  PointSet out;
  for (const auto& coeffs : all_vectors(p, gens.size())) {
    Vec v(d, 0);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < d; ++j) v[j] = p.add(v[j], p.mul(coeffs[i], gens[i][j]));
    out.insert(v);
  }
  return out;
}

inline PointSet subspace_points(const stabrel::Subspace& s) {
  return span_points(s.field(), s.basis().row_list(), s.ambient_dim());
}

inline PointSet symp_complement(Prime p, const PointSet& v, std::size_t n) {
  PointSet out;
  for (const auto& w : all_vectors(p, 2 * n)) {
    bool ok = true;
    for (const auto& x : v)
      if (stabrel::omega(p, w, x) != 0) {
        ok = false;
        break;
      }
    if (ok) out.insert(w);
  }
  return out;
}

inline Vec random_vec(std::mt19937& rng, Prime p, std::size_t d) {
  std::uniform_int_distribution<Elem> e(0, p.value() - 1);
  Vec v(d);
  for (auto& x : v) x = e(rng);
  return v;
}

// Isotropic subspace grown by sampling inside the current symplectic complement.
inline stabrel::Subspace random_isotropic(std::mt19937& rng, Prime p, std::size_t n, std::size_t dim) {
  stabrel::Subspace cur(p, 2 * n);
  while (cur.dim() < dim) {
    stabrel::Subspace room = stabrel::symp_complement(cur);
    std::uniform_int_distribution<Elem> e(0, p.value() - 1);
    Vec v(2 * n, 0);
    for (std::size_t i = 0; i < room.dim(); ++i) {
      Elem c = e(rng);
      for (std::size_t j = 0; j < 2 * n; ++j) v[j] = p.add(v[j], p.mul(c, room.basis().at(i, j)));
    }
    if (cur.contains(v)) continue;
    std::vector<Vec> rows = cur.basis().row_list();
    rows.push_back(v);
    cur = stabrel::Subspace::span(p, 2 * n, rows);
  }
  return cur;
}

inline stabrel::GradedSubspace random_coisotropic(std::mt19937& rng, Prime p, std::size_t n) {
  std::uniform_int_distribution<std::size_t> k(0, n);
  stabrel::Subspace iso = random_isotropic(rng, p, n, k(rng));
  return stabrel::GradedSubspace(stabrel::symp_complement(iso), random_vec(rng, p, 2 * n));
}

}  // namespace oracle
