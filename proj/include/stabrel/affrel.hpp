#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stabrel/fplinalg.hpp"

namespace stabrel {

// Affine relation n -> m stored as the homogenized subspace of F_p^{n+m+1}
// spanned by {(x, y, 1) : (x, y) in R} plus the linear directions (v, 0).
// Coordinates are inputs, outputs, then h. The empty relation is the zero subspace.
class AffineRelation {
 public:
  static AffineRelation from_homogenized(std::size_t dom, std::size_t cod, const Subspace& h);
  // Each row c encodes sum_i c_i v_i + c_h = 0 over (inputs, outputs, h).
  static AffineRelation from_constraints(Prime p, std::size_t dom, std::size_t cod, const FpMatrix& c);
  static AffineRelation empty(Prime p, std::size_t dom, std::size_t cod);
  static AffineRelation total(Prime p, std::size_t dom, std::size_t cod);

  Prime field() const { return rep_.field(); }
  std::size_t dom() const { return dom_; }
  std::size_t cod() const { return cod_; }
  std::size_t coords() const { return dom_ + cod_; }
  const Subspace& rep() const { return rep_; }

  bool is_empty() const { return rep_.dim() == 0; }
  bool contains(const Vec& point) const;  // point over (inputs, outputs)
  bool contains_origin() const;

  // Linear directions of the relation as a subspace of F_p^{n+m}.
  Subspace linear_part() const;
  std::optional<Vec> particular_point() const;
  // Canonical constraint rows; for the empty relation this is the row (0,...,0,1).
  Subspace constraints() const;

  // Reorders coordinates: new coordinate j is old coordinate perm[j].
  AffineRelation permuted(std::size_t dom, std::size_t cod, const std::vector<std::size_t>& perm) const;
  AffineRelation scaled(const Vec& factors) const;

  friend bool operator==(const AffineRelation& a, const AffineRelation& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.rep_ == b.rep_;
  }

 private:
  AffineRelation(std::size_t dom, std::size_t cod, Subspace rep) : dom_(dom), cod_(cod), rep_(std::move(rep)) {}
  std::size_t dom_;
  std::size_t cod_;
  Subspace rep_;
};

// A linear system over named variables with a shared homogenizing coordinate.
// Relations are attached to variable lists; project() eliminates everything else.
class Network {
 public:
  explicit Network(Prime p) : p_(p) {}

  Prime field() const { return p_; }
  std::size_t add_var();
  std::vector<std::size_t> add_vars(std::size_t n);
  std::size_t var_count() const { return nvars_; }

  void add(const AffineRelation& r, const std::vector<std::size_t>& vars);
  AffineRelation project(const std::vector<std::size_t>& inputs, const std::vector<std::size_t>& outputs) const;

 private:
  struct Row {
    std::vector<std::pair<std::size_t, Elem>> terms;
    Elem constant;
  };
  Prime p_;
  std::size_t nvars_ = 0;
  bool infeasible_ = false;
  std::vector<Row> rows_;
};

AffineRelation identity(Prime p, std::size_t n);
AffineRelation compose(const AffineRelation& r, const AffineRelation& s);
AffineRelation tensor(const AffineRelation& r, const AffineRelation& s);
AffineRelation converse(const AffineRelation& r);
AffineRelation ortho_complement(const AffineRelation& r);
bool equal(const AffineRelation& r, const AffineRelation& s);
bool subset(const AffineRelation& r, const AffineRelation& s);
AffineRelation image(const AffineRelation& r);
AffineRelation coimage(const AffineRelation& r);

namespace gen {
AffineRelation z_spider(Prime p, std::size_t n_in, std::size_t n_out);
AffineRelation x_spider(Prime p, std::size_t n_in, std::size_t n_out, Elem phase = 0);
AffineRelation scalar(Prime p, Elem a);
AffineRelation co_scalar(Prime p, Elem a);
AffineRelation cup_z(Prime p);
AffineRelation cap_z(Prime p);
AffineRelation cup_x(Prime p);
AffineRelation cap_x(Prime p);
AffineRelation swap(Prime p);
AffineRelation affine_unit(Prime p);
AffineRelation point(Prime p, const Vec& v);
}  // namespace gen

}  // namespace stabrel
