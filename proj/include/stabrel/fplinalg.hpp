#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stabrel {

using Elem = std::uint32_t;
using Vec = std::vector<Elem>;

class Prime {
 public:
  explicit Prime(std::uint64_t p);

  Elem value() const { return p_; }

  Elem reduce(std::int64_t a) const;
  Elem add(Elem a, Elem b) const { return static_cast<Elem>((std::uint64_t{a} + b) % p_); }
  Elem sub(Elem a, Elem b) const { return static_cast<Elem>((std::uint64_t{a} + p_ - b) % p_); }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>((std::uint64_t{a} * b) % p_); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  // Throws std::domain_error on zero.
  Elem inv(Elem a) const;

  friend bool operator==(const Prime& a, const Prime& b) { return a.p_ == b.p_; }

 private:
  Elem p_;
};

bool is_prime(std::uint64_t n);

class FpMatrix {
 public:
  FpMatrix(Prime p, std::size_t rows, std::size_t cols);
  FpMatrix(Prime p, std::size_t cols, const std::vector<Vec>& rows);

  static FpMatrix identity(Prime p, std::size_t n);

  Prime field() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Elem v) { data_[r * cols_ + c] = p_.reduce(v); }

  Vec row(std::size_t r) const;
  std::vector<Vec> row_list() const;
  void append_row(const Vec& v);

  FpMatrix transpose() const;
  FpMatrix select_cols(const std::vector<std::size_t>& cols) const;
  FpMatrix operator*(const FpMatrix& other) const;
  Vec apply(const Vec& v) const;  // m * v

  friend bool operator==(const FpMatrix& a, const FpMatrix& b) {
    return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Prime p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

FpMatrix vstack(const FpMatrix& a, const FpMatrix& b);

struct RrefResult {
  FpMatrix matrix;
  std::vector<std::size_t> pivots;
};

// Zero rows are dropped from the result.
RrefResult rref(const FpMatrix& m);
std::size_t rank(const FpMatrix& m);

class Subspace {
 public:
  Subspace(Prime p, std::size_t ambient);  // zero subspace
  static Subspace span(const FpMatrix& rows);
  static Subspace span(Prime p, std::size_t ambient, const std::vector<Vec>& rows);
  static Subspace full(Prime p, std::size_t ambient);

  Prime field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const FpMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  // Representative of v modulo this subspace with zeros on every pivot column.
  Vec reduce(const Vec& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  explicit Subspace(RrefResult r) : basis_(std::move(r.matrix)), pivots_(std::move(r.pivots)) {}
  FpMatrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace kernel(const FpMatrix& m);
// Vectors orthogonal to every vector of v under the plain dot product.
Subspace annihilator(const Subspace& v);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum_spaces(const Subspace& a, const Subspace& b);
std::optional<Vec> solve_affine(const FpMatrix& m, const Vec& rhs);

Elem dot(Prime p, const Vec& a, const Vec& b);
std::string to_string(const Vec& v);

}  // namespace stabrel
