#include "stabrel/fplinalg.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace stabrel {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Prime::Prime(std::uint64_t p) {
  if (p > std::numeric_limits<Elem>::max() || !is_prime(p))
    throw std::invalid_argument("not a prime: " + std::to_string(p));
  p_ = static_cast<Elem>(p);
}

Elem Prime::reduce(std::int64_t a) const {
  std::int64_t r = a % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

Elem Prime::inv(Elem a) const {
  a %= p_;
  if (a == 0) throw std::domain_error("zero has no inverse");
  std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return reduce(t);
}

FpMatrix::FpMatrix(Prime p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FpMatrix::FpMatrix(Prime p, std::size_t cols, const std::vector<Vec>& rows)
    : p_(p), rows_(rows.size()), cols_(cols), data_() {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("row length mismatch");
    for (Elem e : r) data_.push_back(e % p.value());
  }
}

FpMatrix FpMatrix::identity(Prime p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Vec FpMatrix::row(std::size_t r) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

std::vector<Vec> FpMatrix::row_list() const {
  std::vector<Vec> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

void FpMatrix::append_row(const Vec& v) {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  for (Elem e : v) data_.push_back(e % p_.value());
  ++rows_;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
  return t;
}

FpMatrix FpMatrix::select_cols(const std::vector<std::size_t>& cols) const {
  FpMatrix out(p_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) out.data_[r * cols.size() + j] = at(r, cols[j]);
  return out;
}

FpMatrix FpMatrix::operator*(const FpMatrix& other) const {
  if (!(p_ == other.p_) || cols_ != other.rows_) throw std::invalid_argument("matrix product shape mismatch");
  FpMatrix out(p_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      Elem a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        Elem& dst = out.data_[i * other.cols_ + j];
        dst = p_.add(dst, p_.mul(a, other.at(k, j)));
      }
    }
  return out;
}

Vec FpMatrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  Vec out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    Elem acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc = p_.add(acc, p_.mul(at(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

FpMatrix vstack(const FpMatrix& a, const FpMatrix& b) {
  if (!(a.field() == b.field()) || a.cols() != b.cols()) throw std::invalid_argument("vstack shape mismatch");
  FpMatrix out = a;
  for (std::size_t r = 0; r < b.rows(); ++r) out.append_row(b.row(r));
  return out;
}

RrefResult rref(const FpMatrix& m) {
  const Prime p = m.field();
  std::vector<Vec> rows = m.row_list();
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < rows.size(); ++c) {
    std::size_t sel = lead;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[lead], rows[sel]);
    Elem s = p.inv(rows[lead][c]);
    for (auto& e : rows[lead]) e = p.mul(e, s);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][c] == 0) continue;
      Elem f = rows[r][c];
      for (std::size_t j = 0; j < m.cols(); ++j) rows[r][j] = p.sub(rows[r][j], p.mul(f, rows[lead][j]));
    }
    pivots.push_back(c);
    ++lead;
  }
  rows.resize(lead);
  return {FpMatrix(p, m.cols(), rows), pivots};
}

std::size_t rank(const FpMatrix& m) { return rref(m).pivots.size(); }

Subspace::Subspace(Prime p, std::size_t ambient) : basis_(p, 0, ambient), pivots_() {}

Subspace Subspace::span(const FpMatrix& rows) { return Subspace(rref(rows)); }

Subspace Subspace::span(Prime p, std::size_t ambient, const std::vector<Vec>& rows) {
  return span(FpMatrix(p, ambient, rows));
}

Subspace Subspace::full(Prime p, std::size_t ambient) { return span(FpMatrix::identity(p, ambient)); }

Vec Subspace::reduce(const Vec& v) const {
  if (v.size() != ambient_dim()) throw std::invalid_argument("vector length mismatch");
  const Prime p = field();
  Vec out = v;
  for (auto& e : out) e %= p.value();
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    Elem f = out[pivots_[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = p.sub(out[j], p.mul(f, basis_.at(i, j)));
  }
  return out;
}

bool Subspace::contains(const Vec& v) const {
  for (Elem e : reduce(v))
    if (e != 0) return false;
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim() != ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
  for (std::size_t r = 0; r < other.dim(); ++r)
    if (!contains(other.basis().row(r))) return false;
  return true;
}

Subspace kernel(const FpMatrix& m) {
  const Prime p = m.field();
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = p.neg(r.matrix.at(i, f));
    basis.push_back(std::move(v));
  }
  return Subspace::span(p, m.cols(), basis);
}

Subspace annihilator(const Subspace& v) { return kernel(v.basis()); }

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (!(a.field() == b.field()) || a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("intersect: dimension mismatch");
  return kernel(vstack(annihilator(a).basis(), annihilator(b).basis()));
}

Subspace sum_spaces(const Subspace& a, const Subspace& b) {
  if (!(a.field() == b.field()) || a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("sum_spaces: dimension mismatch");
  return Subspace::span(vstack(a.basis(), b.basis()));
}

std::optional<Vec> solve_affine(const FpMatrix& m, const Vec& rhs) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("solve_affine: rhs length mismatch");
  const Prime p = m.field();
  FpMatrix aug(p, m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.set(r, c, m.at(r, c));
    aug.set(r, m.cols(), rhs[r]);
  }
  RrefResult red = rref(aug);
  Vec x(m.cols(), 0);
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    if (red.pivots[i] == m.cols()) return std::nullopt;
    x[red.pivots[i]] = red.matrix.at(i, m.cols());
  }
  return x;
}

Elem dot(Prime p, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Elem acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = p.add(acc, p.mul(a[i], b[i]));
  return acc;
}

std::string to_string(const Vec& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

}  // namespace stabrel
