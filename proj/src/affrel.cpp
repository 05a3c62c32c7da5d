#include "stabrel/affrel.hpp"

#include <numeric>
#include <stdexcept>

namespace stabrel {

namespace {

void require_same_field(const AffineRelation& r, const AffineRelation& s) {
  if (!(r.field() == s.field())) throw std::invalid_argument("field mismatch");
}

std::vector<std::size_t> iota(std::size_t from, std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), from);
  return v;
}

}  // namespace

AffineRelation AffineRelation::from_homogenized(std::size_t dom, std::size_t cod, const Subspace& h) {
  if (h.ambient_dim() != dom + cod + 1) throw std::invalid_argument("homogenized dimension mismatch");
  const std::size_t hc = dom + cod;
  for (std::size_t r = 0; r < h.dim(); ++r)
    if (h.basis().at(r, hc) != 0) return AffineRelation(dom, cod, h);
  return empty(h.field(), dom, cod);
}

AffineRelation AffineRelation::from_constraints(Prime, std::size_t dom, std::size_t cod, const FpMatrix& c) {
  if (c.cols() != dom + cod + 1) throw std::invalid_argument("constraint width mismatch");
  return from_homogenized(dom, cod, kernel(c));
}

AffineRelation AffineRelation::empty(Prime p, std::size_t dom, std::size_t cod) {
  return AffineRelation(dom, cod, Subspace(p, dom + cod + 1));
}

AffineRelation AffineRelation::total(Prime p, std::size_t dom, std::size_t cod) {
  return AffineRelation(dom, cod, Subspace::full(p, dom + cod + 1));
}

bool AffineRelation::contains(const Vec& point) const {
  if (point.size() != coords()) throw std::invalid_argument("point length mismatch");
  if (is_empty()) return false;
  Vec v = point;
  v.push_back(1);
  return rep_.contains(v);
}

bool AffineRelation::contains_origin() const { return contains(Vec(coords(), 0)); }

Subspace AffineRelation::linear_part() const {
  const Prime p = field();
  if (is_empty()) return Subspace(p, coords());
  FpMatrix sel(p, 1, coords() + 1);
  sel.set(0, coords(), 1);
  Subspace lin = intersect(rep_, kernel(sel));
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < lin.dim(); ++r) {
    Vec v = lin.basis().row(r);
    v.pop_back();
    rows.push_back(std::move(v));
  }
  return Subspace::span(p, coords(), rows);
}

std::optional<Vec> AffineRelation::particular_point() const {
  if (is_empty()) return std::nullopt;
  const Prime p = field();
  for (std::size_t r = 0; r < rep_.dim(); ++r) {
    Vec v = rep_.basis().row(r);
    Elem h = v.back();
    if (h == 0) continue;
    Elem s = p.inv(h);
    v.pop_back();
    for (auto& e : v) e = p.mul(e, s);
    return linear_part().reduce(v);
  }
  return std::nullopt;
}

Subspace AffineRelation::constraints() const { return annihilator(rep_); }

AffineRelation AffineRelation::permuted(std::size_t dom, std::size_t cod, const std::vector<std::size_t>& perm) const {
  if (dom + cod != coords() || perm.size() != coords()) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::size_t> cols = perm;
  cols.push_back(coords());
  return from_homogenized(dom, cod, Subspace::span(rep_.basis().select_cols(cols)));
}

AffineRelation AffineRelation::scaled(const Vec& factors) const {
  if (factors.size() != coords()) throw std::invalid_argument("scale length mismatch");
  const Prime p = field();
  FpMatrix m = rep_.basis();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < factors.size(); ++c) m.set(r, c, p.mul(m.at(r, c), factors[c]));
  return from_homogenized(dom_, cod_, Subspace::span(m));
}

std::size_t Network::add_var() { return nvars_++; }

std::vector<std::size_t> Network::add_vars(std::size_t n) {
  std::vector<std::size_t> v = iota(nvars_, n);
  nvars_ += n;
  return v;
}

void Network::add(const AffineRelation& r, const std::vector<std::size_t>& vars) {
  if (!(r.field() == p_)) throw std::invalid_argument("network field mismatch");
  if (vars.size() != r.coords()) throw std::invalid_argument("network arity mismatch");
  for (auto v : vars)
    if (v >= nvars_) throw std::out_of_range("network variable out of range");
  if (r.is_empty()) {
    infeasible_ = true;
    return;
  }
  Subspace c = r.constraints();
  for (std::size_t i = 0; i < c.dim(); ++i) {
    Row row;
    for (std::size_t j = 0; j < vars.size(); ++j)
      if (Elem e = c.basis().at(i, j); e != 0) row.terms.emplace_back(vars[j], e);
    row.constant = c.basis().at(i, vars.size());
    rows_.push_back(std::move(row));
  }
}

AffineRelation Network::project(const std::vector<std::size_t>& inputs, const std::vector<std::size_t>& outputs) const {
  const std::size_t dom = inputs.size(), cod = outputs.size();
  if (infeasible_) return AffineRelation::empty(p_, dom, cod);
  FpMatrix c(p_, rows_.size(), nvars_ + 1);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (auto [v, e] : rows_[i].terms) c.set(i, v, p_.add(c.at(i, v), e));
    c.set(i, nvars_, rows_[i].constant);
  }
  Subspace sol = kernel(c);
  std::vector<std::size_t> cols = inputs;
  cols.insert(cols.end(), outputs.begin(), outputs.end());
  cols.push_back(nvars_);
  return AffineRelation::from_homogenized(dom, cod, Subspace::span(sol.basis().select_cols(cols)));
}

AffineRelation identity(Prime p, std::size_t n) {
  FpMatrix c(p, n, 2 * n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    c.set(i, i, 1);
    c.set(i, n + i, p.neg(1));
  }
  return AffineRelation::from_constraints(p, n, n, c);
}

AffineRelation compose(const AffineRelation& r, const AffineRelation& s) {
  require_same_field(r, s);
  if (r.cod() != s.dom()) throw std::invalid_argument("compose: arity mismatch");
  Network net(r.field());
  auto x = net.add_vars(r.dom());
  auto y = net.add_vars(r.cod());
  auto z = net.add_vars(s.cod());
  std::vector<std::size_t> xy = x, yz = y;
  xy.insert(xy.end(), y.begin(), y.end());
  yz.insert(yz.end(), z.begin(), z.end());
  net.add(r, xy);
  net.add(s, yz);
  return net.project(x, z);
}

AffineRelation tensor(const AffineRelation& r, const AffineRelation& s) {
  require_same_field(r, s);
  if (r.is_empty() || s.is_empty()) return AffineRelation::empty(r.field(), r.dom() + s.dom(), r.cod() + s.cod());
  // Block-diagonal join sharing h; columns are reordered to (x_r, x_s, y_r, y_s, h).
  const Prime p = r.field();
  const std::size_t dr = r.dom(), cr = r.cod(), ds = s.dom(), cs = s.cod();
  const std::size_t width = dr + cr + ds + cs + 1;
  std::vector<Vec> rows;
  auto embed = [&](const Subspace& c, std::size_t d, std::size_t off_in, std::size_t off_out, std::size_t k) {
    for (std::size_t i = 0; i < c.dim(); ++i) {
      Vec v(width, 0);
      for (std::size_t j = 0; j < d; ++j) v[off_in + j] = c.basis().at(i, j);
      for (std::size_t j = 0; j < k; ++j) v[off_out + j] = c.basis().at(i, d + j);
      v[width - 1] = c.basis().at(i, d + k);
      rows.push_back(std::move(v));
    }
  };
  embed(r.constraints(), dr, 0, dr + ds, cr);
  embed(s.constraints(), ds, dr, dr + ds + cr, cs);
  return AffineRelation::from_constraints(p, dr + ds, cr + cs, FpMatrix(p, width, rows));
}

AffineRelation converse(const AffineRelation& r) {
  std::vector<std::size_t> perm = iota(r.dom(), r.cod());
  auto in = iota(0, r.dom());
  perm.insert(perm.end(), in.begin(), in.end());
  return r.permuted(r.cod(), r.dom(), perm);
}

AffineRelation ortho_complement(const AffineRelation& r) {
  const Prime p = r.field();
  if (r.is_empty()) return r;
  if (!r.contains_origin()) throw std::domain_error("ortho_complement: relation has a nonzero affine shift");
  Subspace perp = annihilator(r.linear_part());
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < perp.dim(); ++i) {
    Vec v = perp.basis().row(i);
    v.push_back(0);
    rows.push_back(std::move(v));
  }
  Vec h(r.coords() + 1, 0);
  h.back() = 1;
  rows.push_back(h);
  return AffineRelation::from_homogenized(r.dom(), r.cod(), Subspace::span(p, r.coords() + 1, rows));
}

bool equal(const AffineRelation& r, const AffineRelation& s) {
  require_same_field(r, s);
  if (r.dom() != s.dom() || r.cod() != s.cod()) throw std::invalid_argument("equal: arity mismatch");
  return r == s;
}

bool subset(const AffineRelation& r, const AffineRelation& s) {
  require_same_field(r, s);
  if (r.dom() != s.dom() || r.cod() != s.cod()) throw std::invalid_argument("subset: arity mismatch");
  return s.rep().contains(r.rep());
}

AffineRelation image(const AffineRelation& r) { return compose(AffineRelation::total(r.field(), 0, r.dom()), r); }

AffineRelation coimage(const AffineRelation& r) { return image(converse(r)); }

namespace gen {

namespace {

AffineRelation from_rows(Prime p, std::size_t dom, std::size_t cod, const std::vector<Vec>& rows) {
  return AffineRelation::from_constraints(p, dom, cod, FpMatrix(p, dom + cod + 1, rows));
}

}  // namespace

AffineRelation z_spider(Prime p, std::size_t n_in, std::size_t n_out) {
  const std::size_t d = n_in + n_out;
  std::vector<Vec> rows;
  for (std::size_t j = 1; j < d; ++j) {
    Vec v(d + 1, 0);
    v[0] = 1;
    v[j] = p.neg(1);
    rows.push_back(std::move(v));
  }
  return from_rows(p, n_in, n_out, rows);
}

AffineRelation x_spider(Prime p, std::size_t n_in, std::size_t n_out, Elem phase) {
  const std::size_t d = n_in + n_out;
  Vec v(d + 1, 0);
  for (std::size_t j = 0; j < n_in; ++j) v[j] = p.neg(1);
  for (std::size_t j = n_in; j < d; ++j) v[j] = 1;
  v[d] = p.neg(phase % p.value());
  return from_rows(p, n_in, n_out, {v});
}

AffineRelation scalar(Prime p, Elem a) { return from_rows(p, 1, 1, {{a % p.value(), p.neg(1), 0}}); }

AffineRelation co_scalar(Prime p, Elem a) { return converse(scalar(p, a)); }

AffineRelation cup_z(Prime p) { return z_spider(p, 0, 2); }
AffineRelation cap_z(Prime p) { return z_spider(p, 2, 0); }
AffineRelation cup_x(Prime p) { return x_spider(p, 0, 2); }
AffineRelation cap_x(Prime p) { return x_spider(p, 2, 0); }

AffineRelation swap(Prime p) { return identity(p, 2).permuted(2, 2, {0, 1, 3, 2}); }

AffineRelation affine_unit(Prime p) { return point(p, {1}); }

AffineRelation point(Prime p, const Vec& v) {
  std::vector<Vec> rows;
  for (std::size_t j = 0; j < v.size(); ++j) {
    Vec r(v.size() + 1, 0);
    r[j] = 1;
    r[v.size()] = p.neg(v[j] % p.value());
    rows.push_back(std::move(r));
  }
  return from_rows(p, 0, v.size(), rows);
}

}  // namespace gen

}  // namespace stabrel
