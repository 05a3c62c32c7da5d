#include "stabrel/dilation.hpp"

#include <algorithm>
#include <stdexcept>

namespace stabrel {

Vec apply(Prime p, const SympOp& op, const Vec& v) {
  const std::size_t n = v.size() / 2;
  Vec w = v;
  const std::size_t a = op.a, b = op.b;
  switch (op.kind) {
    case SympOp::Kind::fourier:
      w[a] = v[n + a];
      w[n + a] = p.neg(v[a]);
      break;
    case SympOp::Kind::controlled_add:
      w[n + b] = p.add(v[n + b], p.mul(op.weight, v[n + a]));
      w[a] = p.sub(v[a], p.mul(op.weight, v[b]));
      break;
    case SympOp::Kind::shear:
      w[n + a] = p.add(v[n + a], p.mul(op.weight, v[a]));
      break;
    case SympOp::Kind::pair_shear:
      w[n + a] = p.add(v[n + a], p.mul(op.weight, v[b]));
      w[n + b] = p.add(w[n + b], p.mul(op.weight, v[a]));
      break;
  }
  return w;
}

Vec apply_inverse(Prime p, const SympOp& op, const Vec& v) {
  if (op.kind == SympOp::Kind::fourier) {
    const std::size_t n = v.size() / 2;
    Vec w = v;
    w[op.a] = p.neg(v[n + op.a]);
    w[n + op.a] = v[op.a];
    return w;
  }
  SympOp inv = op;
  inv.weight = p.neg(op.weight);
  return apply(p, inv, v);
}

namespace {

GradedRelation controlled_add_2(Prime p, Elem w) {
  Network net(p);
  auto in = add_ports(net, quantum_wires(2));
  auto out = add_ports(net, quantum_wires(2));
  auto link = add_ports(net, quantum_wires(2));
  attach(net, z_spider(p, 1, 2), {in[0]}, {out[0], link[0]});
  attach(net, scaling_gate(p, w), {link[0]}, {link[1]});
  attach(net, x_spider(p, 2, 1), {in[1], link[1]}, {out[1]});
  return project(net, in, out);
}

GradedRelation pair_shear_2(Prime p, Elem w) {
  Network net(p);
  auto in = add_ports(net, quantum_wires(2));
  auto out = add_ports(net, quantum_wires(2));
  auto link = add_ports(net, quantum_wires(3));
  attach(net, x_spider(p, 1, 2), {in[0]}, {out[0], link[0]});
  attach(net, fourier(p), {link[0]}, {link[1]});
  attach(net, scaling_gate(p, p.neg(w)), {link[1]}, {link[2]});
  attach(net, x_spider(p, 2, 1), {in[1], link[2]}, {out[1]});
  return project(net, in, out);
}

}  // namespace

GradedRelation realize(Prime p, const SympOp& op, std::size_t n) {
  switch (op.kind) {
    case SympOp::Kind::fourier: return on_wires(fourier(p), n, {op.a});
    case SympOp::Kind::controlled_add: return on_wires(controlled_add_2(p, op.weight), n, {op.a, op.b});
    case SympOp::Kind::shear: return on_wires(x_spider(p, 1, 1, {0, op.weight}), n, {op.a});
    case SympOp::Kind::pair_shear: return on_wires(pair_shear_2(p, op.weight), n, {op.a, op.b});
  }
  throw std::logic_error("realize: unknown op");
}

GradedRelation graph_of(Prime p, std::size_t n, const std::vector<Vec>& images) {
  if (images.size() != 2 * n) throw std::invalid_argument("graph_of: need 2n images");
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    Vec r(4 * n + 1, 0);
    r[i] = 1;
    for (std::size_t j = 0; j < 2 * n; ++j) r[2 * n + j] = images[i][j];
    rows.push_back(std::move(r));
  }
  Vec h(4 * n + 1, 0);
  h.back() = 1;
  rows.push_back(h);
  return GradedRelation(quantum_wires(n), quantum_wires(n),
                        AffineRelation::from_homogenized(2 * n, 2 * n, Subspace::span(p, 4 * n + 1, rows)));
}

Dilation stinespring_dilate(const GradedSubspace& s) {
  const Prime p = s.field();
  const std::size_t n = s.qudits();
  SympClass cls = classify(s);
  if (cls != SympClass::coisotropic && cls != SympClass::lagrangian)
    throw std::invalid_argument("stinespring_dilate: subspace is not coisotropic");
  const Subspace v = symp_complement(s.linear_part());
  const std::size_t r = v.dim(), m = n - r;
  std::vector<Vec> rows = v.basis().row_list();
  std::vector<SympOp> ops;
  auto push = [&](SympOp op) {
    for (auto& row : rows) row = apply(p, op, row);
    ops.push_back(op);
  };
  auto z_rank = [&] {
    std::vector<Vec> zs;
    for (const auto& row : rows) zs.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
    return rank(FpMatrix(p, n, zs));
  };

  // Move every pivot into the Z block.
  for (std::size_t round = 0; round <= n && z_rank() < r; ++round) {
    RrefResult red = rref(FpMatrix(p, 2 * n, rows));
    for (auto c : red.pivots)
      if (c >= n) push({SympOp::Kind::fourier, c - n, 0, 0});
  }
  if (z_rank() != r) throw std::logic_error("stinespring_dilate: Z block not full rank");

  // Row reduce with pivots taken from the rightmost wires.
  std::vector<std::size_t> order;
  for (std::size_t i = n; i-- > 0;) order.push_back(i);
  for (std::size_t i = 0; i < n; ++i) order.push_back(n + i);
  RrefResult red = rref(FpMatrix(p, 2 * n, rows).select_cols(order));
  std::vector<std::pair<std::size_t, Vec>> pivot_rows;
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    Vec back(2 * n, 0);
    for (std::size_t j = 0; j < 2 * n; ++j) back[order[j]] = red.matrix.at(i, j);
    pivot_rows.emplace_back(order[red.pivots[i]], std::move(back));
  }
  std::sort(pivot_rows.begin(), pivot_rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::size_t> piv, logical;
  rows.clear();
  for (auto& [w, row] : pivot_rows) {
    piv.push_back(w);
    rows.push_back(std::move(row));
  }
  for (std::size_t w = 0; w < n; ++w)
    if (std::find(piv.begin(), piv.end(), w) == piv.end()) logical.push_back(w);

  // Clear the Z entries on logical wires.
  for (std::size_t i = 0; i < r; ++i)
    for (auto j : logical)
      if (Elem c = rows[i][j]; c != 0) push({SympOp::Kind::controlled_add, j, piv[i], c});

  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k)
      if (rows[i][n + piv[k]] != rows[k][n + piv[i]]) throw std::logic_error("stinespring_dilate: X_A not symmetric");

  // Clear the X entries: logical columns, then the symmetric pivot block.
  for (std::size_t i = 0; i < r; ++i)
    for (auto j : logical)
      if (Elem c = rows[i][n + j]; c != 0) push({SympOp::Kind::pair_shear, piv[i], j, p.neg(c)});
  for (std::size_t i = 0; i < r; ++i)
    if (Elem d = rows[i][n + piv[i]]; d != 0) push({SympOp::Kind::shear, piv[i], 0, p.neg(d)});
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = i + 1; k < r; ++k)
      if (Elem c = rows[i][n + piv[k]]; c != 0) push({SympOp::Kind::pair_shear, piv[i], piv[k], p.neg(c)});

  for (std::size_t i = 0; i < r; ++i) {
    Vec target(2 * n, 0);
    target[piv[i]] = 1;
    if (rows[i] != target) throw std::logic_error("stinespring_dilate: reduction did not reach the Z basis");
  }

  std::vector<GradedRelation> steps{identity(p, quantum_wires(n))};
  for (const auto& op : ops) steps.push_back(realize(p, op, n));
  GradedRelation u = compose_all(steps);

  std::vector<std::size_t> perm(n);
  for (std::size_t k = 0; k < m; ++k) perm[logical[k]] = k;
  for (std::size_t i = 0; i < r; ++i) perm[piv[i]] = m + i;
  Vec az(s.shift().begin(), s.shift().begin() + static_cast<std::ptrdiff_t>(n));
  Vec ax(s.shift().begin() + static_cast<std::ptrdiff_t>(n), s.shift().end());
  GradedRelation unitary =
      compose_all({wire_permutation(p, quantum_wires(n), perm), dagger(u), weyl(p, az, ax)});

  std::vector<GradedRelation> prep{identity(p, quantum_wires(m))};
  for (std::size_t i = 0; i < r; ++i) prep.push_back(x_spider(p, 0, 1));
  GradedRelation encoder = compose(tensor_all(p, prep), unitary);

  std::vector<Vec> basis;
  for (std::size_t i = 0; i < r; ++i) {
    Vec b(2 * n, 0);
    b[piv[i]] = 1;
    for (std::size_t k = ops.size(); k-- > 0;) b = apply_inverse(p, ops[k], b);
    basis.push_back(std::move(b));
  }
  return Dilation{encoder, unitary, ops, logical, piv, basis};
}

Purified purify(const GradedRelation& r) {
  if (r.is_empty()) throw std::invalid_argument("purify: empty relation");
  const Prime p = r.field();
  const std::size_t n_in = r.dom_types().size(), n_out = r.cod_types().size(), w = n_in + n_out;
  Dilation d = stinespring_dilate(bent_state(r));
  const std::size_t extra = d.logical_wires.size();
  // Bend the encoder's inputs into extra outputs: wires (extra, w) -> (w, extra).
  GradedSubspace st = bent_state(d.encoder);
  std::vector<Vec> rows;
  std::vector<std::size_t> wire_order;
  for (std::size_t i = 0; i < w; ++i) wire_order.push_back(extra + i);
  for (std::size_t i = 0; i < extra; ++i) wire_order.push_back(i);
  const std::size_t tot = w + extra;
  auto reorder = [&](const Vec& v) {
    Vec out(2 * tot, 0);
    for (std::size_t k = 0; k < tot; ++k) {
      out[k] = v[wire_order[k]];
      out[tot + k] = v[tot + wire_order[k]];
    }
    return out;
  };
  for (std::size_t i = 0; i < st.linear_part().dim(); ++i) rows.push_back(reorder(st.linear_part().basis().row(i)));
  GradedSubspace moved(Subspace::span(p, 2 * tot, rows), reorder(st.shift()));
  return Purified{unbend(moved, n_in), extra};
}

}  // namespace stabrel
