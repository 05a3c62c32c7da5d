#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "stabrel/diag.hpp"

namespace stabrel {

std::string render_signed(Prime p, Elem e) {
  const long long q = p.value();
  long long v = e % q;
  if (2 * v > q) v -= q;
  return std::to_string(v);
}

std::vector<std::string> variable_names(const GradedRelation& r, Layer layer) {
  std::vector<std::string> names;
  auto side = [&](const WireTypes& types, const std::string& s) {
    if (layer == Layer::affine) {
      for (std::size_t k = 0; k < types.size(); ++k) names.push_back(s + std::to_string(k + 1));
      return;
    }
    for (std::size_t k = 0; k < types.size(); ++k)
      if (types[k] == WireType::quantum) names.push_back("z" + s + std::to_string(k + 1));
    for (std::size_t k = 0; k < types.size(); ++k)
      if (types[k] == WireType::quantum) names.push_back("x" + s + std::to_string(k + 1));
    for (std::size_t k = 0; k < types.size(); ++k)
      if (types[k] == WireType::classical) names.push_back("c" + s + std::to_string(k + 1));
  };
  side(r.dom_types(), "a");
  side(r.cod_types(), "b");
  return names;
}

namespace {

using Term = std::pair<Elem, std::size_t>;

std::string render_sum(Prime p, const std::vector<Term>& terms, Elem constant, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  auto piece = [&](long long coef, const std::string& body) {
    bool neg = coef < 0;
    long long mag = neg ? -coef : coef;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    if (body.empty())
      os << mag;
    else if (mag == 1)
      os << body;
    else
      os << mag << "*" << body;
    first = false;
  };
  for (auto [c, v] : terms) piece(std::stoll(render_signed(p, c)), names[v]);
  if (constant != 0) piece(std::stoll(render_signed(p, constant)), "");
  if (first) os << "0";
  return os.str();
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t v) {
  while (parent[v] != v) v = parent[v] = parent[parent[v]];
  return v;
}

}  // namespace

std::string render_equations(const GradedRelation& r, Layer layer) {
  if (r.is_empty()) return "EMPTY\n";
  const Prime p = r.field();
  const Subspace c = r.rel().constraints();
  if (c.dim() == 0) return "TOTAL\n";
  const std::size_t nv = r.rel().coords(), dom = r.rel().dom();
  const auto names = variable_names(r, layer);

  // Row reduce with the variable order reversed, so pivots fall on the latest variables.
  std::vector<std::size_t> order;
  for (std::size_t i = nv; i-- > 0;) order.push_back(i);
  order.push_back(nv);
  RrefResult red = rref(c.basis().select_cols(order));

  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::pair<std::size_t, std::string>> general;
  for (std::size_t i = 0; i < red.matrix.rows(); ++i) {
    Vec row(nv + 1, 0);
    for (std::size_t j = 0; j < order.size(); ++j) row[order[j]] = red.matrix.at(i, j);
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < nv; ++v)
      if (row[v] != 0) vars.push_back(v);
    Elem k = row[nv];
    if (vars.empty()) continue;
    Elem s = p.inv(row[vars[0]]);
    for (auto& e : row) e = p.mul(e, s);
    k = row[nv];
    if (vars.size() == 2 && k == 0 && row[vars[1]] == p.neg(1)) {
      parent[find_root(parent, vars[1])] = find_root(parent, vars[0]);
      continue;
    }
    std::vector<Term> lhs, rhs;
    Elem lconst = 0, rconst = 0;
    bool has_in = false, has_out = false;
    for (auto v : vars) (v < dom ? has_in : has_out) = true;
    if (has_in && has_out) {
      for (auto v : vars) {
        if (v < dom)
          lhs.push_back({row[v], v});
        else
          rhs.push_back({p.neg(row[v]), v});
      }
      lconst = k;
    } else {
      lhs.push_back({1, vars[0]});
      for (std::size_t t = 1; t < vars.size(); ++t) rhs.push_back({p.neg(row[vars[t]]), vars[t]});
      rconst = p.neg(k);
    }
    general.emplace_back(vars[0], render_sum(p, lhs, lconst, names) + " = " + render_sum(p, rhs, rconst, names));
  }

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t v = 0; v < nv; ++v) groups[find_root(parent, v)].push_back(v);
  std::vector<std::vector<std::size_t>> chains;
  for (auto& [root, members] : groups)
    if (members.size() > 1) chains.push_back(members);
  std::sort(chains.begin(), chains.end());
  std::sort(general.begin(), general.end());

  std::ostringstream os;
  for (const auto& ch : chains) {
    for (std::size_t i = 0; i < ch.size(); ++i) os << (i ? " = " : "") << names[ch[i]];
    os << "\n";
  }
  for (const auto& [v, line] : general) os << line << "\n";
  return os.str();
}

std::string render_basis(const GradedRelation& r, Layer layer) {
  if (r.is_empty()) return "EMPTY\n";
  const auto names = variable_names(r, layer);
  std::ostringstream os;
  os << "vars:";
  for (const auto& n : names) os << " " << n;
  os << "\n";
  const Subspace lin = r.rel().linear_part();
  os << "linear: " << lin.dim() << "\n";
  for (std::size_t i = 0; i < lin.dim(); ++i) {
    for (std::size_t j = 0; j < lin.ambient_dim(); ++j) os << (j ? " " : "") << lin.basis().at(i, j);
    os << "\n";
  }
  os << "shift:";
  const Vec pt = *r.rel().particular_point();
  for (auto e : pt) os << " " << e;
  os << "\n";
  return os.str();
}

}  // namespace stabrel
