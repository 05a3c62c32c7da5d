#include "stabrel/qec.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace stabrel {

StabilizerCode code_from_subspace(const GradedSubspace& s) {
  SympClass c = classify(s);
  if (c != SympClass::coisotropic && c != SympClass::lagrangian)
    throw std::invalid_argument("code subspace is not coisotropic");
  const std::size_t n = s.qudits(), dim = s.linear_part().dim();
  return StabilizerCode{s.field(), n, dim - n, s, stinespring_dilate(s)};
}

StabilizerCode code_from_generators(Prime p, std::size_t n, const std::vector<Vec>& gens, const Vec& phases) {
  if (phases.size() != gens.size()) throw std::invalid_argument("one phase per generator");
  Subspace lw = Subspace::span(p, 2 * n, gens);
  SympClass c = classify(lw);
  if (c != SympClass::isotropic && c != SympClass::lagrangian)
    throw std::invalid_argument("stabilizer generators do not commute");
  std::vector<Vec> rows;
  for (const auto& b : gens) {
    Vec r(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = p.neg(b[n + i]);
      r[n + i] = b[i];
    }
    rows.push_back(r);
  }
  Vec shift(2 * n, 0);
  if (!rows.empty()) {
    auto a = solve_affine(FpMatrix(p, 2 * n, rows), phases);
    if (!a) throw std::invalid_argument("generator phases are inconsistent");
    shift = *a;
  }
  return code_from_subspace(GradedSubspace(symp_complement(lw), shift));
}

namespace {

GradedRelation readout_gadget(Prime p) {
  return compose_all({measure_z(p), cl_z_spider(p, 1, 2), tensor(prep_z(p), identity(p, classical_wires(1)))});
}

std::vector<Port> slice_ports(const std::vector<Port>& v, std::size_t from, std::size_t n) {
  return {v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from + n)};
}

std::vector<Port> join(std::vector<Port> a, const std::vector<Port>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Attaches the measurement circuit; returns (quantum outputs, classical outcomes).
std::pair<std::vector<Port>, std::vector<Port>> attach_measurement(Network& net, const StabilizerCode& code,
                                                                   const std::vector<Port>& in) {
  const Prime p = code.p;
  const std::size_t n = code.n, k = code.k, r = n - k;
  const GradedRelation& u = code.dilation.unitary;
  auto mid = add_ports(net, quantum_wires(n));
  attach(net, dagger(u), in, mid);
  GradedRelation gadget = readout_gadget(p);
  auto after = mid;
  std::vector<Port> outcomes;
  for (std::size_t i = 0; i < r; ++i) {
    auto q = add_ports(net, quantum_wires(1));
    auto c = add_ports(net, classical_wires(1));
    attach(net, gadget, {mid[k + i]}, join(q, c));
    after[k + i] = q[0];
    outcomes.push_back(c[0]);
  }
  auto out = add_ports(net, quantum_wires(n));
  attach(net, u, after, out);
  return {out, outcomes};
}

void require_size(const StabilizerCode& code, const Vec& e) {
  if (e.size() != 2 * code.n) throw std::invalid_argument("error vector has the wrong length");
}

Vec zpart(const Vec& e, std::size_t n) { return Vec(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n)); }
Vec xpart(const Vec& e, std::size_t n) { return Vec(e.begin() + static_cast<std::ptrdiff_t>(n), e.end()); }

Vec negated(Prime p, Vec v) {
  for (auto& x : v) x = p.neg(x);
  return v;
}

}  // namespace

GradedRelation measurement_circuit(const StabilizerCode& code) {
  Network net(code.p);
  auto in = add_ports(net, quantum_wires(code.n));
  auto [out, outcomes] = attach_measurement(net, code, in);
  return project(net, in, join(out, outcomes));
}

Vec syndrome(const StabilizerCode& code, const Vec& e) {
  require_size(code, e);
  const Prime p = code.p;
  Network net(p);
  auto logical = add_ports(net, quantum_wires(code.k));
  auto phys = add_ports(net, quantum_wires(code.n));
  auto hit = add_ports(net, quantum_wires(code.n));
  attach(net, code.encoder(), logical, phys);
  attach(net, weyl(p, zpart(e, code.n), xpart(e, code.n)), phys, hit);
  auto [out, outcomes] = attach_measurement(net, code, hit);
  AffineRelation d = project(net, {}, outcomes).rel();
  if (d.is_empty() || d.linear_part().dim() != 0) throw std::logic_error("syndrome is not a single outcome");
  return *d.particular_point();
}

Vec symplectic_syndrome(const StabilizerCode& code, const Vec& e) {
  require_size(code, e);
  Vec d;
  for (const auto& b : code.syndrome_basis()) d.push_back(omega(code.p, b, e));
  return d;
}

bool undetectable(const StabilizerCode& code, const Vec& e) {
  Vec d = syndrome(code, e);
  return std::all_of(d.begin(), d.end(), [](Elem x) { return x == 0; });
}

bool in_code_space(const StabilizerCode& code, const Vec& e) { return code.subspace.linear_part().contains(e); }

Vec AffineMap::operator()(const Vec& d) const {
  Vec out = m.apply(d);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = m.field().add(out[i], shift[i]);
  return out;
}

std::optional<AffineMap> affine_fit(Prime p, std::size_t n, std::size_t r, const CorrectionTable& t) {
  std::vector<Vec> rows;
  for (const auto& [d, e] : t.entries) {
    Vec row = d;
    row.push_back(1);
    rows.push_back(row);
  }
  FpMatrix m(p, 2 * n, r);
  Vec shift(2 * n, 0);
  if (rows.empty()) return AffineMap{m, shift};
  FpMatrix a(p, r + 1, rows);
  for (std::size_t j = 0; j < 2 * n; ++j) {
    Vec rhs;
    for (const auto& [d, e] : t.entries) rhs.push_back(e[j]);
    auto sol = solve_affine(a, rhs);
    if (!sol) return std::nullopt;
    for (std::size_t i = 0; i < r; ++i) m.set(j, i, (*sol)[i]);
    shift[j] = (*sol)[r];
  }
  return AffineMap{m, shift};
}

bool Report::all_pass() const {
  return std::all_of(branches.begin(), branches.end(), [](const BranchResult& b) { return b.pass; });
}

GradedRelation branch_relation(const StabilizerCode& code, const Vec& e, const Vec& correction) {
  require_size(code, e);
  require_size(code, correction);
  const Prime p = code.p;
  const std::size_t n = code.n, k = code.k;
  Network net(p);
  auto logical = add_ports(net, quantum_wires(k));
  auto phys = add_ports(net, quantum_wires(n));
  auto hit = add_ports(net, quantum_wires(n));
  attach(net, code.encoder(), logical, phys);
  attach(net, weyl(p, zpart(e, n), xpart(e, n)), phys, hit);
  auto [meas, outcomes] = attach_measurement(net, code, hit);
  Vec d = syndrome(code, e);
  attach(net, cl_point(p, d), {}, outcomes);
  auto fixed = add_ports(net, quantum_wires(n));
  Vec minus = negated(p, correction);
  attach(net, weyl(p, zpart(minus, n), xpart(minus, n)), meas, fixed);
  auto decoded = add_ports(net, quantum_wires(n));
  attach(net, dagger(code.dilation.unitary), fixed, decoded);
  return project(net, logical, join(slice_ports(decoded, 0, k), outcomes));
}

Report verify_correction(const StabilizerCode& code, const std::vector<Vec>& errors, const CorrectionTable& table) {
  Report rep;
  const GradedRelation id_k = identity(code.p, quantum_wires(code.k));
  for (const auto& e : errors) {
    Vec d = syndrome(code, e);
    auto it = table.entries.find(d);
    if (it == table.entries.end()) {
      rep.branches.push_back({e, d, false, "no table entry for syndrome " + format_tuple(d)});
      continue;
    }
    bool ok = branch_relation(code, e, it->second) == tensor(id_k, cl_point(code.p, d));
    rep.branches.push_back({e, d, ok, ok ? "" : "residual error acts on the logical wires"});
  }
  std::sort(rep.branches.begin(), rep.branches.end(),
            [](const BranchResult& a, const BranchResult& b) { return a.error < b.error; });
  return rep;
}

GradedRelation affine_correction_protocol(const StabilizerCode& code, const AffineMap& f) {
  const Prime p = code.p;
  const std::size_t n = code.n, k = code.k, r = n - k;
  if (f.m.rows() != 2 * n || f.m.cols() != r || f.shift.size() != 2 * n)
    throw std::invalid_argument("correction map has the wrong shape");
  Network net(p);
  auto in = add_ports(net, quantum_wires(n));
  auto [meas, outcomes] = attach_measurement(net, code, in);

  auto kept = add_ports(net, classical_wires(r));
  auto ctrl = add_ports(net, classical_wires(r));
  for (std::size_t i = 0; i < r; ++i) attach(net, cl_z_spider(p, 1, 2), {outcomes[i]}, {kept[i], ctrl[i]});

  // g = -f(d) on 2n classical wires.
  std::vector<Vec> rows;
  for (std::size_t j = 0; j < 2 * n; ++j) {
    Vec row(r + 2 * n + 1, 0);
    for (std::size_t i = 0; i < r; ++i) row[i] = f.m.at(j, i);
    row[r + j] = 1;
    row.back() = f.shift[j];
    rows.push_back(row);
  }
  auto g = add_ports(net, classical_wires(2 * n));
  attach(net, classical(AffineRelation::from_constraints(p, r, 2 * n, FpMatrix(p, r + 2 * n + 1, rows))), ctrl, g);

  GradedRelation shift_x = x_spider(p, 2, 1), shift_z = z_spider(p, 2, 1);
  GradedRelation px = prep_z(p), pz = prep_x(p);
  std::vector<Port> fixed;
  for (std::size_t j = 0; j < n; ++j) {
    auto a = add_ports(net, quantum_wires(1));
    auto b = add_ports(net, quantum_wires(1));
    auto mid = add_ports(net, quantum_wires(1));
    auto out = add_ports(net, quantum_wires(1));
    attach(net, px, {g[n + j]}, a);
    attach(net, shift_x, {meas[j], a[0]}, mid);
    attach(net, pz, {g[j]}, b);
    attach(net, shift_z, {mid[0], b[0]}, out);
    fixed.push_back(out[0]);
  }
  auto decoded = add_ports(net, quantum_wires(n));
  attach(net, dagger(code.dilation.unitary), fixed, decoded);
  return project(net, in, join(slice_ports(decoded, 0, k), kept));
}

GradedRelation protocol_with_error(const StabilizerCode& code, const AffineMap& f, const Vec& e) {
  require_size(code, e);
  return compose_all(
      {code.encoder(), weyl(code.p, zpart(e, code.n), xpart(e, code.n)), affine_correction_protocol(code, f)});
}

namespace {

std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

std::vector<std::string> words(std::string s) {
  for (auto& c : s)
    if (c == ',' || c == '(' || c == ')' || c == '[' || c == ']') c = ' ';
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

Elem parse_elem(Prime p, const std::string& w) {
  std::size_t used = 0;
  long long v;
  try {
    v = std::stoll(w, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + w + "'");
  }
  if (used != w.size()) throw std::invalid_argument("not a number: '" + w + "'");
  const long long q = p.value();
  if (v <= -q || v >= q) throw std::invalid_argument("entry " + w + " out of range for p=" + std::to_string(q));
  return static_cast<Elem>(((v % q) + q) % q);
}

Vec parse_elems(Prime p, const std::string& s) {
  Vec v;
  for (const auto& w : words(s)) v.push_back(parse_elem(p, w));
  return v;
}

std::vector<std::string> split_bar(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto bar = s.find('|', start);
    parts.push_back(s.substr(start, bar - start));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return parts;
}

std::optional<std::pair<std::string, std::string>> key_value(const std::string& line) {
  auto w = words(line);
  std::string joined;
  for (const auto& x : w) joined += x;
  auto eq = joined.find('=');
  if (eq == std::string::npos) return std::nullopt;
  return std::make_pair(joined.substr(0, eq), joined.substr(eq + 1));
}

std::size_t parse_count(const std::string& what, const std::string& v) {
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; }) || v.size() > 6)
    throw std::invalid_argument("bad " + what + " '" + v + "'");
  return std::stoul(v);
}

Prime header_prime(const std::string& v, std::optional<Prime> prime) {
  Elem q = static_cast<Elem>(parse_count("p", v));
  if (prime) return *prime;
  return Prime(q);
}

std::string at_line(std::size_t line, const std::string& msg) { return "line " + std::to_string(line) + ": " + msg; }

}  // namespace

Vec parse_symplectic(Prime p, std::size_t n, const std::string& text) {
  auto parts = split_bar(text);
  if (parts.size() != 2) throw std::invalid_argument("expected 'z-part | x-part'");
  Vec z = parse_elems(p, parts[0]), x = parse_elems(p, parts[1]);
  if (z.size() != n || x.size() != n)
    throw std::invalid_argument("expected " + std::to_string(n) + " entries on each side of '|'");
  z.insert(z.end(), x.begin(), x.end());
  return z;
}

CodeFile parse_code(const std::string& text, std::optional<Prime> prime) {
  std::optional<Prime> p;
  std::optional<std::size_t> n, k;
  std::vector<std::pair<std::size_t, std::string>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_comment(line);
    if (words(line).empty()) continue;
    try {
      if (line.find('|') == std::string::npos) {
        auto kv = key_value(line);
        if (!kv) throw std::invalid_argument("expected key=value or a generator row");
        if (kv->first == "p")
          p = header_prime(kv->second, prime);
        else if (kv->first == "n")
          n = parse_count("n", kv->second);
        else if (kv->first == "k")
          k = parse_count("k", kv->second);
        else
          throw std::invalid_argument("unknown key '" + kv->first + "'");
      } else {
        rows.emplace_back(lineno, line);
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(at_line(lineno, e.what()));
    }
  }
  if (!p || !n || !k) throw std::invalid_argument("code file needs p=, n= and k=");
  if (*k > *n) throw std::invalid_argument("k exceeds n");
  CodeFile f{*p, *n, *k, {}, {}};
  for (const auto& [ln, row] : rows) {
    try {
      auto parts = split_bar(row);
      if (parts.size() != 2 && parts.size() != 3) throw std::invalid_argument("expected 'z | x [| phase]'");
      f.gens.push_back(parse_symplectic(*p, *n, parts[0] + "|" + parts[1]));
      Vec ph = parts.size() == 3 ? parse_elems(*p, parts[2]) : Vec{0};
      if (ph.size() != 1) throw std::invalid_argument("phase must be a single entry");
      f.phases.push_back(ph[0]);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(at_line(ln, e.what()));
    }
  }
  return f;
}

StabilizerCode build_code(const CodeFile& f) {
  StabilizerCode c = code_from_generators(f.p, f.n, f.gens, f.phases);
  if (c.k != f.k)
    throw std::invalid_argument("generators define k=" + std::to_string(c.k) + ", file says k=" + std::to_string(f.k));
  return c;
}

CorrectionTable parse_table(Prime p, std::size_t n, std::size_t r, const std::string& text) {
  CorrectionTable t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_comment(line);
    if (words(line).empty()) continue;
    try {
      auto arrow = line.find("->");
      if (arrow == std::string::npos) throw std::invalid_argument("expected 'syndrome -> error'");
      Vec d = parse_elems(p, line.substr(0, arrow));
      if (d.size() != r) throw std::invalid_argument("syndrome needs " + std::to_string(r) + " entries");
      Vec e = parse_symplectic(p, n, line.substr(arrow + 2));
      if (!t.entries.emplace(d, e).second) throw std::invalid_argument("duplicate syndrome " + format_tuple(d));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(at_line(lineno, e.what()));
    }
  }
  return t;
}

std::vector<Vec> parse_errors(Prime p, std::size_t n, const std::string& text) {
  std::vector<Vec> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_comment(line);
    if (words(line).empty()) continue;
    try {
      out.push_back(parse_symplectic(p, n, line));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(at_line(lineno, e.what()));
    }
  }
  return out;
}

SubspaceFile parse_subspace(const std::string& text, std::optional<Prime> prime) {
  std::optional<Prime> p;
  std::optional<std::size_t> n;
  std::vector<Vec> rows;
  std::optional<Vec> shift;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_comment(line);
    auto w = words(line);
    if (w.empty()) continue;
    try {
      if (line.find('|') == std::string::npos) {
        auto kv = key_value(line);
        if (!kv) throw std::invalid_argument("expected key=value or a row 'z | x'");
        if (kv->first == "p")
          p = header_prime(kv->second, prime);
        else if (kv->first == "n")
          n = parse_count("n", kv->second);
        else
          throw std::invalid_argument("unknown key '" + kv->first + "'");
        continue;
      }
      if (!p || !n) throw std::invalid_argument("p= and n= must precede the rows");
      if (w[0] == "shift") {
        if (shift) throw std::invalid_argument("shift given twice");
        shift = parse_symplectic(*p, *n, line.substr(line.find("shift") + 5));
      } else {
        rows.push_back(parse_symplectic(*p, *n, line));
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(at_line(lineno, e.what()));
    }
  }
  if (!p || !n) throw std::invalid_argument("subspace file needs p= and n=");
  return SubspaceFile{*p, *n, GradedSubspace(Subspace::span(*p, 2 * *n, rows), shift ? *shift : Vec(2 * *n, 0))};
}

std::string format_tuple(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string format_symplectic(const Vec& v) {
  const std::size_t n = v.size() / 2;
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i == n) s += "|";
    else if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

}  // namespace stabrel
