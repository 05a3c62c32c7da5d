#include "stabrel/stab.hpp"

#include <algorithm>
#include <stdexcept>

namespace stabrel {

std::string to_string(WireType t) { return t == WireType::quantum ? "quantum" : "classical"; }

std::size_t coord_count(const WireTypes& types) {
  std::size_t n = 0;
  for (auto t : types) n += t == WireType::quantum ? 2 : 1;
  return n;
}

WireTypes quantum_wires(std::size_t n) { return WireTypes(n, WireType::quantum); }
WireTypes classical_wires(std::size_t n) { return WireTypes(n, WireType::classical); }

WireTypes concat(const WireTypes& a, const WireTypes& b) {
  WireTypes out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

GradedRelation::GradedRelation(WireTypes dom, WireTypes cod, AffineRelation rel)
    : dom_(std::move(dom)), cod_(std::move(cod)), rel_(std::move(rel)) {
  if (rel_.dom() != coord_count(dom_) || rel_.cod() != coord_count(cod_))
    throw std::invalid_argument("graded relation: layout does not match coordinates");
}

bool GradedRelation::all_quantum() const {
  auto q = [](WireType t) { return t == WireType::quantum; };
  return std::all_of(dom_.begin(), dom_.end(), q) && std::all_of(cod_.begin(), cod_.end(), q);
}

std::vector<Port> add_ports(Network& net, const WireTypes& types) {
  std::vector<Port> ports;
  for (auto t : types) {
    if (t == WireType::quantum) {
      std::size_t z = net.add_var();
      std::size_t x = net.add_var();
      ports.push_back({t, z, x});
    } else {
      std::size_t c = net.add_var();
      ports.push_back({t, c, c});
    }
  }
  return ports;
}

std::vector<std::size_t> layout_vars(const std::vector<Port>& ports) {
  std::vector<std::size_t> v;
  for (const auto& pt : ports)
    if (pt.type == WireType::quantum) v.push_back(pt.z);
  for (const auto& pt : ports)
    if (pt.type == WireType::quantum) v.push_back(pt.x);
  for (const auto& pt : ports)
    if (pt.type == WireType::classical) v.push_back(pt.x);
  return v;
}

namespace {

WireTypes types_of(const std::vector<Port>& ports) {
  WireTypes t;
  for (const auto& pt : ports) t.push_back(pt.type);
  return t;
}

void require_types(const WireTypes& a, const WireTypes& b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": wire type mismatch");
}

// Factors negating the z-coordinates of one boundary block.
void push_conjugation(Vec& f, const WireTypes& types, Prime p) {
  std::size_t q = std::count(types.begin(), types.end(), WireType::quantum);
  for (std::size_t i = 0; i < q; ++i) f.push_back(p.neg(1));
  for (std::size_t i = 0; i < coord_count(types) - q; ++i) f.push_back(1);
}

GradedRelation single_wire(Prime p, WireType in, WireType out,
                           void (*body)(Network&, const Port&, const Port&, Prime)) {
  Network net(p);
  auto i = add_ports(net, {in});
  auto o = add_ports(net, {out});
  body(net, i[0], o[0], p);
  return project(net, i, o);
}

}  // namespace

void attach(Network& net, const GradedRelation& r, const std::vector<Port>& in, const std::vector<Port>& out) {
  require_types(types_of(in), r.dom_types(), "attach inputs");
  require_types(types_of(out), r.cod_types(), "attach outputs");
  auto vars = layout_vars(in);
  auto o = layout_vars(out);
  vars.insert(vars.end(), o.begin(), o.end());
  net.add(r.rel(), vars);
}

GradedRelation project(const Network& net, const std::vector<Port>& in, const std::vector<Port>& out) {
  return GradedRelation(types_of(in), types_of(out), net.project(layout_vars(in), layout_vars(out)));
}

GradedRelation identity(Prime p, const WireTypes& types) {
  return GradedRelation(types, types, identity(p, coord_count(types)));
}

GradedRelation compose(const GradedRelation& r, const GradedRelation& s) {
  require_types(r.cod_types(), s.dom_types(), "compose");
  return GradedRelation(r.dom_types(), s.cod_types(), compose(r.rel(), s.rel()));
}

GradedRelation compose_all(const std::vector<GradedRelation>& steps) {
  if (steps.empty()) throw std::invalid_argument("compose_all: no steps");
  GradedRelation acc = steps.front();
  for (std::size_t i = 1; i < steps.size(); ++i) acc = compose(acc, steps[i]);
  return acc;
}

GradedRelation tensor(const GradedRelation& r, const GradedRelation& s) {
  if (!(r.field() == s.field())) throw std::invalid_argument("tensor: field mismatch");
  Network net(r.field());
  auto ri = add_ports(net, r.dom_types());
  auto si = add_ports(net, s.dom_types());
  auto ro = add_ports(net, r.cod_types());
  auto so = add_ports(net, s.cod_types());
  attach(net, r, ri, ro);
  attach(net, s, si, so);
  ri.insert(ri.end(), si.begin(), si.end());
  ro.insert(ro.end(), so.begin(), so.end());
  return project(net, ri, ro);
}

GradedRelation tensor_all(Prime p, const std::vector<GradedRelation>& parts) {
  GradedRelation acc = identity(p, WireTypes{});
  for (const auto& r : parts) acc = tensor(acc, r);
  return acc;
}

GradedRelation converse(const GradedRelation& r) {
  return GradedRelation(r.cod_types(), r.dom_types(), converse(r.rel()));
}

GradedRelation conjugate(const GradedRelation& r) {
  const Prime p = r.field();
  Vec f;
  push_conjugation(f, r.dom_types(), p);
  push_conjugation(f, r.cod_types(), p);
  return GradedRelation(r.dom_types(), r.cod_types(), r.rel().scaled(f));
}

GradedRelation transpose(const GradedRelation& r) { return conjugate(converse(r)); }

GradedRelation dagger(const GradedRelation& r) { return conjugate(transpose(r)); }

bool equal(const GradedRelation& r, const GradedRelation& s) {
  require_types(r.dom_types(), s.dom_types(), "equal");
  require_types(r.cod_types(), s.cod_types(), "equal");
  return equal(r.rel(), s.rel());
}

bool subset(const GradedRelation& r, const GradedRelation& s) {
  require_types(r.dom_types(), s.dom_types(), "subset");
  require_types(r.cod_types(), s.cod_types(), "subset");
  return subset(r.rel(), s.rel());
}

bool coarse_grains(const GradedRelation& f, const GradedRelation& g) { return subset(f, g) && !equal(f, g); }

GradedRelation image(const GradedRelation& r) {
  return GradedRelation({}, r.cod_types(), image(r.rel()));
}

GradedRelation wire_permutation(Prime p, const WireTypes& in_types, const std::vector<std::size_t>& perm) {
  if (perm.size() != in_types.size()) throw std::invalid_argument("wire_permutation: size mismatch");
  std::vector<bool> seen(perm.size(), false);
  for (auto k : perm) {
    if (k >= perm.size() || seen[k]) throw std::invalid_argument("wire_permutation: not a permutation");
    seen[k] = true;
  }
  Network net(p);
  auto in = add_ports(net, in_types);
  std::vector<Port> out;
  for (auto k : perm) out.push_back(in[k]);
  return project(net, in, out);
}

GradedRelation classical(const AffineRelation& r) {
  return GradedRelation(classical_wires(r.dom()), classical_wires(r.cod()), r);
}

GradedRelation z_spider(Prime p, std::size_t n_in, std::size_t n_out, Phase phase) {
  // X-spider with the affine phase on the z grading, Z-spider on the x grading,
  // the latter feeding the former through scalar(linear phase).
  Network net(p);
  auto in = add_ports(net, quantum_wires(n_in));
  auto out = add_ports(net, quantum_wires(n_out));
  std::size_t t = net.add_var();
  std::size_t u = net.add_var();
  std::vector<std::size_t> zs, xs;
  for (const auto& pt : in) zs.push_back(pt.z), xs.push_back(pt.x);
  zs.push_back(u);
  for (const auto& pt : out) zs.push_back(pt.z), xs.push_back(pt.x);
  xs.push_back(t);
  net.add(gen::x_spider(p, n_in + 1, n_out, phase.affine), zs);
  net.add(gen::z_spider(p, n_in, n_out + 1), xs);
  net.add(gen::scalar(p, phase.linear), {t, u});
  return project(net, in, out);
}

GradedRelation x_spider(Prime p, std::size_t n_in, std::size_t n_out, Phase phase) {
  Network net(p);
  auto in = add_ports(net, quantum_wires(n_in));
  auto out = add_ports(net, quantum_wires(n_out));
  std::size_t s = net.add_var();
  std::size_t u = net.add_var();
  std::vector<std::size_t> zs, xs;
  for (const auto& pt : in) zs.push_back(pt.z), xs.push_back(pt.x);
  xs.push_back(u);
  for (const auto& pt : out) zs.push_back(pt.z), xs.push_back(pt.x);
  zs.push_back(s);
  net.add(gen::z_spider(p, n_in, n_out + 1), zs);
  net.add(gen::x_spider(p, n_in + 1, n_out, phase.affine), xs);
  net.add(gen::scalar(p, phase.linear), {s, u});
  return project(net, in, out);
}

GradedRelation scaling_gate(Prime p, Elem a) {
  if (a % p.value() == 0) throw std::domain_error("scaling_gate: a must be invertible");
  Network net(p);
  auto in = add_ports(net, quantum_wires(1));
  auto out = add_ports(net, quantum_wires(1));
  net.add(gen::co_scalar(p, a), {in[0].z, out[0].z});
  net.add(gen::scalar(p, a), {in[0].x, out[0].x});
  return project(net, in, out);
}

GradedRelation fourier(Prime p) {
  const Elem one = 1, minus_one = p.neg(1);
  return compose_all({z_spider(p, 1, 1, {0, one}), x_spider(p, 1, 1, {0, minus_one}), z_spider(p, 1, 1, {0, one})});
}

GradedRelation fourier_dagger(Prime p) {
  const Elem one = 1, minus_one = p.neg(1);
  return compose_all(
      {z_spider(p, 1, 1, {0, minus_one}), x_spider(p, 1, 1, {0, one}), z_spider(p, 1, 1, {0, minus_one})});
}

GradedRelation weyl(Prime p, const Vec& zvec, const Vec& xvec) {
  if (zvec.size() != xvec.size()) throw std::invalid_argument("weyl: length mismatch");
  Network net(p);
  auto in = add_ports(net, quantum_wires(zvec.size()));
  auto out = add_ports(net, quantum_wires(zvec.size()));
  for (std::size_t i = 0; i < zvec.size(); ++i) {
    net.add(gen::x_spider(p, 1, 1, zvec[i]), {in[i].z, out[i].z});
    net.add(gen::x_spider(p, 1, 1, xvec[i]), {in[i].x, out[i].x});
  }
  return project(net, in, out);
}

GradedRelation discard(Prime p) {
  return GradedRelation(quantum_wires(1), {}, AffineRelation::total(p, 2, 0));
}

GradedRelation codiscard(Prime p) {
  return GradedRelation({}, quantum_wires(1), AffineRelation::total(p, 0, 2));
}

GradedRelation projector_z(Prime p) {
  return single_wire(p, WireType::quantum, WireType::quantum, [](Network& net, const Port& i, const Port& o, Prime q) {
    net.add(identity(q, 1), {i.x, o.x});
  });
}

GradedRelation projector_x(Prime p) {
  return single_wire(p, WireType::quantum, WireType::quantum, [](Network& net, const Port& i, const Port& o, Prime q) {
    net.add(identity(q, 1), {i.z, o.z});
  });
}

GradedRelation measure_z(Prime p) {
  return single_wire(p, WireType::quantum, WireType::classical,
                     [](Network& net, const Port& i, const Port& o, Prime q) { net.add(identity(q, 1), {i.x, o.x}); });
}

GradedRelation prep_z(Prime p) {
  return single_wire(p, WireType::classical, WireType::quantum,
                     [](Network& net, const Port& i, const Port& o, Prime q) { net.add(identity(q, 1), {i.x, o.x}); });
}

GradedRelation measure_x(Prime p) { return compose(fourier_dagger(p), measure_z(p)); }

GradedRelation prep_x(Prime p) { return compose(prep_z(p), fourier(p)); }

GradedRelation cl_z_spider(Prime p, std::size_t n_in, std::size_t n_out) {
  return classical(gen::z_spider(p, n_in, n_out));
}

GradedRelation cl_x_spider(Prime p, std::size_t n_in, std::size_t n_out, Elem phase) {
  return classical(gen::x_spider(p, n_in, n_out, phase));
}

GradedRelation cl_scalar(Prime p, Elem a) { return classical(gen::scalar(p, a)); }

GradedRelation cl_point(Prime p, const Vec& v) { return classical(gen::point(p, v)); }

namespace {

GradedRelation bastard(Prime p, std::size_t n_in, std::size_t n_out, const GradedRelation& meas,
                       const GradedRelation& prep) {
  std::vector<GradedRelation> ms(n_in, meas), ps(n_out, prep);
  return compose_all({tensor_all(p, ms), cl_z_spider(p, n_in, n_out), tensor_all(p, ps)});
}

}  // namespace

GradedRelation bastard_z(Prime p, std::size_t n_in, std::size_t n_out) {
  return bastard(p, n_in, n_out, measure_z(p), prep_z(p));
}

GradedRelation bastard_x(Prime p, std::size_t n_in, std::size_t n_out) {
  return bastard(p, n_in, n_out, measure_x(p), prep_x(p));
}

GradedRelation quantum_swap(Prime p) { return wire_permutation(p, quantum_wires(2), {1, 0}); }

GradedRelation on_wires(const GradedRelation& r, std::size_t width, const std::vector<std::size_t>& wires) {
  if (!r.all_quantum() || r.dom_types().size() != wires.size() || r.cod_types().size() != wires.size())
    throw std::invalid_argument("on_wires: needs a quantum k -> k relation on k listed wires");
  Network net(r.field());
  auto in = add_ports(net, quantum_wires(width));
  auto out = in;
  auto fresh = add_ports(net, quantum_wires(wires.size()));
  std::vector<Port> sel;
  for (auto w : wires) {
    if (w >= width) throw std::out_of_range("on_wires: wire index out of range");
    sel.push_back(in[w]);
  }
  attach(net, r, sel, fresh);
  for (std::size_t i = 0; i < wires.size(); ++i) out[wires[i]] = fresh[i];
  return project(net, in, out);
}

GradedSubspace bent_state(const GradedRelation& r) {
  if (!r.all_quantum()) throw std::invalid_argument("bent_state: all wires must be quantum");
  const Prime p = r.field();
  const std::size_t n = r.dom_types().size(), m = r.cod_types().size(), w = n + m;
  if (r.is_empty()) return GradedSubspace::empty(p, w);
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < n; ++i) perm.push_back(i);
  for (std::size_t i = 0; i < m; ++i) perm.push_back(2 * n + i);
  for (std::size_t i = 0; i < n; ++i) perm.push_back(n + i);
  for (std::size_t i = 0; i < m; ++i) perm.push_back(2 * n + m + i);
  Vec f(2 * w, 1);
  for (std::size_t i = 0; i < n; ++i) f[i] = p.neg(1);
  AffineRelation state = r.rel().permuted(0, 2 * w, perm).scaled(f);
  return GradedSubspace(state.linear_part(), *state.particular_point());
}

GradedRelation unbend(const GradedSubspace& s, std::size_t n_in) {
  const Prime p = s.field();
  const std::size_t w = s.qudits();
  if (n_in > w) throw std::invalid_argument("unbend: too many inputs");
  const std::size_t m = w - n_in;
  if (s.is_empty()) return GradedRelation(quantum_wires(n_in), quantum_wires(m), AffineRelation::empty(p, 2 * n_in, 2 * m));
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < s.linear_part().dim(); ++i) {
    Vec v = s.linear_part().basis().row(i);
    v.push_back(0);
    rows.push_back(std::move(v));
  }
  Vec a = s.shift();
  a.push_back(1);
  rows.push_back(a);
  AffineRelation state = AffineRelation::from_homogenized(0, 2 * w, Subspace::span(p, 2 * w + 1, rows));
  Vec f(2 * w, 1);
  for (std::size_t i = 0; i < n_in; ++i) f[i] = p.neg(1);
  state = state.scaled(f);
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < n_in; ++i) perm.push_back(i);
  for (std::size_t i = 0; i < n_in; ++i) perm.push_back(w + i);
  for (std::size_t i = n_in; i < w; ++i) perm.push_back(i);
  for (std::size_t i = n_in; i < w; ++i) perm.push_back(w + i);
  return GradedRelation(quantum_wires(n_in), quantum_wires(m), state.permuted(2 * n_in, 2 * m, perm));
}

SympClass classify(const GradedRelation& r) { return classify(bent_state(r)); }

}  // namespace stabrel
