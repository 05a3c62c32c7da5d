#include "stabrel/diag.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace stabrel {

std::string to_string(Layer l) { return l == Layer::affine ? "affine" : "doubled"; }

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

std::string to_string(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::node_in: return "n" + std::to_string(e.node) + ".in" + std::to_string(e.port);
    case Endpoint::Kind::node_out: return "n" + std::to_string(e.node) + ".out" + std::to_string(e.port);
    case Endpoint::Kind::boundary_in: return "in" + std::to_string(e.port);
    case Endpoint::Kind::boundary_out: return "out" + std::to_string(e.port);
  }
  return "?";
}

namespace {

enum class PhaseUse { none, affine, pair, invertible };

struct KindInfo {
  const char* name;
  bool variable_arity;
  std::size_t in;
  std::size_t out;
  PhaseUse phase;
};

const std::vector<KindInfo>& affine_kinds() {
  static const std::vector<KindInfo> k{
      {"z_spider", true, 1, 1, PhaseUse::none},   {"x_spider", true, 1, 1, PhaseUse::affine},
      {"scalar", false, 1, 1, PhaseUse::affine},  {"co_scalar", false, 1, 1, PhaseUse::affine},
      {"affine_unit", false, 0, 1, PhaseUse::none}, {"cup_z", false, 0, 2, PhaseUse::none},
      {"cap_z", false, 2, 0, PhaseUse::none},     {"cup_x", false, 0, 2, PhaseUse::none},
      {"cap_x", false, 2, 0, PhaseUse::none},     {"swap", false, 2, 2, PhaseUse::none},
      {"box", true, 0, 0, PhaseUse::none}};
  return k;
}

const std::vector<KindInfo>& doubled_kinds() {
  static const std::vector<KindInfo> k{
      {"z_spider", true, 1, 1, PhaseUse::pair},      {"x_spider", true, 1, 1, PhaseUse::pair},
      {"scaling", false, 1, 1, PhaseUse::invertible}, {"discard", false, 1, 0, PhaseUse::none},
      {"codiscard", false, 0, 1, PhaseUse::none},     {"measure_z", false, 1, 1, PhaseUse::none},
      {"measure_x", false, 1, 1, PhaseUse::none},     {"prep_z", false, 1, 1, PhaseUse::none},
      {"prep_x", false, 1, 1, PhaseUse::none},        {"cl_z_spider", true, 1, 1, PhaseUse::none},
      {"cl_x_spider", true, 1, 1, PhaseUse::affine},  {"cl_scalar", false, 1, 1, PhaseUse::affine},
      {"swap", false, 2, 2, PhaseUse::none},          {"box", true, 0, 0, PhaseUse::none}};
  return k;
}

const KindInfo* find_kind(Layer layer, const std::string& name) {
  for (const auto& k : layer == Layer::affine ? affine_kinds() : doubled_kinds())
    if (name == k.name) return &k;
  return nullptr;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

std::optional<std::size_t> parse_index(const std::string& s) {
  if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  return static_cast<std::size_t>(std::stoul(s));
}

std::optional<long long> parse_int(const std::string& s) {
  std::string body = s;
  bool neg = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  auto v = parse_index(body);
  if (!v) return std::nullopt;
  return neg ? -static_cast<long long>(*v) : static_cast<long long>(*v);
}

std::optional<Endpoint> parse_endpoint(const std::string& s) {
  using K = Endpoint::Kind;
  if (starts_with(s, "in"))
    if (auto k = parse_index(s.substr(2))) return Endpoint{K::boundary_in, 0, *k};
  if (starts_with(s, "out"))
    if (auto k = parse_index(s.substr(3))) return Endpoint{K::boundary_out, 0, *k};
  if (!starts_with(s, "n")) return std::nullopt;
  auto dot = s.find('.');
  if (dot == std::string::npos) return std::nullopt;
  auto id = parse_index(s.substr(1, dot - 1));
  std::string rest = s.substr(dot + 1);
  if (!id) return std::nullopt;
  if (starts_with(rest, "in"))
    if (auto k = parse_index(rest.substr(2))) return Endpoint{K::node_in, *id, *k};
  if (starts_with(rest, "out"))
    if (auto k = parse_index(rest.substr(3))) return Endpoint{K::node_out, *id, *k};
  return std::nullopt;
}

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ';') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != ';' && line[j] != '#')
      ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

struct Where {
  std::size_t line;
  std::size_t column;
};

WireTypes endpoint_types_of(const Diagram& d, const Endpoint& e) {
  using K = Endpoint::Kind;
  switch (e.kind) {
    case K::boundary_in: return d.in_types;
    case K::boundary_out: return d.out_types;
    case K::node_in: return d.node(e.node).in_types(d.layer);
    case K::node_out: return d.node(e.node).out_types(d.layer);
  }
  return {};
}

WireType type_at(const Diagram& d, const Endpoint& e) {
  WireTypes t = endpoint_types_of(d, e);
  if (e.port >= t.size()) throw std::invalid_argument("no such port " + to_string(e));
  return t[e.port];
}

std::size_t max_id(const Diagram& d) {
  std::size_t m = 0;
  for (const auto& n : d.nodes) m = std::max(m, n.id);
  return m;
}

}  // namespace

WireTypes Node::in_types(Layer layer) const {
  if (box) return box->in_types;
  if (layer == Layer::affine) return classical_wires(arity_in);
  if (kind == "prep_z" || kind == "prep_x" || starts_with(kind, "cl_")) return classical_wires(arity_in);
  return quantum_wires(arity_in);
}

WireTypes Node::out_types(Layer layer) const {
  if (box) return box->out_types;
  if (layer == Layer::affine) return classical_wires(arity_out);
  if (kind == "measure_z" || kind == "measure_x" || starts_with(kind, "cl_")) return classical_wires(arity_out);
  return quantum_wires(arity_out);
}

const Node& Diagram::node(std::size_t id) const {
  for (const auto& n : nodes)
    if (n.id == id) return n;
  throw std::invalid_argument("unknown node n" + std::to_string(id));
}

void validate(const Diagram& d) {
  std::set<std::size_t> ids;
  for (const auto& n : d.nodes)
    if (!ids.insert(n.id).second) throw std::invalid_argument("duplicate node id " + std::to_string(n.id));
  std::map<Endpoint, int> uses;
  for (const auto& w : d.wires) {
    if (!w.from.is_source() || w.to.is_source())
      throw std::invalid_argument("wire must run from a source to a sink: " + to_string(w.from) + " " + to_string(w.to));
    if (type_at(d, w.from) != type_at(d, w.to))
      throw std::invalid_argument("wire type mismatch between " + to_string(w.from) + " and " + to_string(w.to));
    ++uses[w.from];
    ++uses[w.to];
  }
  auto check = [&](const Endpoint& e) {
    int u = uses.count(e) ? uses[e] : 0;
    if (u == 0) throw std::invalid_argument("dangling port " + to_string(e));
    if (u > 1) throw std::invalid_argument("port " + to_string(e) + " has more than one wire");
  };
  using K = Endpoint::Kind;
  for (const auto& n : d.nodes) {
    for (std::size_t k = 0; k < n.in_types(d.layer).size(); ++k) check({K::node_in, n.id, k});
    for (std::size_t k = 0; k < n.out_types(d.layer).size(); ++k) check({K::node_out, n.id, k});
  }
  for (std::size_t k = 0; k < d.in_types.size(); ++k) check({K::boundary_in, 0, k});
  for (std::size_t k = 0; k < d.out_types.size(); ++k) check({K::boundary_out, 0, k});
  if (uses.size() != 2 * d.wires.size()) throw std::invalid_argument("an endpoint is used by more than one wire");
}

Diagram parse(const std::string& text, const std::filesystem::path& base_dir, std::optional<Prime> prime) {
  Diagram d;
  bool have_header = false;
  std::map<std::size_t, Where> node_at;
  std::vector<std::pair<Wire, Where>> wires;
  std::map<std::pair<bool, std::size_t>, std::pair<WireType, Where>> declared;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;

  auto fail = [&](std::size_t col, const std::string& msg) -> ParseError { return ParseError(lineno, col, msg); };

  auto phase_value = [&](const Token& t, const std::string& s) -> Elem {
    auto v = parse_int(s);
    if (!v) throw fail(t.column, "bad phase '" + s + "'");
    const long long p = d.p.value();
    if (*v <= -p || *v >= p) throw fail(t.column, "phase " + s + " out of range for p=" + std::to_string(p));
    return static_cast<Elem>(((*v % p) + p) % p);
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (!have_header) {
      bool got_p = false, got_layer = false;
      for (const auto& t : toks) {
        if (starts_with(t.text, "p=")) {
          auto v = parse_index(t.text.substr(2));
          if (!v) throw fail(t.column, "bad prime '" + t.text.substr(2) + "'");
          try {
            d.p = prime ? *prime : Prime(static_cast<Elem>(*v));
          } catch (const std::invalid_argument&) {
            throw fail(t.column, "p=" + std::to_string(*v) + " is not prime");
          }
          got_p = true;
        } else if (starts_with(t.text, "layer=")) {
          std::string l = t.text.substr(6);
          if (l == "affine")
            d.layer = Layer::affine;
          else if (l == "doubled")
            d.layer = Layer::doubled;
          else
            throw fail(t.column + 6, "unknown layer '" + l + "'");
          got_layer = true;
        } else {
          throw fail(t.column, "expected header 'p=<prime>; layer=<affine|doubled>'");
        }
      }
      if (!got_p || !got_layer) throw fail(1, "header needs both p= and layer=");
      have_header = true;
      continue;
    }

    const std::string& kw = toks[0].text;
    if (kw == "node") {
      if (toks.size() < 3) throw fail(toks[0].column, "node needs an id and a kind");
      std::string ids = toks[1].text;
      if (starts_with(ids, "n")) ids = ids.substr(1);
      auto id = parse_index(ids);
      if (!id) throw fail(toks[1].column, "bad node id '" + toks[1].text + "'");
      if (node_at.count(*id)) throw fail(toks[1].column, "duplicate node id " + std::to_string(*id));
      const KindInfo* info = find_kind(d.layer, toks[2].text);
      if (!info) throw fail(toks[2].column, "unknown " + to_string(d.layer) + " node kind '" + toks[2].text + "'");
      Node n{*id, info->name, {}, info->in, info->out, {}, nullptr};
      std::optional<std::size_t> ai, ao;
      bool phased = false;
      for (std::size_t i = 3; i < toks.size(); ++i) {
        const Token& t = toks[i];
        auto eq = t.text.find('=');
        if (eq == std::string::npos) throw fail(t.column, "expected key=value, got '" + t.text + "'");
        std::string key = t.text.substr(0, eq), val = t.text.substr(eq + 1);
        if (key == "phase") {
          if (info->phase == PhaseUse::none) throw fail(t.column, std::string(info->name) + " takes no phase");
          auto comma = val.find(',');
          n.phase.affine = phase_value(t, val.substr(0, comma));
          if (comma != std::string::npos) {
            n.phase.linear = phase_value(t, val.substr(comma + 1));
            if (info->phase != PhaseUse::pair && n.phase.linear != 0)
              throw fail(t.column, std::string(info->name) + " has no linear phase on this layer");
          }
          phased = true;
        } else if (key == "arity_in" || key == "arity_out") {
          auto v = parse_index(val);
          if (!v) throw fail(t.column, "bad arity '" + val + "'");
          (key == "arity_in" ? ai : ao) = *v;
        } else if (key == "file") {
          if (n.kind != "box") throw fail(t.column, "only box nodes take a file");
          n.file = val;
        } else {
          throw fail(t.column, "unknown key '" + key + "'");
        }
      }
      if (info->phase == PhaseUse::invertible && (!phased || n.phase.affine == 0))
        throw fail(toks[2].column, "scaling needs an invertible phase");
      if (n.kind == "box") {
        if (n.file.empty()) throw fail(toks[2].column, "box needs file=");
        std::filesystem::path sub = base_dir / n.file;
        try {
          n.box = std::make_shared<const Diagram>(parse_file(sub, prime ? prime : std::optional<Prime>(d.p)));
        } catch (const ParseError& e) {
          throw fail(toks[2].column, "in box " + n.file + ": " + e.what());
        } catch (const std::exception& e) {
          throw fail(toks[2].column, "in box " + n.file + ": " + e.what());
        }
        if (n.box->layer != d.layer) throw fail(toks[2].column, "box layer does not match");
        if (!(n.box->p == d.p)) throw fail(toks[2].column, "box prime does not match");
        n.arity_in = n.box->in_types.size();
        n.arity_out = n.box->out_types.size();
        if ((ai && *ai != n.arity_in) || (ao && *ao != n.arity_out))
          throw fail(toks[2].column, "box arity does not match its file");
      } else if (info->variable_arity) {
        if (ai) n.arity_in = *ai;
        if (ao) n.arity_out = *ao;
      } else if ((ai && *ai != info->in) || (ao && *ao != info->out)) {
        throw fail(toks[2].column, std::string(info->name) + " has fixed arity " + std::to_string(info->in) + "->" +
                                       std::to_string(info->out));
      }
      node_at[*id] = {lineno, toks[0].column};
      d.nodes.push_back(std::move(n));
    } else if (kw == "wire") {
      if (toks.size() != 3) throw fail(toks[0].column, "wire needs exactly two endpoints");
      auto a = parse_endpoint(toks[1].text);
      if (!a) throw fail(toks[1].column, "bad endpoint '" + toks[1].text + "'");
      auto b = parse_endpoint(toks[2].text);
      if (!b) throw fail(toks[2].column, "bad endpoint '" + toks[2].text + "'");
      if (a->is_source() == b->is_source())
        throw fail(toks[2].column, "wire must join a source (node output or input slot) to a sink");
      Wire w = a->is_source() ? Wire{*a, *b} : Wire{*b, *a};
      wires.push_back({w, {lineno, toks[1].column}});
    } else if (kw == "wiretype") {
      if (d.layer != Layer::doubled) throw fail(toks[0].column, "wiretype is only allowed on the doubled layer");
      if (toks.size() != 3) throw fail(toks[0].column, "wiretype needs a slot and a type");
      auto e = parse_endpoint(toks[1].text);
      if (!e || (e->kind != Endpoint::Kind::boundary_in && e->kind != Endpoint::Kind::boundary_out))
        throw fail(toks[1].column, "wiretype needs in<k> or out<k>");
      WireType t;
      if (toks[2].text == "quantum")
        t = WireType::quantum;
      else if (toks[2].text == "classical")
        t = WireType::classical;
      else
        throw fail(toks[2].column, "unknown wire type '" + toks[2].text + "'");
      declared[{e->kind == Endpoint::Kind::boundary_in, e->port}] = {t, {lineno, toks[1].column}};
    } else {
      throw fail(toks[0].column, "unknown statement '" + kw + "'");
    }
  }
  if (!have_header) throw ParseError(lineno + 1, 1, "missing header");

  // Boundary slots are numbered contiguously from 0.
  std::map<std::pair<bool, std::size_t>, Where> slots;
  for (const auto& [w, where] : wires) {
    for (const Endpoint& e : {w.from, w.to}) {
      if (e.kind == Endpoint::Kind::boundary_in) slots.try_emplace({true, e.port}, where);
      if (e.kind == Endpoint::Kind::boundary_out) slots.try_emplace({false, e.port}, where);
      if (e.kind == Endpoint::Kind::node_in || e.kind == Endpoint::Kind::node_out) {
        if (!node_at.count(e.node)) throw ParseError(where.line, where.column, "unknown node n" + std::to_string(e.node));
      }
    }
  }
  for (const auto& [key, v] : declared) slots.try_emplace(key, v.second);
  std::size_t n_in = 0, n_out = 0;
  for (const auto& [key, where] : slots) (key.first ? n_in : n_out) = std::max(key.first ? n_in : n_out, key.second + 1);
  for (bool is_in : {true, false}) {
    std::size_t count = is_in ? n_in : n_out;
    WireTypes& types = is_in ? d.in_types : d.out_types;
    for (std::size_t k = 0; k < count; ++k) {
      if (!slots.count({is_in, k})) {
        Where w = slots.rbegin()->second;
        throw ParseError(w.line, w.column, std::string("boundary slot ") + (is_in ? "in" : "out") + std::to_string(k) +
                                               " is missing");
      }
      auto it = declared.find({is_in, k});
      types.push_back(it == declared.end() ? (d.layer == Layer::affine ? WireType::classical : WireType::quantum)
                                           : it->second.first);
    }
  }

  // Per-port checks with positions.
  std::map<Endpoint, Where> seen;
  for (const auto& [w, where] : wires) {
    for (const Endpoint& e : {w.from, w.to}) {
      if (seen.count(e)) throw ParseError(where.line, where.column, "port " + to_string(e) + " has more than one wire");
      seen[e] = where;
      try {
        type_at(d, e);
      } catch (const std::invalid_argument& ex) {
        throw ParseError(where.line, where.column, ex.what());
      }
    }
    if (type_at(d, w.from) != type_at(d, w.to))
      throw ParseError(where.line, where.column,
                       "wire joins a " + to_string(type_at(d, w.from)) + " port to a " + to_string(type_at(d, w.to)) +
                           " port");
    d.wires.push_back(w);
  }
  using K = Endpoint::Kind;
  for (const auto& n : d.nodes) {
    Where at = node_at[n.id];
    for (std::size_t k = 0; k < n.arity_in; ++k)
      if (!seen.count({K::node_in, n.id, k})) throw ParseError(at.line, at.column, "dangling port n" + std::to_string(n.id) + ".in" + std::to_string(k));
    for (std::size_t k = 0; k < n.arity_out; ++k)
      if (!seen.count({K::node_out, n.id, k})) throw ParseError(at.line, at.column, "dangling port n" + std::to_string(n.id) + ".out" + std::to_string(k));
  }
  try {
    validate(d);
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, 1, e.what());
  }
  return d;
}

Diagram parse_file(const std::filesystem::path& path, std::optional<Prime> prime) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path.parent_path(), prime);
}

namespace {

GradedRelation node_relation(const Diagram& d, const Node& n) {
  const Prime p = d.p;
  const std::size_t ni = n.arity_in, no = n.arity_out;
  const std::string& k = n.kind;
  if (k == "box") return evaluate(*n.box);
  if (d.layer == Layer::affine) {
    const Elem a = n.phase.affine;
    if (k == "z_spider") return classical(gen::z_spider(p, ni, no));
    if (k == "x_spider") return classical(gen::x_spider(p, ni, no, a));
    if (k == "scalar") return classical(gen::scalar(p, a));
    if (k == "co_scalar") return classical(gen::co_scalar(p, a));
    if (k == "affine_unit") return classical(gen::affine_unit(p));
    if (k == "cup_z") return classical(gen::cup_z(p));
    if (k == "cap_z") return classical(gen::cap_z(p));
    if (k == "cup_x") return classical(gen::cup_x(p));
    if (k == "cap_x") return classical(gen::cap_x(p));
    if (k == "swap") return classical(gen::swap(p));
  } else {
    if (k == "z_spider") return z_spider(p, ni, no, n.phase);
    if (k == "x_spider") return x_spider(p, ni, no, n.phase);
    if (k == "scaling") return scaling_gate(p, n.phase.affine);
    if (k == "discard") return discard(p);
    if (k == "codiscard") return codiscard(p);
    if (k == "measure_z") return measure_z(p);
    if (k == "measure_x") return measure_x(p);
    if (k == "prep_z") return prep_z(p);
    if (k == "prep_x") return prep_x(p);
    if (k == "cl_z_spider") return cl_z_spider(p, ni, no);
    if (k == "cl_x_spider") return cl_x_spider(p, ni, no, n.phase.affine);
    if (k == "cl_scalar") return cl_scalar(p, n.phase.affine);
    if (k == "swap") return quantum_swap(p);
  }
  throw std::invalid_argument("no semantics for node kind " + k);
}

}  // namespace

GradedRelation evaluate(const Diagram& d) {
  Network net(d.p);
  std::map<Endpoint, Port> port_of;
  for (const auto& w : d.wires) {
    Port pt = add_ports(net, {type_at(d, w.from)})[0];
    port_of[w.from] = pt;
    port_of[w.to] = pt;
  }
  using K = Endpoint::Kind;
  auto ports = [&](K kind, std::size_t id, std::size_t count) {
    std::vector<Port> v;
    for (std::size_t k = 0; k < count; ++k) v.push_back(port_of.at({kind, id, k}));
    return v;
  };
  for (const auto& n : d.nodes)
    attach(net, node_relation(d, n), ports(K::node_in, n.id, n.arity_in), ports(K::node_out, n.id, n.arity_out));
  return project(net, ports(K::boundary_in, 0, d.in_types.size()), ports(K::boundary_out, 0, d.out_types.size()));
}

AffineRelation evaluate_affine(const Diagram& d) { return evaluate(d).rel(); }

namespace {

std::pair<AffineRelation, AffineRelation> comparable(const Diagram& a, const Diagram& b) {
  if (!(a.p == b.p)) throw std::invalid_argument("diagrams over different primes");
  GradedRelation ra = evaluate(a), rb = evaluate(b);
  if (a.layer == b.layer) {
    if (ra.dom_types() != rb.dom_types() || ra.cod_types() != rb.cod_types())
      throw std::invalid_argument("boundary mismatch");
  } else {
    const GradedRelation& dbl = a.layer == Layer::doubled ? ra : rb;
    if (!dbl.all_quantum()) throw std::invalid_argument("only all-quantum diagrams compare with the affine layer");
    if (ra.rel().dom() != rb.rel().dom() || ra.rel().cod() != rb.rel().cod())
      throw std::invalid_argument("boundary mismatch");
  }
  return {ra.rel(), rb.rel()};
}

}  // namespace

bool diagrams_equal(const Diagram& a, const Diagram& b) {
  auto [x, y] = comparable(a, b);
  return x == y;
}

bool diagrams_subset(const Diagram& a, const Diagram& b) {
  auto [x, y] = comparable(a, b);
  return subset(x, y);
}

Diagram empty_diagram(Prime p, Layer layer) {
  Diagram d;
  d.p = p;
  d.layer = layer;
  return d;
}

namespace {

void require_compatible(const Diagram& a, const Diagram& b) {
  if (!(a.p == b.p)) throw std::invalid_argument("diagrams over different primes");
  if (a.layer != b.layer) throw std::invalid_argument("diagrams on different layers");
}

Endpoint shifted(Endpoint e, std::size_t node_off, std::size_t in_off, std::size_t out_off) {
  switch (e.kind) {
    case Endpoint::Kind::node_in:
    case Endpoint::Kind::node_out: e.node += node_off; break;
    case Endpoint::Kind::boundary_in: e.port += in_off; break;
    case Endpoint::Kind::boundary_out: e.port += out_off; break;
  }
  return e;
}

}  // namespace

Diagram compose_diagrams(const Diagram& d1, const Diagram& d2) {
  require_compatible(d1, d2);
  if (d1.out_types != d2.in_types) throw std::invalid_argument("compose: boundary mismatch");
  Diagram d = empty_diagram(d1.p, d1.layer);
  const std::size_t off = max_id(d1);
  d.nodes = d1.nodes;
  for (Node n : d2.nodes) {
    n.id += off;
    d.nodes.push_back(std::move(n));
  }
  d.in_types = d1.in_types;
  d.out_types = d2.out_types;
  std::map<std::size_t, Endpoint> left, right;
  for (const auto& w : d1.wires) {
    if (w.to.kind == Endpoint::Kind::boundary_out)
      left[w.to.port] = w.from;
    else
      d.wires.push_back(w);
  }
  for (const auto& w : d2.wires) {
    Wire s{shifted(w.from, off, 0, 0), shifted(w.to, off, 0, 0)};
    if (w.from.kind == Endpoint::Kind::boundary_in)
      right[w.from.port] = s.to;
    else
      d.wires.push_back(s);
  }
  for (std::size_t k = 0; k < d1.out_types.size(); ++k) d.wires.push_back({left.at(k), right.at(k)});
  validate(d);
  return d;
}

Diagram tensor_diagrams(const Diagram& d1, const Diagram& d2) {
  require_compatible(d1, d2);
  Diagram d = empty_diagram(d1.p, d1.layer);
  const std::size_t off = max_id(d1);
  d.nodes = d1.nodes;
  for (Node n : d2.nodes) {
    n.id += off;
    d.nodes.push_back(std::move(n));
  }
  d.in_types = concat(d1.in_types, d2.in_types);
  d.out_types = concat(d1.out_types, d2.out_types);
  d.wires = d1.wires;
  for (const auto& w : d2.wires)
    d.wires.push_back({shifted(w.from, off, d1.in_types.size(), d1.out_types.size()),
                       shifted(w.to, off, d1.in_types.size(), d1.out_types.size())});
  validate(d);
  return d;
}

Diagram normalize(const Diagram& d) {
  using K = Endpoint::Kind;
  std::map<Endpoint, Endpoint> other;
  for (const auto& w : d.wires) {
    other[w.from] = w.to;
    other[w.to] = w.from;
  }
  std::map<std::size_t, std::size_t> rename;
  std::queue<std::size_t> q;
  auto visit = [&](const Endpoint& e) {
    if ((e.kind == K::node_in || e.kind == K::node_out) && !rename.count(e.node)) {
      rename[e.node] = rename.size() + 1;
      q.push(e.node);
    }
  };
  auto drain = [&] {
    while (!q.empty()) {
      const Node& n = d.node(q.front());
      q.pop();
      for (std::size_t k = 0; k < n.arity_in; ++k) visit(other.at({K::node_in, n.id, k}));
      for (std::size_t k = 0; k < n.arity_out; ++k) visit(other.at({K::node_out, n.id, k}));
    }
  };
  for (std::size_t k = 0; k < d.in_types.size(); ++k) visit(other.at({K::boundary_in, 0, k}));
  drain();
  for (std::size_t k = 0; k < d.out_types.size(); ++k) visit(other.at({K::boundary_out, 0, k}));
  drain();
  std::vector<std::size_t> ids;
  for (const auto& n : d.nodes) ids.push_back(n.id);
  std::sort(ids.begin(), ids.end());
  for (auto id : ids) {
    visit({K::node_in, id, 0});
    drain();
  }

  Diagram out = empty_diagram(d.p, d.layer);
  out.in_types = d.in_types;
  out.out_types = d.out_types;
  for (Node n : d.nodes) {
    n.id = rename.at(n.id);
    out.nodes.push_back(std::move(n));
  }
  std::sort(out.nodes.begin(), out.nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
  auto re = [&](Endpoint e) {
    if (e.kind == K::node_in || e.kind == K::node_out) e.node = rename.at(e.node);
    return e;
  };
  for (const auto& w : d.wires) out.wires.push_back({re(w.from), re(w.to)});
  std::sort(out.wires.begin(), out.wires.end());
  return out;
}

bool structurally_equal(const Diagram& a, const Diagram& b) {
  Diagram x = normalize(a), y = normalize(b);
  if (!(x.p == y.p) || x.layer != y.layer || x.in_types != y.in_types || x.out_types != y.out_types) return false;
  if (x.nodes.size() != y.nodes.size() || x.wires != y.wires) return false;
  for (std::size_t i = 0; i < x.nodes.size(); ++i) {
    const Node &m = x.nodes[i], &n = y.nodes[i];
    if (m.kind != n.kind || m.phase.affine != n.phase.affine || m.phase.linear != n.phase.linear ||
        m.arity_in != n.arity_in || m.arity_out != n.arity_out)
      return false;
    if (m.box && !structurally_equal(*m.box, *n.box)) return false;
  }
  return true;
}

std::string to_text(const Diagram& d) {
  std::ostringstream os;
  os << "p=" << d.p.value() << "; layer=" << to_string(d.layer) << "\n";
  if (d.layer == Layer::doubled) {
    for (std::size_t k = 0; k < d.in_types.size(); ++k) os << "wiretype in" << k << " " << to_string(d.in_types[k]) << "\n";
    for (std::size_t k = 0; k < d.out_types.size(); ++k)
      os << "wiretype out" << k << " " << to_string(d.out_types[k]) << "\n";
  }
  for (const auto& n : d.nodes) {
    os << "node " << n.id << " " << n.kind;
    const KindInfo* info = find_kind(d.layer, n.kind);
    if (info && info->phase != PhaseUse::none) {
      os << " phase=" << n.phase.affine;
      if (n.phase.linear) os << "," << n.phase.linear;
    }
    if (n.box)
      os << " file=" << n.file;
    else if (info && info->variable_arity)
      os << " arity_in=" << n.arity_in << " arity_out=" << n.arity_out;
    os << "\n";
  }
  for (const auto& w : d.wires) os << "wire " << to_string(w.from) << " " << to_string(w.to) << "\n";
  return os.str();
}

}  // namespace stabrel
